#pragma once

#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>

#include "woe/assessment.hpp"

namespace woe {

enum class ReportFormat { PlainText, Markdown };

namespace detail {

inline constexpr const char* kMinus = "−";

inline std::string with_minus(std::string s) {
    if (!s.empty() && s.front() == '-') s.replace(0, 1, kMinus);
    return s;
}

inline std::string printf_str(const char* format, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, format, v);
    return buf;
}

/// Fixed two decimals; a value that rounds to zero never shows a sign.
inline std::string fmt_db(double v) {
    std::string s = printf_str("%.2f", v);
    if (s == "-0.00") s = "0.00";
    return with_minus(std::move(s));
}

inline std::string fmt_num(double v) { return with_minus(printf_str("%.6g", v)); }

inline std::string fmt_prob(double v) { return printf_str("%.3f", v); }

inline std::string fmt_odds(double odds) {
    if (odds >= 1.0) return printf_str("%.2f", odds) + ":1";
    return "1:" + printf_str("%.2f", 1.0 / odds);
}

inline std::string md_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        if (c == '|') out += "\\|";
        else if (c == '\n') out += ' ';
        else out += c;
    }
    return out;
}

inline const char* target_label(AdjustmentTarget t) {
    return t == AdjustmentTarget::Power ? "power" : "false-positive rate";
}

inline std::string describe_adjustment(const Adjustment& adj) {
    std::string s{enum_name(adj.mode)};
    s += " ";
    s += enum_name(adj.target);
    s += " ";
    s += adj.mode == AdjustmentMode::AddDelta && adj.value >= 0 ? "+" + fmt_num(adj.value) : fmt_num(adj.value);
    return s;
}

inline std::string describe_oc(const OperatingCharacteristics& oc) {
    return "power " + fmt_num(oc.power.value()) + ", false-positive rate " + fmt_num(oc.fpr.value());
}

struct FormulaLines {
    std::string lr;
    std::string woe;
};

inline FormulaLines formula_lines(const WoeReport& r) {
    const double power = r.effective.power.value();
    const double fpr = r.effective.fpr.value();
    FormulaLines f;
    std::string ratio;
    if (r.result_direction == ResultDirection::Positive) {
        ratio = fmt_num(power) + "/" + fmt_num(fpr);
        f.lr = "LR = power / false-positive rate = " + ratio + " = " + fmt_num(r.lr_for_h1.value());
    } else {
        ratio = fmt_num(1.0 - power) + "/" + fmt_num(1.0 - fpr);
        f.lr = "LR = (1 " + std::string(kMinus) + " power) / (1 " + kMinus + " false-positive rate) = (1 " +
               kMinus + " " + fmt_num(power) + ")/(1 " + kMinus + " " + fmt_num(fpr) + ") = " + ratio + " = " +
               fmt_num(r.lr_for_h1.value());
    }
    f.woe = "WoE = 10·log10(" + ratio + ") = " + fmt_db(r.woe_evidence.value()) + " dB";
    return f;
}

inline std::string evidence_summary(const WoeReport& r) {
    std::string s = r.result_direction == ResultDirection::Positive ? "positive-result study; "
                                                                    : "negative-result study; ";
    const double w = r.woe_evidence.value();
    if (fmt_db(w) == "0.00") return s + "evidence favors neither hypothesis (0.00 dB)";
    s += w > 0 ? "evidence favors H1 by " : "evidence favors H0 by ";
    return s + fmt_db(std::abs(w)) + " dB";
}

inline std::string total_summary(const WoeReport& r) {
    const double p = r.posterior_p_h1.value();
    return fmt_db(r.woe_total.value()) + " dB, odds H1:H0 " + fmt_odds(std::pow(10.0, r.woe_total.value() / 10.0)) +
           ", P(H1) = " + fmt_prob(p) + ", P(H0) = " + fmt_prob(1.0 - p);
}

inline std::string prior_line(const StudyAssessment& a, const WoeReport& r) {
    const double p = a.prior_p_h1.value();
    return "Prior weight = 10·log10(" + fmt_num(p) + "/" + fmt_num(1.0 - p) + ") = " +
           fmt_db(r.woe_prior.value()) + " dB";
}

inline void render_text(std::ostream& os, const WoeReport& r, const StudyAssessment& a) {
    os << "Weight of evidence: " << (a.title.empty() ? a.id : a.title) << " [" << a.id << "]\n";
    if (!a.description.empty()) os << a.description << "\n";
    os << "\n";
    os << "Result direction: " << enum_name(a.result_direction) << "\n";
    os << "Baseline: " << describe_oc(a.baseline) << " (" << enum_name(a.baseline_provenance);
    if (!a.baseline_note.empty()) os << ": " << a.baseline_note;
    os << ")\n";
    os << "Prior: P(H1) = " << fmt_num(a.prior_p_h1.value()) << "\n\n";

    os << "Adjustment ledger:\n";
    if (r.audit_trail.empty()) os << "  no adjustments applied\n";
    for (const auto& step : r.audit_trail) {
        os << "  " << step.index + 1 << ". " << describe_adjustment(step.adjustment) << " ["
           << enum_name(step.adjustment.category) << "]" << (step.clamped ? " (clamped)" : "") << "\n";
        os << "     " << describe_oc(step.before) << "  ->  " << describe_oc(step.after) << "\n";
        os << "     rationale: " << step.adjustment.rationale << "\n";
    }
    os << "\n";

    const auto f = formula_lines(r);
    os << "Effective: " << describe_oc(r.effective) << "\n";
    os << f.lr << "\n";
    os << f.woe << "\n";
    os << prior_line(a, r) << "\n";
    os << "Total: " << total_summary(r) << "\n";
    os << "Interpretation: " << evidence_summary(r) << "\n";

    os << "\nWarnings:";
    if (r.warnings.empty()) os << " none";
    os << "\n";
    for (const auto& w : r.warnings) os << "  - [" << w.code << "] " << w.message << "\n";
}

inline void render_markdown(std::ostream& os, const WoeReport& r, const StudyAssessment& a) {
    os << "# Weight of evidence: " << md_escape(a.title.empty() ? a.id : a.title) << "\n\n";
    if (!a.description.empty()) os << md_escape(a.description) << "\n\n";
    os << "| Input | Value |\n|---|---|\n";
    os << "| id | `" << md_escape(a.id) << "` |\n";
    os << "| result direction | " << enum_name(a.result_direction) << " |\n";
    os << "| baseline | " << describe_oc(a.baseline) << " |\n";
    os << "| baseline provenance | " << enum_name(a.baseline_provenance)
       << (a.baseline_note.empty() ? "" : ": " + md_escape(a.baseline_note)) << " |\n";
    os << "| prior P(H1) | " << fmt_num(a.prior_p_h1.value()) << " |\n\n";

    os << "## Adjustment ledger\n\n";
    if (r.audit_trail.empty()) {
        os << "_no adjustments applied_\n\n";
    } else {
        os << "| # | Category | Adjustment | Before | After | Rationale |\n|---|---|---|---|---|---|\n";
        for (const auto& step : r.audit_trail) {
            os << "| " << step.index + 1 << " | " << enum_name(step.adjustment.category) << " | "
               << describe_adjustment(step.adjustment) << (step.clamped ? " (clamped)" : "") << " | "
               << describe_oc(step.before) << " | " << describe_oc(step.after) << " | "
               << md_escape(step.adjustment.rationale) << " |\n";
        }
        os << "\n";
    }

    const auto f = formula_lines(r);
    os << "## Evaluation\n\n";
    os << "- Effective: " << describe_oc(r.effective) << "\n";
    os << "- " << f.lr << "\n";
    os << "- " << f.woe << "\n";
    os << "- " << prior_line(a, r) << "\n";
    os << "- **Total: " << total_summary(r) << "**\n";
    os << "- Interpretation: " << evidence_summary(r) << "\n\n";

    os << "## Warnings\n\n";
    if (r.warnings.empty()) os << "none\n";
    for (const auto& w : r.warnings) os << "- **" << w.code << "**: " << md_escape(w.message) << "\n";
}

}  // namespace detail

/// Deterministic human-readable rendering of an evaluation.
inline std::string render_report(const WoeReport& r, const StudyAssessment& a, ReportFormat format) {
    std::ostringstream os;
    if (format == ReportFormat::Markdown) {
        detail::render_markdown(os, r, a);
    } else {
        detail::render_text(os, r, a);
    }
    return os.str();
}

}  // namespace woe
