#pragma once

// Command-line front end. Exit codes: 0 success, 1 I/O failure, 2 invalid
// input, 3 evaluation failure on otherwise valid input.

#include <cerrno>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "woe/assessment.hpp"
#include "woe/error.hpp"
#include "woe/evidence.hpp"
#include "woe/power.hpp"
#include "woe/report.hpp"
#include "woe/schema.hpp"
#include "woe/sensitivity.hpp"
#include "woe/server.hpp"
#include "woe/version.hpp"

namespace woe::cli {

using schema::json;

enum ExitCode : int { kOk = 0, kIoError = 1, kValidationError = 2, kEvaluationError = 3 };

enum class OutputFormat { Text, Markdown, Json };

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read '" + path + "': " + std::strerror(errno));
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw IoError("cannot read '" + path + "': read failed");
    return ss.str();
}

inline schema::AssessmentDocument load_document(const std::string& path) {
    return schema::parse_document_text(read_file(path));
}

inline std::string g6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

inline std::string fixed(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

/// "0.8,0.05" -> characteristics
inline OperatingCharacteristics parse_pair(const std::string& s, const std::string& flag) {
    const auto comma = s.find(',');
    try {
        if (comma == std::string::npos) throw std::invalid_argument(s);
        std::size_t used = 0;
        const std::string a = s.substr(0, comma), b = s.substr(comma + 1);
        const double power = std::stod(a, &used);
        if (used != a.size()) throw std::invalid_argument(s);
        const double fpr = std::stod(b, &used);
        if (used != b.size()) throw std::invalid_argument(s);
        return {Probability(power), Probability(fpr)};
    } catch (const Error&) {
        throw Error(ErrorCode::OutOfRange, flag + " values must be probabilities, got '" + s + "'", flag);
    } catch (const std::exception&) {
        throw Error(ErrorCode::Validation, flag + " expects POWER,FPR, got '" + s + "'", flag);
    }
}

template <class E>
E parse_choice(const std::string& s, const std::string& flag) {
    for (const auto& [v, name] : EnumNames<E>::names) {
        std::string lower(name);
        for (auto& c : lower) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        if (s == name || s == lower) return v;
    }
    throw Error(ErrorCode::Validation, flag + " must be one of: " + enum_choices<E>(), flag);
}

inline void print_json(std::ostream& out, const json& j) { out << j.dump(2) << "\n"; }

}  // namespace detail

struct Options {
    OutputFormat output = OutputFormat::Text;

    std::string path;

    // convert
    double value = 0.0;
    std::string from, to;

    // power
    std::optional<std::int64_t> n1, n2, total_n, total_cases, case_difference;
    std::optional<double> p1, p2;
    double alpha = 0.05;
    std::string sides = "two";
    bool simulate = false;
    std::int64_t iterations = 100000;
    std::uint64_t seed = 1;
    unsigned workers = 1;

    // sweep
    std::string target;
    std::vector<double> grid;
    std::optional<double> range_from, range_to;
    int steps = 0;

    // design
    std::string base;
    std::vector<std::string> variants;
    std::string direction = "positive";
    std::optional<double> target_woe;

    // combine
    std::vector<std::string> inputs;
    double prior = 0.5;

    // serve
    int port = 8080;
    std::string bind = "127.0.0.1";
};

inline int cmd_evaluate(const Options& o, std::ostream& out) {
    const auto doc = detail::load_document(o.path);
    const WoeReport report = evaluate(doc.assessment);
    switch (o.output) {
        case OutputFormat::Json: detail::print_json(out, schema::to_json(report)); break;
        case OutputFormat::Markdown: out << render_report(report, doc.assessment, ReportFormat::Markdown); break;
        case OutputFormat::Text: out << render_report(report, doc.assessment, ReportFormat::PlainText); break;
    }
    return kOk;
}

inline int cmd_convert(const Options& o, std::ostream& out) {
    const schema::ConvertRequest req{o.value, detail::parse_choice<Unit>(o.from, "--from"),
                                     detail::parse_choice<Unit>(o.to, "--to")};
    const double result = convert(req.value, req.from, req.to);
    if (o.output == OutputFormat::Json) {
        detail::print_json(out, schema::convert_response(req, result));
    } else {
        out << detail::g6(result) << "\n";
    }
    return kOk;
}

inline int cmd_power(const Options& o, std::ostream& out) {
    TwoGroupBinaryDesign d;
    std::optional<CaseSplitRates> split;
    if (o.total_n || o.total_cases || o.case_difference) {
        if (!(o.total_n && o.total_cases && o.case_difference)) {
            throw Error(ErrorCode::InvalidDesign, "--total-n, --cases and --case-difference go together", "total_n");
        }
        if (o.p1 || o.p2 || o.n1 || o.n2) {
            throw Error(ErrorCode::InvalidDesign, "give either a case split or --n1/--n2/--p1/--p2, not both", "p1");
        }
        split = rates_from_case_split(*o.total_n, *o.total_cases, *o.case_difference);
        d.n1 = d.n2 = split->group_size;
        d.p1 = split->p1;
        d.p2 = split->p2;
    } else {
        if (!(o.n1 && o.n2 && o.p1 && o.p2)) {
            throw Error(ErrorCode::InvalidDesign, "--n1, --n2, --p1 and --p2 are required", "n1");
        }
        d.n1 = *o.n1;
        d.n2 = *o.n2;
        d.p1 = *o.p1;
        d.p2 = *o.p2;
    }
    d.alpha = o.alpha;
    d.sides = o.sides == "one" ? Sides::OneSided : Sides::TwoSided;

    const PowerEstimate est =
        o.simulate ? simulate_two_group_power(d, o.iterations, o.seed, o.workers) : two_proportion_power(d);

    if (o.output == OutputFormat::Json) {
        json j = schema::to_json(est);
        j["design"] = json{{"n1", d.n1}, {"n2", d.n2}, {"p1", d.p1}, {"p2", d.p2},
                           {"alpha", d.alpha}, {"sides", enum_name(d.sides)}};
        if (split) j["implied_odds_ratio"] = implied_odds_ratio(split->p1, split->p2);
        detail::print_json(out, j);
        return kOk;
    }
    if (split) {
        out << "design: n1 = n2 = " << d.n1 << ", p1 = " << detail::g6(d.p1) << ", p2 = " << detail::g6(d.p2)
            << ", implied odds ratio " << detail::fixed(implied_odds_ratio(d.p1, d.p2), 4) << "\n";
    }
    out << "power = " << detail::fixed(est.power.value(), 4);
    if (est.method == PowerMethod::MonteCarlo) {
        out << " (MonteCarlo, " << est.iterations << " iterations, seed " << est.seed << ", standard error "
            << detail::fixed(est.mc_standard_error, 4) << ")";
    } else {
        out << " (NormalApproximation)";
    }
    out << ", " << enum_name(d.sides) << ", alpha " << detail::g6(d.alpha) << "\n";
    if (est.null_design) out << "warning: null design (p1 = p2); power equals alpha\n";
    return kOk;
}

inline int cmd_sweep(const Options& o, std::ostream& out) {
    SweepSpec spec;
    spec.base = detail::load_document(o.path).assessment;
    spec.target = detail::parse_choice<SweepTarget>(o.target, "--target");
    if (!o.grid.empty()) {
        if (o.range_from || o.range_to || o.steps) {
            throw Error(ErrorCode::Validation, "give either --grid or --from/--to/--steps", "grid");
        }
        spec.grid = o.grid;
    } else {
        if (!(o.range_from && o.range_to) || o.steps < 1) {
            throw Error(ErrorCode::Validation, "--grid or --from/--to/--steps is required", "grid");
        }
        for (int i = 0; i < o.steps; ++i) {
            const double t = o.steps == 1 ? 0.0 : static_cast<double>(i) / (o.steps - 1);
            spec.grid.push_back(*o.range_from + t * (*o.range_to - *o.range_from));
        }
    }
    const SweepResult r = sweep(spec);
    if (o.output == OutputFormat::Json) {
        detail::print_json(out, schema::to_json(r));
        return kOk;
    }
    const bool md = o.output == OutputFormat::Markdown;
    const std::string name{enum_name(r.target)};
    out << (md ? "| " + name + " | WoE total (dB) | P(H1) |\n|---|---|---|\n"
               : name + "\tWoE total (dB)\tP(H1)\n");
    for (const auto& p : r.points) {
        const std::string woe = p.failure ? "error: " + p.failure->message : woe::detail::fmt_db(p.woe_total);
        const std::string post = p.failure ? "" : woe::detail::fmt_prob(p.posterior_p_h1);
        if (md) out << "| " << detail::g6(p.value) << " | " << woe << " | " << post << " |\n";
        else out << detail::g6(p.value) << "\t" << woe << "\t" << post << "\n";
    }
    return kOk;
}

inline int cmd_design(const Options& o, std::ostream& out) {
    const OperatingCharacteristics base = detail::parse_pair(o.base, "--base");
    std::vector<OperatingCharacteristics> variants;
    for (const auto& v : o.variants) variants.push_back(detail::parse_pair(v, "--variant"));
    const ResultDirection direction = detail::parse_choice<ResultDirection>(o.direction, "--direction");
    const auto rows = design_compare(base, variants, direction);
    std::optional<Probability> needed;
    if (o.target_woe) needed = required_power(base.fpr, DecibelWeight(*o.target_woe));

    if (o.output == OutputFormat::Json) {
        json j = schema::to_json(rows);
        if (needed) j["required_power"] = json{{"fpr", base.fpr.value()}, {"target_woe", *o.target_woe},
                                               {"power", needed->value()}};
        detail::print_json(out, j);
        return kOk;
    }
    const bool md = o.output == OutputFormat::Markdown;
    out << (md ? "| | power | fpr | LR | WoE (dB) | vs base (dB) |\n|---|---|---|---|---|---|\n"
               : "\tpower\tfpr\tLR\tWoE (dB)\tvs base (dB)\n");
    for (const auto& r : rows) {
        const std::string cells[] = {r.is_base ? "base" : "variant", detail::g6(r.characteristics.power.value()),
                                     detail::g6(r.characteristics.fpr.value()), detail::g6(r.lr.value()),
                                     woe::detail::fmt_db(r.woe.value()),
                                     r.is_base ? "" : woe::detail::fmt_db(r.delta_vs_base)};
        for (std::size_t i = 0; i < std::size(cells); ++i) {
            out << (md ? "| " : (i ? "\t" : "")) << cells[i] << (md ? " " : "");
        }
        out << (md ? "|\n" : "\n");
    }
    if (needed) {
        out << "required power for " << woe::detail::fmt_db(*o.target_woe) << " dB at fpr "
            << detail::g6(base.fpr.value()) << ": " << detail::fixed(needed->value(), 4) << "\n";
    }
    return kOk;
}

inline int cmd_impacts(const Options& o, std::ostream& out) {
    const StudyAssessment a = detail::load_document(o.path).assessment;
    const auto impacts = adjustment_impacts(a);
    const double full = evaluate(a).woe_total.value();
    if (o.output == OutputFormat::Json) {
        detail::print_json(out, schema::impacts_response(a, full, impacts));
        return kOk;
    }
    out << "full WoE total: " << woe::detail::fmt_db(full) << " dB\n";
    if (impacts.empty()) {
        out << "no adjustments applied\n";
        return kOk;
    }
    const bool md = o.output == OutputFormat::Markdown;
    out << (md ? "| # | category | adjustment | WoE without (dB) | delta (dB) |\n|---|---|---|---|---|\n"
               : "#\tcategory\tadjustment\tWoE without (dB)\tdelta (dB)\n");
    for (const auto& i : impacts) {
        const Adjustment& adj = a.adjustments[i.index];
        const std::string sep = md ? " | " : "\t";
        out << (md ? "| " : "") << i.index + 1 << sep << enum_name(adj.category) << sep
            << woe::detail::describe_adjustment(adj) << sep << woe::detail::fmt_db(i.woe_without) << sep
            << woe::detail::fmt_db(i.delta_woe) << (md ? " |" : "") << "\n";
    }
    return kOk;
}

/// Each input is a number (dB), a report from `evaluate --output json`, or an
/// assessment document. Reports and documents contribute their evidence
/// weight only; the prior enters once, from --prior.
inline int cmd_combine(const Options& o, std::ostream& out) {
    std::vector<DecibelWeight> weights;
    for (const auto& in : o.inputs) {
        std::size_t used = 0;
        double v = 0.0;
        bool numeric = false;
        try {
            v = std::stod(in, &used);
            numeric = used == in.size();
        } catch (const std::exception&) {
        }
        if (numeric) {
            weights.push_back(schema::detail::at_field(in, [&] { return DecibelWeight(v); }));
            continue;
        }
        const json j = schema::parse_json(detail::read_file(in));
        if (j.is_object() && j.contains("schema_version")) {
            weights.push_back(evaluate(schema::parse_document(j).assessment).woe_evidence);
        } else {
            weights.push_back(schema::parse_report_evidence(j));
        }
    }
    const DecibelWeight prior =
        schema::detail::at_field("--prior", [&] { return prior_weight(Probability(o.prior)); });
    const DecibelWeight total = combine_woe(weights, prior);
    const double posterior = woe_to_probability(total).value();

    if (o.output == OutputFormat::Json) {
        json w = json::array();
        for (const auto& x : weights) w.push_back(x.value());
        detail::print_json(out, json{{"weights", w},
                                     {"prior_p_h1", o.prior},
                                     {"woe_prior", prior.value()},
                                     {"woe_total", total.value()},
                                     {"posterior_p_h1", posterior}});
        return kOk;
    }
    out << "evidence:";
    for (std::size_t i = 0; i < weights.size(); ++i) {
        out << (i ? ", " : " ") << woe::detail::fmt_db(weights[i].value()) << " dB";
    }
    out << "\nprior weight: " << woe::detail::fmt_db(prior.value()) << " dB (P(H1) = " << detail::g6(o.prior)
        << ")\n";
    out << "total WoE = " << woe::detail::fmt_db(total.value()) << " dB\n";
    out << "posterior P(H1) = " << woe::detail::fmt_prob(posterior)
        << ", P(H0) = " << woe::detail::fmt_prob(1.0 - posterior) << "\n";
    return kOk;
}

inline int cmd_serve(const Options& o, std::ostream& out, std::ostream& err) {
    out << "serving /v1 on http://" << o.bind << ":" << o.port << std::endl;
    if (!service::serve(o.bind, o.port)) {
        err << "error: cannot listen on " << o.bind << ":" << o.port << "\n";
        return kIoError;
    }
    return kOk;
}

/// Entry point shared by the `woe` binary and the tests.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Weight-of-evidence toolkit: decibel-scale support for H1 over H0 from a study's "
                 "operating characteristics",
                 "woe"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    Options o;
    std::string output = "text";
    app.add_option("--output,-o", output, "Output format")
        ->check(CLI::IsMember({"text", "markdown", "json"}))
        ->capture_default_str();
    app.fallthrough();

    auto* evaluate_cmd = app.add_subcommand("evaluate", "Evaluate an assessment document");
    evaluate_cmd->add_option("path", o.path, "Assessment document (JSON)")->required();

    auto* convert_cmd = app.add_subcommand("convert", "Convert between woe (dB), odds and probability");
    convert_cmd->add_option("value", o.value)->required();
    convert_cmd->add_option("--from", o.from, "woe | odds | probability")->required();
    convert_cmd->add_option("--to", o.to, "woe | odds | probability")->required();

    auto* power_cmd = app.add_subcommand("power", "Power of a two-group binary-outcome design");
    power_cmd->add_option("--n1", o.n1);
    power_cmd->add_option("--n2", o.n2);
    power_cmd->add_option("--p1", o.p1, "Event rate in group 1 under the alternative");
    power_cmd->add_option("--p2", o.p2, "Event rate in group 2 under the alternative");
    power_cmd->add_option("--total-n", o.total_n, "Cohort size, split evenly into two groups");
    power_cmd->add_option("--cases", o.total_cases, "Total cases across both groups");
    power_cmd->add_option("--case-difference", o.case_difference, "Excess cases in group 1");
    power_cmd->add_option("--alpha", o.alpha)->capture_default_str();
    power_cmd->add_option("--sides", o.sides)->check(CLI::IsMember({"one", "two"}))->capture_default_str();
    power_cmd->add_flag("--simulate", o.simulate, "Monte Carlo instead of the normal approximation");
    power_cmd->add_option("--iterations", o.iterations)->capture_default_str();
    power_cmd->add_option("--seed", o.seed)->capture_default_str();
    power_cmd->add_option("--workers", o.workers, "Threads; never changes the estimate")
        ->check(CLI::Range(1u, 256u))
        ->capture_default_str();

    auto* sweep_cmd = app.add_subcommand("sweep", "Re-evaluate an assessment over a grid of one quantity");
    sweep_cmd->add_option("path", o.path, "Assessment document (JSON)")->required();
    sweep_cmd->add_option("--target", o.target, "power | fpr | prior")->required();
    sweep_cmd->add_option("--grid", o.grid, "Strictly increasing values")->delimiter(',');
    sweep_cmd->add_option("--from", o.range_from);
    sweep_cmd->add_option("--to", o.range_to);
    sweep_cmd->add_option("--steps", o.steps);

    auto* design_cmd = app.add_subcommand("design", "Compare study designs by the weight they can provide");
    design_cmd->add_option("--base", o.base, "POWER,FPR")->required();
    design_cmd->add_option("--variant", o.variants, "POWER,FPR (repeatable)");
    design_cmd->add_option("--direction", o.direction, "positive | negative")->capture_default_str();
    design_cmd->add_option("--target-woe", o.target_woe, "Also solve for the power needed at the base fpr");

    auto* impacts_cmd = app.add_subcommand("impacts", "Leave-one-out impact of each ledger adjustment");
    impacts_cmd->add_option("path", o.path, "Assessment document (JSON)")->required();

    auto* combine_cmd = app.add_subcommand("combine", "Add independent weights of evidence and a prior");
    combine_cmd->add_option("inputs", o.inputs, "dB values, report JSON files or assessment documents")
        ->required();
    combine_cmd->add_option("--prior", o.prior, "Prior P(H1)")->capture_default_str();

    auto* serve_cmd = app.add_subcommand("serve", "Serve the JSON API under /v1");
    serve_cmd->add_option("--port", o.port)->check(CLI::Range(1, 65535))->capture_default_str();
    serve_cmd->add_option("--bind", o.bind)->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::CallForVersion&) {
        out << kVersion << "\n";
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kValidationError;
    }
    o.output = output == "json" ? OutputFormat::Json : output == "markdown" ? OutputFormat::Markdown : OutputFormat::Text;

    try {
        if (evaluate_cmd->parsed()) return cmd_evaluate(o, out);
        if (convert_cmd->parsed()) return cmd_convert(o, out);
        if (power_cmd->parsed()) return cmd_power(o, out);
        if (sweep_cmd->parsed()) return cmd_sweep(o, out);
        if (design_cmd->parsed()) return cmd_design(o, out);
        if (impacts_cmd->parsed()) return cmd_impacts(o, out);
        if (combine_cmd->parsed()) return cmd_combine(o, out);
        if (serve_cmd->parsed()) return cmd_serve(o, out, err);
    } catch (const IoError& e) {
        err << "error: " << e.what() << "\n";
        return kIoError;
    } catch (const Error& e) {
        err << "error: " << e.what();
        if (!e.field().empty() && std::string(e.what()).find(e.field()) == std::string::npos) {
            err << " (field: " << e.field() << ")";
        }
        err << "\n";
        return is_validation(e.code()) ? kValidationError : kEvaluationError;
    }
    return kValidationError;
}

}  // namespace woe::cli
