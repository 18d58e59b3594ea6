#pragma once

// What-if analyses over assessments: sweeps of one quantity, the inverse
// problem for required power, design comparisons and per-adjustment impact.

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "woe/assessment.hpp"
#include "woe/enum_names.hpp"
#include "woe/error.hpp"
#include "woe/evidence.hpp"

namespace woe {

enum class SweepTarget { Power, Fpr, Prior };

template <>
struct EnumNames<SweepTarget> {
    static constexpr std::array<std::pair<SweepTarget, std::string_view>, 3> names{{
        {SweepTarget::Power, "Power"},
        {SweepTarget::Fpr, "Fpr"},
        {SweepTarget::Prior, "Prior"},
    }};
};

struct SweepSpec {
    SweepTarget target = SweepTarget::Power;
    std::vector<double> grid;  // strictly increasing probabilities
    StudyAssessment base;
};

struct SweepFailure {
    ErrorCode code;
    std::string message;

    friend bool operator==(const SweepFailure&, const SweepFailure&) = default;
};

struct SweepPoint {
    double value = 0.0;
    double woe_total = 0.0;       // meaningful only when !failure
    double posterior_p_h1 = 0.0;  // meaningful only when !failure
    std::optional<SweepFailure> failure;

    friend bool operator==(const SweepPoint&, const SweepPoint&) = default;
};

struct SweepResult {
    SweepTarget target = SweepTarget::Power;
    std::vector<SweepPoint> points;

    friend bool operator==(const SweepResult&, const SweepResult&) = default;
};

inline void validate(const SweepSpec& s) {
    if (s.grid.empty()) throw Error(ErrorCode::Validation, "sweep grid must not be empty", "grid");
    for (std::size_t i = 0; i < s.grid.size(); ++i) {
        const std::string field = "grid[" + std::to_string(i) + "]";
        const double v = s.grid[i];
        if (!(v >= 0.0 && v <= 1.0)) {
            throw Error(ErrorCode::OutOfRange, "grid value " + detail::fmt_value(v) + " is not a probability", field);
        }
        if (i > 0 && !(v > s.grid[i - 1])) {
            throw Error(ErrorCode::Validation, "sweep grid must be strictly increasing", field);
        }
    }
    validate(s.base);
}

/// Evaluates the base assessment once per grid value, overriding the targeted
/// quantity after the ledger has been applied. Points that cannot be
/// evaluated are recorded as failures; the rest of the sweep still runs.
inline SweepResult sweep(const SweepSpec& s) {
    validate(s);
    const EffectiveCharacteristics eff = effective_characteristics(s.base);

    SweepResult out;
    out.target = s.target;
    out.points.reserve(s.grid.size());
    for (double v : s.grid) {
        SweepPoint pt;
        pt.value = v;
        try {
            WoeReport r;
            if (s.target == SweepTarget::Prior) {
                StudyAssessment a = s.base;
                a.prior_p_h1 = Probability(v);
                r = evaluate_effective(a, eff);
            } else {
                EffectiveCharacteristics e = eff;
                (s.target == SweepTarget::Power ? e.characteristics.power : e.characteristics.fpr) = Probability(v);
                r = evaluate_effective(s.base, std::move(e));
            }
            pt.woe_total = r.woe_total.value();
            pt.posterior_p_h1 = r.posterior_p_h1.value();
        } catch (const Error& e) {
            pt.failure = SweepFailure{e.code(), e.what()};
        }
        out.points.push_back(std::move(pt));
    }
    return out;
}

/// Smallest power giving a positive-result weight of `target_woe` at this
/// false-positive rate. Throws Unreachable when no power suffices.
inline Probability required_power(Probability fpr, DecibelWeight target_woe) {
    if (!(fpr.value() > 0.0)) {
        throw Error(ErrorCode::ZeroDenominator, "false-positive rate must be positive", "fpr");
    }
    const double power = fpr.value() * std::pow(10.0, target_woe.value() / 10.0);
    if (!(power <= 1.0)) {
        throw Error(ErrorCode::Unreachable,
                    detail::fmt_value(target_woe.value()) + " dB is unreachable at false-positive rate " +
                        detail::fmt_value(fpr.value()) + " (would need power " + detail::fmt_value(power) +
                        "); lower the false-positive rate",
                    "target_woe");
    }
    return Probability(power);
}

struct DesignRow {
    OperatingCharacteristics characteristics;
    Odds lr;
    DecibelWeight woe;
    double delta_vs_base = 0.0;
    bool is_base = false;
};

/// Base first, then variants in the given order.
inline std::vector<DesignRow> design_compare(const OperatingCharacteristics& base,
                                             const std::vector<OperatingCharacteristics>& variants,
                                             ResultDirection direction) {
    std::vector<DesignRow> rows;
    rows.reserve(variants.size() + 1);
    auto row = [&](const OperatingCharacteristics& oc, bool is_base) {
        const Odds lr = result_lr(oc, direction);
        return DesignRow{oc, lr, woe_from_odds(lr), 0.0, is_base};
    };
    rows.push_back(row(base, true));
    const double base_woe = rows.front().woe.value();
    for (const auto& v : variants) {
        rows.push_back(row(v, false));
        rows.back().delta_vs_base = rows.back().woe.value() - base_woe;
    }
    return rows;
}

struct AdjustmentImpact {
    std::size_t index = 0;
    double woe_without = 0.0;
    double delta_woe = 0.0;  // woe_without - full woe_total

    friend bool operator==(const AdjustmentImpact&, const AdjustmentImpact&) = default;
};

/// Leave-one-out attribution over the ledger.
inline std::vector<AdjustmentImpact> adjustment_impacts(const StudyAssessment& a) {
    const double full = evaluate(a).woe_total.value();
    std::vector<AdjustmentImpact> out;
    out.reserve(a.adjustments.size());
    for (std::size_t i = 0; i < a.adjustments.size(); ++i) {
        StudyAssessment without = a;
        without.adjustments.erase(without.adjustments.begin() + static_cast<std::ptrdiff_t>(i));
        const double w = evaluate(without).woe_total.value();
        out.push_back({i, w, w - full});
    }
    return out;
}

}  // namespace woe
