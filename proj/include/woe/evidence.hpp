#pragma once

// Likelihood ratios, decibel weights and probability/odds conversions.
//
// A study is treated as a diagnostic test for an effect: its power plays the
// role of sensitivity and its (effective) false-positive rate the role of
// 1 - specificity. All weights are in decibels, 10*log10 of an odds ratio,
// positive values favouring H1.

#include <cmath>
#include <compare>
#include <cstdio>
#include <span>
#include <string>
#include <string_view>

#include "woe/enum_names.hpp"
#include "woe/error.hpp"

namespace woe {

namespace detail {

inline std::string fmt_value(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace detail

/// A real in [0, 1]. Construction outside the interval throws OutOfRange.
class Probability {
public:
    constexpr Probability() = default;
    explicit Probability(double value) : value_(value) {
        if (!(value >= 0.0 && value <= 1.0)) {
            throw Error(ErrorCode::OutOfRange,
                        "probability must lie in [0, 1], got " + detail::fmt_value(value));
        }
    }

    constexpr double value() const noexcept { return value_; }
    Probability complement() const { return Probability(1.0 - value_); }
    constexpr bool is_interior() const noexcept { return value_ > 0.0 && value_ < 1.0; }

    friend constexpr auto operator<=>(const Probability&, const Probability&) = default;

private:
    double value_ = 0.0;
};

/// A strictly positive, finite ratio favouring H1 over H0.
class Odds {
public:
    constexpr Odds() = default;
    explicit Odds(double value) : value_(value) {
        if (!(value > 0.0) || !std::isfinite(value)) {
            throw Error(ErrorCode::OutOfRange,
                        "odds must be positive and finite, got " + detail::fmt_value(value));
        }
    }

    constexpr double value() const noexcept { return value_; }

    friend constexpr auto operator<=>(const Odds&, const Odds&) = default;

private:
    double value_ = 1.0;
};

/// Signed weight of evidence in decibels. Always finite.
class DecibelWeight {
public:
    constexpr DecibelWeight() = default;
    explicit DecibelWeight(double value) : value_(value) {
        if (!std::isfinite(value)) {
            throw Error(ErrorCode::InfiniteWeight,
                        "weight of evidence must be finite, got " + detail::fmt_value(value));
        }
    }

    constexpr double value() const noexcept { return value_; }

    DecibelWeight operator-() const { return DecibelWeight(-value_); }
    friend DecibelWeight operator+(DecibelWeight a, DecibelWeight b) {
        return DecibelWeight(a.value_ + b.value_);
    }
    friend constexpr auto operator<=>(const DecibelWeight&, const DecibelWeight&) = default;

private:
    double value_ = 0.0;
};

/// A study viewed as a test for an effect.
struct OperatingCharacteristics {
    Probability power;  // P(positive result | effect exists)
    Probability fpr;    // P(positive result | no effect), the effective alpha

    friend constexpr bool operator==(const OperatingCharacteristics&,
                                     const OperatingCharacteristics&) = default;
};

enum class ResultDirection { Positive, Negative };

template <>
struct EnumNames<ResultDirection> {
    static constexpr std::array<std::pair<ResultDirection, std::string_view>, 2> names{{
        {ResultDirection::Positive, "Positive"},
        {ResultDirection::Negative, "Negative"},
    }};
};

/// p_e_h1 / p_e_h0. A zero denominator is an ill-posed comparison and throws
/// ZeroDenominator; a zero numerator would be -inf dB and throws InfiniteWeight.
inline Odds likelihood_ratio(Probability p_e_h1, Probability p_e_h0) {
    if (p_e_h0.value() == 0.0) {
        throw Error(ErrorCode::ZeroDenominator,
                    "likelihood ratio undefined: P(E|H0) is zero");
    }
    if (p_e_h1.value() == 0.0) {
        throw Error(ErrorCode::InfiniteWeight,
                    "likelihood ratio is zero: P(E|H1) is zero, weight would be -infinity");
    }
    return Odds(p_e_h1.value() / p_e_h0.value());
}

/// power / fpr
inline Odds positive_result_lr(const OperatingCharacteristics& oc) {
    return likelihood_ratio(oc.power, oc.fpr);
}

/// (1 - power) / (1 - fpr), still oriented as support for H1; values below 1
/// favour H0.
inline Odds negative_result_lr(const OperatingCharacteristics& oc) {
    return likelihood_ratio(oc.power.complement(), oc.fpr.complement());
}

inline Odds result_lr(const OperatingCharacteristics& oc, ResultDirection direction) {
    return direction == ResultDirection::Positive ? positive_result_lr(oc)
                                                  : negative_result_lr(oc);
}

inline DecibelWeight woe_from_odds(Odds lr) { return DecibelWeight(10.0 * std::log10(lr.value())); }

inline Odds probability_to_odds(Probability p) {
    if (!p.is_interior()) {
        throw Error(ErrorCode::DegenerateProbability,
                    "probability " + detail::fmt_value(p.value()) +
                        " has no finite odds; it must lie strictly between 0 and 1");
    }
    return Odds(p.value() / (1.0 - p.value()));
}

/// 10*log10(p / (1 - p)). Dogmatic priors (0 or 1) make evidence irrelevant and
/// are rejected.
inline DecibelWeight prior_weight(Probability p_h1) { return woe_from_odds(probability_to_odds(p_h1)); }

inline DecibelWeight combine_woe(std::span<const DecibelWeight> evidence, DecibelWeight prior) {
    double total = prior.value();
    for (const auto& w : evidence) total += w.value();
    if (!std::isfinite(total)) {
        throw Error(ErrorCode::Overflow, "combined weight of evidence overflows");
    }
    return DecibelWeight(total);
}

inline Odds woe_to_odds(DecibelWeight w) {
    const double odds = std::pow(10.0, w.value() / 10.0);
    if (!std::isfinite(odds) || odds <= 0.0) {
        throw Error(ErrorCode::Overflow,
                    "odds for " + detail::fmt_value(w.value()) + " dB are not representable");
    }
    return Odds(odds);
}

inline Probability odds_to_probability(Odds o) { return Probability(o.value() / (1.0 + o.value())); }

inline Probability woe_to_probability(DecibelWeight w) { return odds_to_probability(woe_to_odds(w)); }

enum class Unit { Woe, Odds, Probability };

template <>
struct EnumNames<Unit> {
    static constexpr std::array<std::pair<Unit, std::string_view>, 3> names{{
        {Unit::Woe, "woe"},
        {Unit::Odds, "odds"},
        {Unit::Probability, "probability"},
    }};
};

/// Converts between the three equivalent scales. The input is validated
/// against its own unit's range even when from == to.
inline double convert(double value, Unit from, Unit to) {
    Odds odds;
    switch (from) {
        case Unit::Woe: odds = woe_to_odds(DecibelWeight(value)); break;
        case Unit::Odds: odds = Odds(value); break;
        case Unit::Probability: {
            const Probability p(value);
            if (to == Unit::Probability) return p.value();
            odds = probability_to_odds(p);
            break;
        }
    }
    if (from == to) return value;
    switch (to) {
        case Unit::Woe: return woe_from_odds(odds).value();
        case Unit::Odds: return odds.value();
        case Unit::Probability: return odds_to_probability(odds).value();
    }
    return value;
}

}  // namespace woe
