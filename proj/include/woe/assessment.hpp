#pragma once

// A study under evaluation: baseline operating characteristics, the reported
// result direction, an ordered ledger of justified adjustments and a prior.
// Evaluation applies the ledger and turns the result into decibels.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "woe/enum_names.hpp"
#include "woe/error.hpp"
#include "woe/evidence.hpp"

namespace woe {

/// Probabilities produced by the ledger are kept inside [kEpsilon, 1 - kEpsilon].
inline constexpr double kEpsilon = 1e-6;

enum class AdjustmentTarget { Power, Fpr };
enum class AdjustmentMode { SetTo, AddDelta };

enum class AdjustmentCategory {
    Blinding,
    EndpointSoftness,
    Dropout,
    ConflictOfInterest,
    PublicationVenue,
    Replication,
    MechanismPlausibility,
    DoseOrDuration,
    PopulationDilution,
    ProxyMeasurement,
    Misclassification,
    ResidualConfounding,
    MultipleAnalyses,
    Other,
};

enum class BaselineProvenance { Reported, FieldEstimate, PowerModule };

template <>
struct EnumNames<AdjustmentTarget> {
    static constexpr std::array<std::pair<AdjustmentTarget, std::string_view>, 2> names{{
        {AdjustmentTarget::Power, "Power"},
        {AdjustmentTarget::Fpr, "Fpr"},
    }};
};

template <>
struct EnumNames<AdjustmentMode> {
    static constexpr std::array<std::pair<AdjustmentMode, std::string_view>, 2> names{{
        {AdjustmentMode::SetTo, "SetTo"},
        {AdjustmentMode::AddDelta, "AddDelta"},
    }};
};

template <>
struct EnumNames<AdjustmentCategory> {
    static constexpr std::array<std::pair<AdjustmentCategory, std::string_view>, 14> names{{
        {AdjustmentCategory::Blinding, "Blinding"},
        {AdjustmentCategory::EndpointSoftness, "EndpointSoftness"},
        {AdjustmentCategory::Dropout, "Dropout"},
        {AdjustmentCategory::ConflictOfInterest, "ConflictOfInterest"},
        {AdjustmentCategory::PublicationVenue, "PublicationVenue"},
        {AdjustmentCategory::Replication, "Replication"},
        {AdjustmentCategory::MechanismPlausibility, "MechanismPlausibility"},
        {AdjustmentCategory::DoseOrDuration, "DoseOrDuration"},
        {AdjustmentCategory::PopulationDilution, "PopulationDilution"},
        {AdjustmentCategory::ProxyMeasurement, "ProxyMeasurement"},
        {AdjustmentCategory::Misclassification, "Misclassification"},
        {AdjustmentCategory::ResidualConfounding, "ResidualConfounding"},
        {AdjustmentCategory::MultipleAnalyses, "MultipleAnalyses"},
        {AdjustmentCategory::Other, "Other"},
    }};
};

template <>
struct EnumNames<BaselineProvenance> {
    static constexpr std::array<std::pair<BaselineProvenance, std::string_view>, 3> names{{
        {BaselineProvenance::Reported, "Reported"},
        {BaselineProvenance::FieldEstimate, "FieldEstimate"},
        {BaselineProvenance::PowerModule, "PowerModule"},
    }};
};

/// One elicited judgment. The tool never derives magnitudes itself; the
/// rationale is what makes the number auditable.
struct Adjustment {
    AdjustmentTarget target = AdjustmentTarget::Power;
    AdjustmentMode mode = AdjustmentMode::SetTo;
    double value = 0.0;  // a probability for SetTo, a signed delta for AddDelta
    std::string rationale;
    AdjustmentCategory category = AdjustmentCategory::Other;

    friend bool operator==(const Adjustment&, const Adjustment&) = default;
};

struct StudyAssessment {
    std::string id;
    std::string title;
    std::string description;
    ResultDirection result_direction = ResultDirection::Positive;
    OperatingCharacteristics baseline;
    BaselineProvenance baseline_provenance = BaselineProvenance::Reported;
    std::string baseline_note;
    std::vector<Adjustment> adjustments;
    Probability prior_p_h1{0.5};

    friend bool operator==(const StudyAssessment&, const StudyAssessment&) = default;
};

struct AuditStep {
    std::size_t index = 0;
    Adjustment adjustment;
    OperatingCharacteristics before;
    OperatingCharacteristics after;
    bool clamped = false;

    friend bool operator==(const AuditStep&, const AuditStep&) = default;
};

struct EffectiveCharacteristics {
    OperatingCharacteristics characteristics;
    std::vector<AuditStep> audit_trail;
};

struct Warning {
    std::string code;
    std::string message;

    friend bool operator==(const Warning&, const Warning&) = default;
};

struct WoeReport {
    ResultDirection result_direction = ResultDirection::Positive;
    OperatingCharacteristics effective;
    Odds lr_for_h1;
    DecibelWeight woe_evidence;
    DecibelWeight woe_prior;
    DecibelWeight woe_total;
    Probability posterior_p_h1;
    std::vector<AuditStep> audit_trail;
    std::vector<Warning> warnings;

    friend bool operator==(const WoeReport&, const WoeReport&) = default;
};

namespace detail {

inline std::string adjustment_field(std::size_t i, const char* member) {
    return "adjustments[" + std::to_string(i) + "]." + member;
}

}  // namespace detail

inline void validate_adjustment(const Adjustment& adj, std::size_t index) {
    if (adj.rationale.find_first_not_of(" \t\r\n") == std::string::npos) {
        throw Error(ErrorCode::InvalidAdjustment,
                    "adjustment " + std::to_string(index) + " has no rationale; every judgment must be justified",
                    detail::adjustment_field(index, "rationale"));
    }
    if (!std::isfinite(adj.value)) {
        throw Error(ErrorCode::InvalidAdjustment, "adjustment value must be finite",
                    detail::adjustment_field(index, "value"));
    }
    if (adj.mode == AdjustmentMode::SetTo && (adj.value < kEpsilon || adj.value > 1.0 - kEpsilon)) {
        throw Error(ErrorCode::InvalidAdjustment,
                    "SetTo value " + detail::fmt_value(adj.value) + " outside [1e-6, 1 - 1e-6]",
                    detail::adjustment_field(index, "value"));
    }
    if (adj.mode == AdjustmentMode::AddDelta && std::abs(adj.value) > 1.0) {
        throw Error(ErrorCode::InvalidAdjustment,
                    "AddDelta value " + detail::fmt_value(adj.value) + " outside [-1, 1]",
                    detail::adjustment_field(index, "value"));
    }
}

inline void validate(const StudyAssessment& a) {
    for (std::size_t i = 0; i < a.adjustments.size(); ++i) validate_adjustment(a.adjustments[i], i);
    if (!a.prior_p_h1.is_interior()) {
        throw Error(ErrorCode::DegenerateProbability,
                    "prior_p_h1 must lie strictly between 0 and 1; a dogmatic prior makes evidence irrelevant",
                    "prior_p_h1");
    }
}

/// Applies the ledger to the baseline in declared order. SetTo replaces the
/// targeted value; AddDelta adds and clamps to [kEpsilon, 1 - kEpsilon],
/// marking the step when the clamp fires.
inline EffectiveCharacteristics effective_characteristics(const StudyAssessment& a) {
    EffectiveCharacteristics out;
    out.characteristics = a.baseline;
    out.audit_trail.reserve(a.adjustments.size());
    for (std::size_t i = 0; i < a.adjustments.size(); ++i) {
        const Adjustment& adj = a.adjustments[i];
        validate_adjustment(adj, i);

        AuditStep step{i, adj, out.characteristics, out.characteristics, false};
        Probability& slot = adj.target == AdjustmentTarget::Power ? step.after.power : step.after.fpr;
        if (adj.mode == AdjustmentMode::SetTo) {
            slot = Probability(adj.value);
        } else {
            const double raw = slot.value() + adj.value;
            const double clamped = std::clamp(raw, kEpsilon, 1.0 - kEpsilon);
            step.clamped = clamped != raw;
            slot = Probability(clamped);
        }
        out.characteristics = step.after;
        out.audit_trail.push_back(std::move(step));
    }
    return out;
}

/// Evaluates an assessment whose ledger has already been applied. Used
/// directly by what-if analyses that override the effective values.
inline WoeReport evaluate_effective(const StudyAssessment& a, EffectiveCharacteristics eff) {
    validate(a);
    WoeReport r;
    r.result_direction = a.result_direction;
    r.effective = eff.characteristics;
    r.lr_for_h1 = result_lr(r.effective, a.result_direction);
    r.woe_evidence = woe_from_odds(r.lr_for_h1);
    r.woe_prior = prior_weight(a.prior_p_h1);
    r.woe_total = r.woe_evidence + r.woe_prior;
    r.posterior_p_h1 = woe_to_probability(r.woe_total);
    r.audit_trail = std::move(eff.audit_trail);

    for (const auto& step : r.audit_trail) {
        if (step.clamped) {
            r.warnings.push_back({"clamped", "adjustment " + std::to_string(step.index) +
                                                 " was clamped to [1e-6, 1 - 1e-6]"});
        }
    }
    if (r.effective.fpr >= r.effective.power) {
        r.warnings.push_back({"futility",
                              "false-positive rate is at least the power: a positive result cannot "
                              "provide evidence for H1"});
    }
    return r;
}

inline WoeReport evaluate(const StudyAssessment& a) {
    validate(a);
    return evaluate_effective(a, effective_characteristics(a));
}

}  // namespace woe
