#pragma once

// Assessments built in code for the worked examples, plus small helpers.

#include <fstream>
#include <sstream>
#include <string>

#include "woe/assessment.hpp"

namespace woe::testing {

inline Adjustment set_to(AdjustmentTarget target, double value, AdjustmentCategory category = AdjustmentCategory::Other) {
    return {target, AdjustmentMode::SetTo, value, "test judgment", category};
}

inline Adjustment add_delta(AdjustmentTarget target, double delta) {
    return {target, AdjustmentMode::AddDelta, delta, "test judgment", AdjustmentCategory::Other};
}

inline StudyAssessment assessment(double power, double fpr, ResultDirection direction, double prior = 0.5) {
    StudyAssessment a;
    a.id = "test";
    a.result_direction = direction;
    a.baseline = {Probability(power), Probability(fpr)};
    a.prior_p_h1 = Probability(prior);
    return a;
}

/// Baseline (0.8, 0.05); low dose drops power to 0.6, unblinding raises fpr to 0.15.
inline StudyAssessment drug(ResultDirection direction) {
    StudyAssessment a = assessment(0.8, 0.05, direction);
    a.id = "drug";
    a.adjustments = {set_to(AdjustmentTarget::Power, 0.6, AdjustmentCategory::DoseOrDuration),
                     set_to(AdjustmentTarget::Fpr, 0.15, AdjustmentCategory::Blinding)};
    return a;
}

/// Effective (0.65, 0.10), negative result.
inline StudyAssessment vitamin_d() {
    StudyAssessment a = assessment(0.65, 0.10, ResultDirection::Negative);
    a.id = "vitamin-d";
    return a;
}

inline std::string read_text(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline std::string assessment_path(const std::string& name) { return std::string(WOE_ASSESSMENTS_DIR) + "/" + name; }

}  // namespace woe::testing
