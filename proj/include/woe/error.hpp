#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace woe {

enum class ErrorCode {
    // Input problems: bad documents, out-of-range values, invalid designs.
    Malformed,
    Validation,
    OutOfRange,
    DegenerateProbability,
    InvalidAdjustment,
    InvalidCounts,
    InvalidDesign,
    // Problems that only show up while evaluating otherwise valid input.
    ZeroDenominator,
    InfiniteWeight,
    Overflow,
    Unreachable,
};

constexpr std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::Malformed: return "Malformed";
        case ErrorCode::Validation: return "Validation";
        case ErrorCode::OutOfRange: return "OutOfRange";
        case ErrorCode::DegenerateProbability: return "DegenerateProbability";
        case ErrorCode::InvalidAdjustment: return "InvalidAdjustment";
        case ErrorCode::InvalidCounts: return "InvalidCounts";
        case ErrorCode::InvalidDesign: return "InvalidDesign";
        case ErrorCode::ZeroDenominator: return "ZeroDenominator";
        case ErrorCode::InfiniteWeight: return "InfiniteWeight";
        case ErrorCode::Overflow: return "Overflow";
        case ErrorCode::Unreachable: return "Unreachable";
    }
    return "Unknown";
}

constexpr bool is_validation(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::Malformed:
        case ErrorCode::Validation:
        case ErrorCode::OutOfRange:
        case ErrorCode::DegenerateProbability:
        case ErrorCode::InvalidAdjustment:
        case ErrorCode::InvalidCounts:
        case ErrorCode::InvalidDesign:
            return true;
        default:
            return false;
    }
}

/// Every failure in the toolkit is reported through this type. `field` names
/// the offending document field (dotted path) when one is known.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message, std::string field = {})
        : std::runtime_error(message), code_(code), field_(std::move(field)) {}

    ErrorCode code() const noexcept { return code_; }
    const std::string& field() const noexcept { return field_; }

private:
    ErrorCode code_;
    std::string field_;
};

}  // namespace woe
