#include <catch2/catch_amalgamated.hpp>

#include "fixtures.hpp"
#include "woe/report.hpp"

using Catch::Matchers::ContainsSubstring;
using namespace woe;
using namespace woe::testing;

namespace {

std::string text_of(const StudyAssessment& a, ReportFormat f = ReportFormat::PlainText) {
    return render_report(evaluate(a), a, f);
}

}  // namespace

TEST_CASE("drug report shows the instantiated formula", "[report]") {
    const auto a = drug(ResultDirection::Positive);
    const std::string text = text_of(a);
    CHECK_THAT(text, ContainsSubstring("WoE = 10·log10(0.6/0.15) = 6.02 dB"));
    CHECK_THAT(text, ContainsSubstring("positive-result study; evidence favors H1 by 6.02 dB"));
    CHECK_THAT(text, ContainsSubstring("SetTo Power 0.6 [DoseOrDuration]"));
    CHECK_THAT(text, ContainsSubstring("rationale: test judgment"));
    CHECK_THAT(text, ContainsSubstring("P(H1) = 0.800"));
    CHECK_THAT(text, ContainsSubstring("Warnings: none"));

    const std::string md = text_of(a, ReportFormat::Markdown);
    CHECK_THAT(md, ContainsSubstring("WoE = 10·log10(0.6/0.15) = 6.02 dB"));
    CHECK_THAT(md, ContainsSubstring("| 2 | Blinding | SetTo Fpr 0.15 |"));
}

TEST_CASE("empty ledger is stated explicitly", "[report]") {
    CHECK_THAT(text_of(vitamin_d()), ContainsSubstring("no adjustments applied"));
    CHECK_THAT(text_of(vitamin_d(), ReportFormat::Markdown), ContainsSubstring("no adjustments applied"));
}

TEST_CASE("negative-result report", "[report]") {
    const std::string text = text_of(vitamin_d());
    CHECK_THAT(text, ContainsSubstring("negative-result study; evidence favors H0 by 4.10 dB"));
    CHECK_THAT(text, ContainsSubstring("WoE = 10·log10(0.35/0.9) = −4.10 dB"));
    CHECK_THAT(text, ContainsSubstring("(1 − 0.65)/(1 − 0.1)"));
    CHECK_THAT(text, ContainsSubstring("P(H0) = 0.720"));
    CHECK_THAT(text, ContainsSubstring("odds H1:H0 1:2.57"));
}

TEST_CASE("rendering is byte-stable", "[report]") {
    const auto a = drug(ResultDirection::Negative);
    CHECK(text_of(a) == text_of(a));
    CHECK(text_of(a, ReportFormat::Markdown) == text_of(a, ReportFormat::Markdown));
}

TEST_CASE("anomalies appear in the report", "[report]") {
    auto a = assessment(0.3, 0.05, ResultDirection::Positive);
    a.adjustments = {add_delta(AdjustmentTarget::Fpr, 0.3)};
    const std::string text = text_of(a);
    CHECK_THAT(text, ContainsSubstring("[futility]"));
    CHECK_THAT(text, ContainsSubstring("AddDelta Fpr +0.3"));

    a.adjustments = {add_delta(AdjustmentTarget::Fpr, -0.3)};
    CHECK_THAT(text_of(a), ContainsSubstring("(clamped)"));
}

TEST_CASE("markdown escapes table separators in free text", "[report]") {
    auto a = drug(ResultDirection::Positive);
    a.adjustments[0].rationale = "dose | duration";
    CHECK_THAT(text_of(a, ReportFormat::Markdown), ContainsSubstring("dose \\| duration"));
}
