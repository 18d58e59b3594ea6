#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "woe/evidence.hpp"

using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using namespace woe;

namespace {

OperatingCharacteristics oc(double power, double fpr) { return {Probability(power), Probability(fpr)}; }

ErrorCode code_of(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected woe::Error");
    return ErrorCode::Validation;
}

}  // namespace

TEST_CASE("Probability construction is range-checked", "[evidence]") {
    CHECK(Probability(0.0).value() == 0.0);
    CHECK(Probability(1.0).value() == 1.0);
    CHECK(code_of([] { Probability(-0.01); }) == ErrorCode::OutOfRange);
    CHECK(code_of([] { Probability(1.0000001); }) == ErrorCode::OutOfRange);
    CHECK(code_of([] { Probability(std::nan("")); }) == ErrorCode::OutOfRange);
}

TEST_CASE("Odds and weights reject non-finite values", "[evidence]") {
    CHECK(code_of([] { Odds(0.0); }) == ErrorCode::OutOfRange);
    CHECK(code_of([] { Odds(-1.0); }) == ErrorCode::OutOfRange);
    CHECK(code_of([] { (void)Odds(INFINITY); }) == ErrorCode::OutOfRange);
    CHECK(code_of([] { (void)DecibelWeight(INFINITY); }) == ErrorCode::InfiniteWeight);
    CHECK(code_of([] { DecibelWeight(std::nan("")); }) == ErrorCode::InfiniteWeight);
}

TEST_CASE("likelihood_ratio", "[evidence]") {
    CHECK_THAT(likelihood_ratio(Probability(1.0), Probability(1e-6)).value(), WithinRel(1e6, 1e-12));
    CHECK(likelihood_ratio(Probability(0.3), Probability(0.3)).value() == 1.0);
    CHECK_THAT(likelihood_ratio(Probability(0.6), Probability(0.15)).value(), WithinAbs(4.0, 1e-12));

    CHECK(code_of([] { likelihood_ratio(Probability(0.5), Probability(0.0)); }) == ErrorCode::ZeroDenominator);
    CHECK(code_of([] { likelihood_ratio(Probability(0.0), Probability(0.5)); }) == ErrorCode::InfiniteWeight);
}

TEST_CASE("positive_result_lr is power over false-positive rate", "[evidence]") {
    CHECK_THAT(positive_result_lr(oc(0.8, 0.05)).value(), WithinAbs(16.0, 1e-12));
    CHECK_THAT(positive_result_lr(oc(0.05, 0.05)).value(), WithinAbs(1.0, 1e-12));
    CHECK_THAT(positive_result_lr(oc(0.6, 0.15)).value(), WithinAbs(4.0, 1e-12));
    CHECK(code_of([] { positive_result_lr(oc(0.8, 0.0)); }) == ErrorCode::ZeroDenominator);
}

TEST_CASE("negative_result_lr keeps the H1 orientation", "[evidence]") {
    CHECK_THAT(negative_result_lr(oc(0.6, 0.15)).value(), WithinAbs(0.4 / 0.85, 1e-12));
    CHECK_THAT(negative_result_lr(oc(0.6, 0.15)).value(), WithinAbs(0.4706, 1e-4));
    CHECK_THAT(negative_result_lr(oc(0.65, 0.10)).value(), WithinAbs(0.3889, 1e-4));
    CHECK_THAT(negative_result_lr(oc(0.5, 0.5)).value(), WithinAbs(1.0, 1e-12));
    CHECK(code_of([] { negative_result_lr(oc(0.8, 1.0)); }) == ErrorCode::ZeroDenominator);
}

TEST_CASE("woe_from_odds", "[evidence]") {
    CHECK_THAT(woe_from_odds(Odds(4.0)).value(), WithinAbs(6.0206, 1e-4));
    CHECK(woe_from_odds(Odds(1.0)).value() == 0.0);
    CHECK_THAT(woe_from_odds(Odds(0.4 / 0.85)).value(), WithinAbs(-3.2736, 1e-4));
}

TEST_CASE("prior_weight", "[evidence]") {
    CHECK(prior_weight(Probability(0.5)).value() == 0.0);
    CHECK_THAT(prior_weight(Probability(2.0 / 3.0)).value(), WithinAbs(10.0 * std::log10(2.0), 1e-12));
    CHECK_THAT(prior_weight(Probability(0.6667)).value(), WithinAbs(3.01, 0.01));
    CHECK_THAT(prior_weight(Probability(0.91)).value(), WithinAbs(10.04, 0.01));
    CHECK(code_of([] { prior_weight(Probability(0.0)); }) == ErrorCode::DegenerateProbability);
    CHECK(code_of([] { prior_weight(Probability(1.0)); }) == ErrorCode::DegenerateProbability);
}

TEST_CASE("combine_woe sums evidence and prior", "[evidence]") {
    const std::vector<DecibelWeight> one{DecibelWeight(6.02)};
    CHECK_THAT(combine_woe(one, DecibelWeight(0.0)).value(), WithinAbs(6.02, 1e-12));
    CHECK(combine_woe({}, DecibelWeight(0.0)).value() == 0.0);
    const std::vector<DecibelWeight> two{DecibelWeight(6.02), DecibelWeight(-3.27)};
    CHECK_THAT(combine_woe(two, DecibelWeight(0.0)).value(), WithinAbs(2.75, 1e-12));
    const std::vector<DecibelWeight> reversed{DecibelWeight(-3.27), DecibelWeight(6.02)};
    CHECK_THAT(combine_woe(reversed, DecibelWeight(0.0)).value(), WithinAbs(2.75, 1e-12));

    const std::vector<DecibelWeight> huge{DecibelWeight(1e308), DecibelWeight(1e308)};
    CHECK(code_of([&] { combine_woe(huge, DecibelWeight(0.0)); }) == ErrorCode::Overflow);
}

TEST_CASE("woe_to_odds and the probability conversions", "[evidence]") {
    CHECK_THAT(woe_to_odds(DecibelWeight(10)).value(), WithinRel(10.0, 1e-12));
    CHECK(woe_to_odds(DecibelWeight(0)).value() == 1.0);
    CHECK_THAT(woe_to_odds(DecibelWeight(20)).value(), WithinRel(100.0, 1e-12));
    CHECK(code_of([] { woe_to_odds(DecibelWeight(4000)); }) == ErrorCode::Overflow);
    CHECK(code_of([] { woe_to_odds(DecibelWeight(-4000)); }) == ErrorCode::Overflow);

    CHECK_THAT(odds_to_probability(Odds(4.0)).value(), WithinAbs(0.8, 1e-12));
    CHECK(odds_to_probability(Odds(1.0)).value() == 0.5);
    CHECK_THAT(odds_to_probability(Odds(1000.0)).value(), WithinAbs(0.999, 0.0005));

    CHECK_THAT(woe_to_probability(DecibelWeight(6.02)).value(), WithinAbs(0.800, 0.0005));
    CHECK_THAT(woe_to_probability(DecibelWeight(-4.10)).value(), WithinAbs(0.280, 0.0005));
    // 10^0.327 / (1 + 10^0.327), evaluated by hand
    CHECK_THAT(woe_to_probability(DecibelWeight(3.27)).value(), WithinAbs(0.680, 0.0005));
}

TEST_CASE("reference rows of weight, odds and probability", "[evidence][table]") {
    struct Row {
        double woe, odds, probability;
    };
    // Reference values, rounded.
    const Row rows[] = {{0, 1, 0.5}, {3, 2, 0.67}, {6, 4, 0.8}, {10, 10, 0.91}, {20, 100, 0.99}, {30, 1000, 0.999}};
    for (const auto& r : rows) {
        INFO("row " << r.woe << " dB");
        const double odds = woe_to_odds(DecibelWeight(r.woe)).value();
        CHECK_THAT(odds, WithinRel(r.odds, 0.005));
        CHECK_THAT(woe_to_probability(DecibelWeight(r.woe)).value(), WithinAbs(r.probability, 0.005));
    }

    // The 12 dB row is often quoted as 19:1 and 0.95; the exact values are
    // 10^1.2 = 15.85:1 and 0.941. 19:1 is 12.79 dB.
    CHECK_THAT(woe_to_odds(DecibelWeight(12)).value(), WithinAbs(15.85, 0.005));
    CHECK_THAT(woe_to_probability(DecibelWeight(12)).value(), WithinAbs(0.941, 0.0005));
    CHECK_THAT(woe_from_odds(Odds(19)).value(), WithinAbs(12.79, 0.005));
}

TEST_CASE("convert between units", "[evidence]") {
    CHECK_THAT(convert(10, Unit::Woe, Unit::Probability), WithinAbs(0.909091, 5e-7));
    CHECK(convert(1, Unit::Odds, Unit::Woe) == 0.0);
    CHECK_THAT(convert(0.8, Unit::Probability, Unit::Woe), WithinAbs(10.0 * std::log10(4.0), 1e-12));
    CHECK(convert(0.3, Unit::Probability, Unit::Probability) == 0.3);
    CHECK(convert(2.5, Unit::Odds, Unit::Odds) == 2.5);

    CHECK(code_of([] { convert(1.5, Unit::Probability, Unit::Woe); }) == ErrorCode::OutOfRange);
    CHECK(code_of([] { convert(1.0, Unit::Probability, Unit::Odds); }) == ErrorCode::DegenerateProbability);
    CHECK(code_of([] { convert(0.0, Unit::Odds, Unit::Woe); }) == ErrorCode::OutOfRange);
    CHECK(code_of([] { convert(5000, Unit::Woe, Unit::Odds); }) == ErrorCode::Overflow);
}
