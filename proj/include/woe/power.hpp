#pragma once

// Power of a two-group comparison of binary outcomes, the P(E|H1) term of a
// positive-result likelihood ratio. The analytic route uses the unpooled
// normal approximation; the Monte Carlo route simulates the same unpooled
// z-test and serves as its independent check.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <thread>
#include <vector>

#include <boost/math/distributions/normal.hpp>

#include "woe/enum_names.hpp"
#include "woe/error.hpp"
#include "woe/evidence.hpp"

namespace woe {

enum class Sides { OneSided, TwoSided };
enum class PowerMethod { NormalApproximation, MonteCarlo };

template <>
struct EnumNames<Sides> {
    static constexpr std::array<std::pair<Sides, std::string_view>, 2> names{{
        {Sides::OneSided, "OneSided"},
        {Sides::TwoSided, "TwoSided"},
    }};
};

template <>
struct EnumNames<PowerMethod> {
    static constexpr std::array<std::pair<PowerMethod, std::string_view>, 2> names{{
        {PowerMethod::NormalApproximation, "NormalApproximation"},
        {PowerMethod::MonteCarlo, "MonteCarlo"},
    }};
};

struct TwoGroupBinaryDesign {
    std::int64_t n1 = 0;
    std::int64_t n2 = 0;
    double p1 = 0.0;  // event rate in group 1 under the alternative
    double p2 = 0.0;
    double alpha = 0.05;
    Sides sides = Sides::TwoSided;

    friend bool operator==(const TwoGroupBinaryDesign&, const TwoGroupBinaryDesign&) = default;
};

struct PowerEstimate {
    Probability power;
    PowerMethod method = PowerMethod::NormalApproximation;
    std::int64_t iterations = 0;    // MonteCarlo only
    std::uint64_t seed = 0;         // MonteCarlo only
    double mc_standard_error = 0.0; // MonteCarlo only
    unsigned workers = 0;           // MonteCarlo only; never changes the estimate
    bool null_design = false;       // p1 == p2, so power is just alpha

    friend bool operator==(const PowerEstimate&, const PowerEstimate&) = default;
};

inline void validate(const TwoGroupBinaryDesign& d) {
    auto fail = [](const char* field, const std::string& what) {
        throw Error(ErrorCode::InvalidDesign, std::string(field) + " " + what, field);
    };
    if (d.n1 < 1) fail("n1", "must be at least 1");
    if (d.n2 < 1) fail("n2", "must be at least 1");
    if (!(d.p1 > 0.0 && d.p1 < 1.0)) fail("p1", "must lie strictly between 0 and 1");
    if (!(d.p2 > 0.0 && d.p2 < 1.0)) fail("p2", "must lie strictly between 0 and 1");
    if (!(d.alpha > 0.0 && d.alpha < 1.0)) fail("alpha", "must lie strictly between 0 and 1");
}

/// Upper standard-normal quantile for the test's rejection threshold.
inline double critical_value(double alpha, Sides sides) {
    const boost::math::normal standard;
    const double tail = sides == Sides::TwoSided ? alpha / 2.0 : alpha;
    return boost::math::quantile(boost::math::complement(standard, tail));
}

inline double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

/// Normal-approximation power of the unpooled two-proportion z-test. The
/// two-sided form includes the (usually negligible) opposite tail so that the
/// estimate tends to alpha as the effect vanishes.
inline PowerEstimate two_proportion_power(const TwoGroupBinaryDesign& d) {
    validate(d);
    PowerEstimate est;
    est.method = PowerMethod::NormalApproximation;
    if (d.p1 == d.p2) {
        est.power = Probability(d.alpha);
        est.null_design = true;
        return est;
    }
    const double se = std::sqrt(d.p1 * (1.0 - d.p1) / static_cast<double>(d.n1) +
                                d.p2 * (1.0 - d.p2) / static_cast<double>(d.n2));
    const double shift = std::abs(d.p1 - d.p2) / se;
    const double z = critical_value(d.alpha, d.sides);
    double power = normal_cdf(shift - z);
    if (d.sides == Sides::TwoSided) power += normal_cdf(-shift - z);
    est.power = Probability(std::clamp(power, 0.0, 1.0));
    return est;
}

namespace detail {

inline constexpr std::int64_t kChunkIterations = 4096;

/// Rejections of the unpooled z-test in one chunk. Each chunk owns a generator
/// seeded from (seed, chunk index), so the total is independent of how chunks
/// are spread across workers.
inline std::int64_t simulate_chunk(const TwoGroupBinaryDesign& d, double z_crit, std::uint64_t seed,
                                   std::uint64_t chunk, std::int64_t count) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(chunk), static_cast<std::uint32_t>(chunk >> 32)};
    std::mt19937_64 rng(seq);
    std::binomial_distribution<std::int64_t> group1(d.n1, d.p1);
    std::binomial_distribution<std::int64_t> group2(d.n2, d.p2);
    const double n1 = static_cast<double>(d.n1);
    const double n2 = static_cast<double>(d.n2);
    const double direction = d.p1 >= d.p2 ? 1.0 : -1.0;

    std::int64_t rejections = 0;
    for (std::int64_t i = 0; i < count; ++i) {
        const double r1 = static_cast<double>(group1(rng)) / n1;
        const double r2 = static_cast<double>(group2(rng)) / n2;
        const double diff = r1 - r2;
        const double var = r1 * (1.0 - r1) / n1 + r2 * (1.0 - r2) / n2;
        bool reject;
        if (var <= 0.0) {
            // Degenerate sample: z is +-inf when the rates differ, undefined otherwise.
            reject = d.sides == Sides::TwoSided ? diff != 0.0 : direction * diff > 0.0;
        } else {
            const double z = diff / std::sqrt(var);
            reject = d.sides == Sides::TwoSided ? std::abs(z) > z_crit : direction * z > z_crit;
        }
        rejections += reject ? 1 : 0;
    }
    return rejections;
}

}  // namespace detail

/// Monte Carlo power: fraction of simulated studies in which the unpooled
/// two-proportion z-test rejects. Deterministic for a given seed whatever the
/// worker count.
inline PowerEstimate simulate_two_group_power(const TwoGroupBinaryDesign& d, std::int64_t iterations,
                                              std::uint64_t seed, unsigned workers = 1) {
    validate(d);
    if (iterations < 1000) {
        throw Error(ErrorCode::InvalidDesign, "iterations must be at least 1000", "iterations");
    }
    workers = std::max(1u, workers);
    const double z_crit = critical_value(d.alpha, d.sides);
    const auto chunks = static_cast<std::uint64_t>((iterations + detail::kChunkIterations - 1) /
                                                   detail::kChunkIterations);
    std::vector<std::int64_t> rejections(chunks, 0);

    auto run = [&](unsigned worker) {
        for (std::uint64_t c = worker; c < chunks; c += workers) {
            const std::int64_t begin = static_cast<std::int64_t>(c) * detail::kChunkIterations;
            const std::int64_t count = std::min(detail::kChunkIterations, iterations - begin);
            rejections[c] = detail::simulate_chunk(d, z_crit, seed, c, count);
        }
    };
    if (workers == 1) {
        run(0);
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run, w);
    }

    std::int64_t total = 0;
    for (auto r : rejections) total += r;
    const double power = static_cast<double>(total) / static_cast<double>(iterations);

    PowerEstimate est;
    est.power = Probability(power);
    est.method = PowerMethod::MonteCarlo;
    est.iterations = iterations;
    est.seed = seed;
    est.workers = workers;
    est.mc_standard_error = std::sqrt(power * (1.0 - power) / static_cast<double>(iterations));
    est.null_design = d.p1 == d.p2;
    return est;
}

struct CaseSplitRates {
    double p1 = 0.0;
    double p2 = 0.0;
    std::int64_t group_size = 0;
};

/// Splits a cohort evenly into two groups and distributes the cases so that
/// group 1 has `case_difference` more expected cases than group 2. Expected
/// counts may be fractional and are used as rates directly.
inline CaseSplitRates rates_from_case_split(std::int64_t total_n, std::int64_t total_cases,
                                            std::int64_t case_difference) {
    if (total_n < 2 || total_n % 2 != 0) {
        throw Error(ErrorCode::InvalidCounts, "total_n must be a positive even count", "total_n");
    }
    if (case_difference < 0 || total_cases < case_difference) {
        throw Error(ErrorCode::InvalidCounts, "require total_cases >= case_difference >= 0", "case_difference");
    }
    const double group = static_cast<double>(total_n) / 2.0;
    CaseSplitRates r;
    r.group_size = total_n / 2;
    r.p1 = (static_cast<double>(total_cases + case_difference) / 2.0) / group;
    r.p2 = (static_cast<double>(total_cases - case_difference) / 2.0) / group;
    if (!(r.p1 > 0.0 && r.p1 < 1.0) || !(r.p2 > 0.0 && r.p2 < 1.0)) {
        throw Error(ErrorCode::InvalidCounts, "derived event rates fall outside (0, 1)", "total_cases");
    }
    return r;
}

/// Odds of group 2 relative to group 1.
inline double implied_odds_ratio(double p1, double p2) { return (p2 / (1.0 - p2)) / (p1 / (1.0 - p1)); }

}  // namespace woe
