#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rankcp/datagen.hpp"
#include "rankcp/segmentation.hpp"

#include "helpers.hpp"

using namespace rankcp;

namespace {

Series step_series_8() {
    return Series(8, 1, {0, 0, 0, 0, 10, 10, 10, 10});
}

Series gaussian_shift_series(std::size_t left, std::size_t right, double shift,
                             std::uint64_t seed) {
    const std::vector<SegmentSpec> specs{
        {left, Family::gaussian, {0.0, 0.0}, {1.0, 1.0}},
        {right, Family::gaussian, {shift, shift}, {1.0, 1.0}},
    };
    return generate_series(specs, seed);
}

DetectConfig default_config(std::uint64_t seed = 0) {
    DetectConfig cfg;
    cfg.seed = seed;
    return cfg;
}

} // namespace

TEST_CASE("permutation_p_value smoothing") {
    CHECK(permutation_p_value(0, 199) == 0.005);
    CHECK(permutation_p_value(199, 199) == 1.0);
    CHECK(permutation_p_value(9, 199) == 0.05);
}

TEST_CASE("best_split locates the step boundary") {
    const Series series = step_series_8();
    const DetectConfig cfg = default_config();
    const SplitStatistic best = best_split(series, {0, 8}, cfg);
    CHECK(best.tau == 4);
    CHECK(best.kappa == 8);
    CHECK(std::abs(best.q_value - 7.0 / 6.0) <= 1e-12);

    // Independent argmax over tau through the public per-split path.
    const UnitGrid grid = unit_grid_1d(8);
    double best_q = -1e300;
    std::size_t best_tau = 0;
    for (std::size_t tau = 2; tau <= 6; ++tau) {
        const double q = scaled_divergence(
            tau, 8 - tau, rank_energy(series.view(), tau, grid, cfg.energy));
        if (q > best_q) {
            best_q = q;
            best_tau = tau;
        }
    }
    CHECK(best.tau == best_tau);
    CHECK(std::abs(best.q_value - best_q) <= 1e-12);
}

TEST_CASE("best_split ties resolve to the smallest tau on constant data") {
    const Series series(10, 1, std::vector<double>(10, 4.5));
    const SplitStatistic best = best_split(series, {0, 10}, default_config());
    CHECK(best.tau == 2);
    CHECK(best.q_value == 0.0);
}

TEST_CASE("best_split full sweep finds the same boundary on the step series") {
    DetectConfig cfg = default_config();
    cfg.kappa_mode = KappaMode::full_sweep;
    const SplitStatistic best = best_split(step_series_8(), {0, 8}, cfg);
    CHECK(best.tau == 4);
    CHECK(best.kappa == 8);
    CHECK(std::abs(best.q_value - 7.0 / 6.0) <= 1e-12);
}

TEST_CASE("sweep agrees with the per-split route on random data") {
    const double alphas[] = {0.5, 1.0, 2.0};
    for (std::uint64_t trial = 0; trial < 6; ++trial) {
        const std::size_t n = 12 + 7 * trial;
        const std::size_t d = 1 + trial % 3;
        const Series series = testutil::random_series(n, d, 400 + trial, -2.0, 2.0);
        DetectConfig cfg;
        cfg.energy.alpha = alphas[trial % 3];
        cfg.energy.variant = trial % 2 == 0 ? EnergyVariant::ustat : EnergyVariant::vstat;
        cfg.min_size = cfg.energy.variant == EnergyVariant::ustat ? 2 : 1;
        const SplitStatistic fast = best_split(series, {0, n}, cfg);

        const UnitGrid grid = make_grid(n, d, cfg.grid);
        double best_q = -1e300;
        std::size_t best_tau = 0;
        for (std::size_t tau = cfg.min_size; tau + cfg.min_size <= n; ++tau) {
            const double q = scaled_divergence(
                tau, n - tau, rank_energy(series.view(), tau, grid, cfg.energy));
            if (q > best_q) {
                best_q = q;
                best_tau = tau;
            }
        }
        CHECK(fast.tau == best_tau);
        CHECK(std::abs(fast.q_value - best_q) <= 1e-10 * std::max(1.0, std::abs(best_q)));
    }
}

TEST_CASE("rank-permutation replicates equal literal data permutation") {
    // Permuting the observations and re-ranking gives exactly the
    // permuted ranks when the transport optimum is unique, so the
    // shortcut inside permutation_test must reproduce a literal
    // recompute bit for bit on continuous data.
    const Series series = gaussian_shift_series(20, 20, 1.5, 64);
    const std::size_t n = series.rows();
    DetectConfig cfg = default_config(17);
    cfg.n_permutations = 60;
    const SplitStatistic observed = best_split(series, {0, n}, cfg);
    const double fast_p = permutation_test(series, {0, n}, observed, cfg);

    std::size_t count_ge = 0;
    for (std::size_t r = 1; r <= cfg.n_permutations; ++r) {
        SplitMix64 rng(cfg.seed, r);
        auto order = identity_permutation(n);
        shuffle(std::span<std::uint32_t>(order), rng);
        Series permuted(n, series.cols());
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t c = 0; c < series.cols(); ++c)
                permuted.at(i, c) = series.at(order[i], c);
        const SplitStatistic replicate = best_split(permuted, {0, n}, cfg);
        if (replicate.q_value >= observed.q_value) ++count_ge;
    }
    CHECK(fast_p == permutation_p_value(count_ge, cfg.n_permutations));
}

TEST_CASE("divisive test records match the public best_split") {
    const Series series = gaussian_shift_series(40, 40, 2.0, 5);
    const DetectConfig cfg = default_config(2);
    const ChangePointResult result = divisive_detect(series, cfg);
    REQUIRE(!result.tests.empty());
    const SplitStatistic root = best_split(series, {0, series.rows()}, cfg);
    CHECK(result.tests[0].index == root.tau);
    CHECK(result.tests[0].q_value == root.q_value);
    CHECK(result.tests[0].p_value ==
          permutation_test(series, {0, series.rows()}, root, cfg));
}

TEST_CASE("full sweep permutation test is deterministic and detects a strong shift") {
    const Series series = gaussian_shift_series(15, 15, 5.0, 21);
    DetectConfig cfg = default_config(13);
    cfg.kappa_mode = KappaMode::full_sweep;
    cfg.n_permutations = 99;
    const SplitStatistic observed = best_split(series, {0, 30}, cfg);
    const double p1 = permutation_test(series, {0, 30}, observed, cfg);
    const double p2 = permutation_test(series, {0, 30}, observed, cfg);
    CHECK(p1 == p2);
    CHECK(p1 <= 0.05);
}

TEST_CASE("divisive_detect works in full sweep mode") {
    DetectConfig cfg = default_config(1);
    cfg.kappa_mode = KappaMode::full_sweep;
    const ChangePointResult result = divisive_detect(step_series_8(), cfg);
    CHECK(result.change_points == std::vector<std::size_t>{4});
}

TEST_CASE("torus grid detection finds the step boundary") {
    DetectConfig cfg = default_config();
    cfg.grid = GridChoice::torus;
    const SplitStatistic best = best_split(step_series_8(), {0, 8}, cfg);
    CHECK(best.tau == 4);

    const Series shifted = gaussian_shift_series(40, 40, 5.0, 51);
    DetectConfig cfg2 = default_config(6);
    cfg2.grid = GridChoice::torus;
    const ChangePointResult result = divisive_detect(shifted, cfg2);
    REQUIRE(result.change_points.size() == 1);
    CHECK(std::abs(static_cast<long>(result.change_points[0]) - 40L) <= 4);
}

TEST_CASE("vstat variant permits single-observation sides") {
    DetectConfig cfg = default_config();
    cfg.energy.variant = EnergyVariant::vstat;
    cfg.min_size = 1;
    const SplitStatistic best = best_split(step_series_8(), {0, 8}, cfg);
    CHECK(best.tau == 4);
    CHECK(std::abs(best.q_value - 11.0 / 8.0) <= 1e-12);

    // The sweep agrees with the per-split public route.
    const UnitGrid grid = unit_grid_1d(8);
    for (std::size_t tau = 1; tau <= 7; ++tau) {
        const double q = scaled_divergence(
            tau, 8 - tau, rank_energy(step_series_8().view(), tau, grid, cfg.energy));
        CHECK(q <= best.q_value + 1e-12);
    }
}

TEST_CASE("best_split rejects short segments") {
    const Series series = step_series_8();
    CHECK_THROWS_AS(best_split(series, {0, 3}, default_config()), std::invalid_argument);
    CHECK_THROWS_AS(best_split(series, {2, 2}, default_config()), std::invalid_argument);
}

TEST_CASE("permutation test extremes") {
    // A 5-sigma shift dominates every permuted replicate.
    const Series strong = gaussian_shift_series(30, 30, 5.0, 9);
    const DetectConfig cfg = default_config(3);
    const SplitStatistic observed = best_split(strong, {0, 60}, cfg);
    CHECK(permutation_test(strong, {0, 60}, observed, cfg) == permutation_p_value(0, 199));

    // Constant data: every replicate ties the observed zero.
    const Series flat(12, 1, std::vector<double>(12, 1.0));
    const SplitStatistic zero = best_split(flat, {0, 12}, cfg);
    CHECK(permutation_test(flat, {0, 12}, zero, cfg) == 1.0);
}

TEST_CASE("divisive_detect finds a single strong change point") {
    const Series series = gaussian_shift_series(100, 100, 5.0, 1001);
    const ChangePointResult result = divisive_detect(series, default_config(1));
    REQUIRE(result.change_points.size() == 1);
    CHECK(result.change_points[0] == 100);
    REQUIRE(!result.tests.empty());
    CHECK(result.tests[0].p_value == 0.005);
    CHECK(result.tests[0].accepted);
}

TEST_CASE("divisive_detect leaves homogeneous data alone") {
    const std::vector<SegmentSpec> spec{{200, Family::gaussian, {0.0, 0.0}, {1.0, 1.0}}};
    const Series series = generate_series(spec, 42);
    const ChangePointResult result = divisive_detect(series, default_config(4));
    CHECK(result.change_points.empty());
    REQUIRE(result.tests.size() == 1);
    CHECK_FALSE(result.tests[0].accepted);
}

TEST_CASE("divisive_detect recovers two 4-sigma shifts") {
    const std::vector<SegmentSpec> specs{
        {70, Family::gaussian, {0.0, 0.0}, {1.0, 1.0}},
        {70, Family::gaussian, {4.0, 4.0}, {1.0, 1.0}},
        {70, Family::gaussian, {0.0, 0.0}, {1.0, 1.0}},
    };
    const Series series = generate_series(specs, 2025);
    const ChangePointResult result = divisive_detect(series, default_config(2));
    REQUIRE(result.change_points.size() == 2);
    CHECK(std::abs(static_cast<long>(result.change_points[0]) - 70L) <= 10);
    CHECK(std::abs(static_cast<long>(result.change_points[1]) - 140L) <= 10);
}

TEST_CASE("divisive_detect is deterministic") {
    const Series series = gaussian_shift_series(60, 60, 1.0, 77);
    const DetectConfig cfg = default_config(5);
    const ChangePointResult a = divisive_detect(series, cfg);
    const ChangePointResult b = divisive_detect(series, cfg);
    CHECK(a.change_points == b.change_points);
    REQUIRE(a.tests.size() == b.tests.size());
    for (std::size_t i = 0; i < a.tests.size(); ++i) {
        CHECK(a.tests[i].index == b.tests[i].index);
        CHECK(a.tests[i].q_value == b.tests[i].q_value);
        CHECK(a.tests[i].p_value == b.tests[i].p_value);
    }
}

TEST_CASE("divisive results respect spacing and p-value lattice") {
    const std::vector<SegmentSpec> specs{
        {50, Family::gaussian, {0.0}, {1.0}},
        {50, Family::gaussian, {3.0}, {1.0}},
        {50, Family::gaussian, {-3.0}, {1.0}},
        {50, Family::gaussian, {1.5}, {1.0}},
    };
    const Series series = generate_series(specs, 8);
    DetectConfig cfg = default_config(8);
    cfg.min_size = 5;
    const ChangePointResult result = divisive_detect(series, cfg);

    const std::size_t t = series.rows();
    for (std::size_t i = 0; i < result.change_points.size(); ++i) {
        const std::size_t cp = result.change_points[i];
        CHECK(cp >= cfg.min_size);
        CHECK(cp <= t - cfg.min_size);
        if (i > 0) CHECK(cp - result.change_points[i - 1] >= cfg.min_size);
    }
    for (const auto& test : result.tests) {
        const double scaled = test.p_value * 200.0;
        CHECK(std::abs(scaled - std::round(scaled)) <= 1e-9);
        CHECK(test.p_value >= 0.005);
        CHECK(test.p_value <= 1.0);
    }
}

TEST_CASE("divisive_detect honors the change point cap") {
    const std::vector<SegmentSpec> specs{
        {60, Family::gaussian, {0.0}, {1.0}},
        {60, Family::gaussian, {5.0}, {1.0}},
        {60, Family::gaussian, {0.0}, {1.0}},
    };
    const Series series = generate_series(specs, 3);
    DetectConfig cfg = default_config(3);
    cfg.max_change_points = 1;
    const ChangePointResult result = divisive_detect(series, cfg);
    CHECK(result.change_points.size() == 1);
}

TEST_CASE("divisive_detect validates input") {
    const Series tiny(3, 1, {1, 2, 3});
    CHECK_THROWS_AS(divisive_detect(tiny, default_config()), std::invalid_argument);
    DetectConfig bad = default_config();
    bad.min_size = 1; // ustat needs 2 per side
    CHECK_THROWS_AS(divisive_detect(step_series_8(), bad), std::invalid_argument);
}

TEST_CASE("goodness_of_fit on the step series") {
    const Series series = step_series_8();
    const DetectConfig cfg = default_config();
    const double split_at_truth = goodness_of_fit(series, {{0, 4}, {4, 8}}, cfg);
    CHECK(std::abs(split_at_truth - 7.0 / 6.0) <= 1e-12);

    const double misaligned = goodness_of_fit(series, {{0, 2}, {2, 6}, {6, 8}}, cfg);
    CHECK(split_at_truth > misaligned);
}

TEST_CASE("goodness_of_fit of constant data is zero") {
    const Series series(12, 1, std::vector<double>(12, 2.0));
    CHECK(goodness_of_fit(series, {{0, 4}, {4, 8}, {8, 12}}, default_config()) == 0.0);
}

TEST_CASE("goodness_of_fit rejects bad clusterings") {
    const Series series = step_series_8();
    const DetectConfig cfg = default_config();
    CHECK_THROWS_AS(goodness_of_fit(series, {{0, 4}, {5, 8}}, cfg), std::invalid_argument);
    CHECK_THROWS_AS(goodness_of_fit(series, {{0, 4}, {2, 8}}, cfg), std::invalid_argument);
    CHECK_THROWS_AS(goodness_of_fit(series, {{0, 4}}, cfg), std::invalid_argument); // no cover
    CHECK_THROWS_AS(goodness_of_fit(series, {{0, 7}, {7, 8}}, cfg), std::invalid_argument);
    CHECK_THROWS_AS(goodness_of_fit(series, {}, cfg), std::invalid_argument);
}

TEST_CASE("legal_merges lists adjacent pairs") {
    using Pairs = std::vector<std::pair<std::size_t, std::size_t>>;
    CHECK(legal_merges({{0, 3}, {3, 6}, {6, 9}}) == Pairs{{0, 1}, {1, 2}});
    CHECK(legal_merges({{0, 9}}) == Pairs{});
    CHECK(legal_merges({{0, 4}, {4, 9}}) == Pairs{{0, 1}});
    CHECK_THROWS_AS(legal_merges({{0, 3}, {4, 9}}), std::invalid_argument);
}

TEST_CASE("agglomerative_detect on the step series") {
    const auto [result, trace] = agglomerative_detect(step_series_8(), 2, default_config());
    CHECK(result.change_points == std::vector<std::size_t>{4});
    CHECK(trace.initial_boundaries == std::vector<std::size_t>{2, 4, 6});
    REQUIRE(trace.steps.size() == 3);
    CHECK(std::abs(trace.best_s() - 7.0 / 6.0) <= 1e-12);
    CHECK(trace.boundaries_at(trace.best_step) == std::vector<std::size_t>{4});
    REQUIRE(result.boundary_q.size() == 1);
    CHECK(std::abs(result.boundary_q[0] - 7.0 / 6.0) <= 1e-12);
}

TEST_CASE("agglomerative_detect collapses constant data to one cluster") {
    const Series series(12, 1, std::vector<double>(12, -1.0));
    const auto [result, trace] = agglomerative_detect(series, 3, default_config());
    CHECK(result.change_points.empty());
    CHECK(trace.initial_s == 0.0);
    for (std::size_t k = 0; k <= trace.steps.size(); ++k) CHECK(trace.s_at(k) == 0.0);
    CHECK(trace.best_step == trace.steps.size());
    CHECK(trace.boundaries_at(trace.best_step).empty());
}

TEST_CASE("agglomerative_detect recovers a block-aligned shift") {
    const Series series = gaussian_shift_series(100, 100, 5.0, 1001);
    const auto [result, trace] = agglomerative_detect(series, 10, default_config());
    CHECK(result.change_points == std::vector<std::size_t>{100});
    CHECK(trace.steps.size() == 19);
}

TEST_CASE("agglomerative trace is a valid merging sequence") {
    const Series series = testutil::random_series(57, 2, 12345, -1.0, 1.0);
    const auto [result, trace] = agglomerative_detect(series, 5, default_config());
    const std::size_t k0 = 57 / 5;
    CHECK(trace.steps.size() == k0 - 1);

    std::vector<std::size_t> prev = trace.initial_boundaries;
    for (const auto& step : trace.steps) {
        CHECK(step.boundaries.size() == prev.size() - 1);
        CHECK(std::is_sorted(step.boundaries.begin(), step.boundaries.end()));
        // Each merge removes exactly one boundary and keeps the rest.
        CHECK(std::includes(prev.begin(), prev.end(), step.boundaries.begin(),
                            step.boundaries.end()));
        for (const std::size_t b : step.boundaries) {
            CHECK(b > 0);
            CHECK(b < 57);
        }
        prev = step.boundaries;
    }

    double max_s = trace.initial_s;
    for (const auto& step : trace.steps) max_s = std::max(max_s, step.s_value);
    CHECK(trace.best_s() == max_s);

    // The recorded value is reproducible from the returned clustering.
    std::vector<Segment> clusters;
    std::size_t start = 0;
    for (const std::size_t b : trace.boundaries_at(trace.best_step)) {
        clusters.push_back({start, b});
        start = b;
    }
    clusters.push_back({start, 57});
    if (clusters.size() > 1)
        CHECK(std::abs(goodness_of_fit(series, clusters, default_config()) - trace.best_s()) <=
              1e-9);
}

TEST_CASE("agglomerative_detect validates the block size") {
    const Series series = step_series_8();
    CHECK_THROWS_AS(agglomerative_detect(series, 1, default_config()), std::invalid_argument);
    CHECK_THROWS_AS(agglomerative_detect(series, 5, default_config()), std::invalid_argument);
    DetectConfig vstat = default_config();
    vstat.energy.variant = EnergyVariant::vstat;
    vstat.min_size = 1;
    CHECK_NOTHROW(agglomerative_detect(series, 1, vstat));
}

TEST_CASE("divisive and agglomerative agree on the step series") {
    const ChangePointResult divisive = divisive_detect(step_series_8(), default_config(1));
    const auto [agglomerative, trace] = agglomerative_detect(step_series_8(), 2, default_config());
    CHECK(divisive.change_points == std::vector<std::size_t>{4});
    CHECK(agglomerative.change_points == divisive.change_points);
}
