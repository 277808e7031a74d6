#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "rankcp/energy.hpp"
#include "rankcp/grid.hpp"
#include "rankcp/series.hpp"

namespace rankcp {

/// Half-open index range [start, end) into an observation series.
struct Segment {
    std::size_t start = 0;
    std::size_t end = 0;

    std::size_t length() const { return end - start; }
    bool operator==(const Segment&) const = default;
};

/// Candidate-split search space: `segment_end` fixes the right endpoint
/// at the segment end (one rank map per segment); `full_sweep` also
/// sweeps the right endpoint over every pooled prefix, recomputing the
/// rank map each time (O(T^4), faithful to the displayed estimator).
enum class KappaMode { segment_end, full_sweep };

struct DetectConfig {
    EnergyConfig energy{};
    std::size_t min_size = 2;         // minimum observations per side; >= 5 recommended
    std::size_t n_permutations = 199; // replicates R of the significance test
    double sig_level = 0.05;
    KappaMode kappa_mode = KappaMode::segment_end;
    GridChoice grid = GridChoice::halton;
    std::uint64_t seed = 0;
    std::optional<std::size_t> max_change_points{};

    void validate() const; // throws std::invalid_argument
};

/// The best candidate split of one segment: tau points on the left,
/// right endpoint kappa (both relative to the segment start).
struct SplitStatistic {
    std::size_t tau = 0;
    std::size_t kappa = 0;
    double e_value = 0.0;
    double q_value = 0.0;
};

/// One permutation test performed during divisive detection.
struct SplitTest {
    std::size_t index = 0; // global boundary index
    double q_value = 0.0;
    double p_value = 1.0;
    bool accepted = false;
};

struct ChangePointResult {
    std::vector<std::size_t> change_points; // sorted global boundary indices
    std::vector<SplitTest> tests;           // divisive: every tested split, detection order
    std::vector<double> boundary_q;         // agglomerative: divergence per returned boundary
    DetectConfig config;

    std::vector<double> p_values() const;
    std::vector<double> statistics() const;
};

/// One greedy merge: the adjacent pair (merged_left, merged_left + 1)
/// was merged, leaving the recorded internal boundaries and
/// goodness-of-fit value.
struct MergeStep {
    std::size_t merged_left = 0;
    std::vector<std::size_t> boundaries;
    double s_value = 0.0;
};

/// The full agglomerative merging sequence. Entry k of the recorded
/// sequence is the initial clustering for k = 0 and steps[k-1] after
/// that; best_step indexes that sequence.
struct MergeTrace {
    std::vector<std::size_t> initial_boundaries;
    double initial_s = 0.0;
    std::vector<MergeStep> steps;
    std::size_t best_step = 0;

    double s_at(std::size_t k) const { return k == 0 ? initial_s : steps[k - 1].s_value; }
    const std::vector<std::size_t>& boundaries_at(std::size_t k) const {
        return k == 0 ? initial_boundaries : steps[k - 1].boundaries;
    }
    double best_s() const { return s_at(best_step); }
};

/// Exact permutation p-value with add-one smoothing:
/// (1 + #{replicates at least as extreme}) / (R + 1).
inline double permutation_p_value(std::size_t count_ge, std::size_t n_permutations) {
    return static_cast<double>(1 + count_ge) / static_cast<double>(n_permutations + 1);
}

/// Maximize the scaled divergence over candidate splits of one segment.
/// Ties resolve to the smallest tau (then smallest kappa).
SplitStatistic best_split(const Series& series, Segment segment, const DetectConfig& cfg);

/// Permutation significance test of an observed split statistic: R
/// uniformly permuted replicates of the segment, each re-maximized, and
/// compared against observed.q_value. Replicate r draws its stream from
/// (cfg.seed, r), so any evaluation order gives identical results.
double permutation_test(const Series& series, Segment segment, const SplitStatistic& observed,
                        const DetectConfig& cfg);

/// Divisive estimation: recursively split every segment whose best
/// split is significant, testing each hierarchically estimated change
/// point as it is found.
ChangePointResult divisive_detect(const Series& series, const DetectConfig& cfg);

/// Goodness of fit of a contiguous clustering: the sum of scaled rank
/// energy divergences over adjacent cluster pairs, each pair pooled and
/// ranked jointly.
double goodness_of_fit(const Series& series, const std::vector<Segment>& clusters,
                       const DetectConfig& cfg);

/// The merges that preserve time order: exactly the adjacent pairs.
std::vector<std::pair<std::size_t, std::size_t>> legal_merges(const std::vector<Segment>& clusters);

/// Agglomerative estimation: start from consecutive blocks of
/// initial_block observations (the last block absorbs the remainder),
/// greedily merge the adjacent pair that maximizes the resulting
/// goodness of fit, and return the clustering attaining the maximal
/// recorded value over the whole merging sequence.
std::pair<ChangePointResult, MergeTrace> agglomerative_detect(const Series& series,
                                                              std::size_t initial_block,
                                                              const DetectConfig& cfg);

} // namespace rankcp
