#include "rankcp/segmentation.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <stdexcept>

#include "rankcp/ranks.hpp"
#include "rankcp/rng.hpp"

namespace rankcp {

namespace {

double alpha_distance(const double* p, const double* q, std::size_t dim, double alpha) {
    double sq = 0.0;
    for (std::size_t k = 0; k < dim; ++k) {
        const double diff = p[k] - q[k];
        sq += diff * diff;
    }
    if (alpha == 1.0) return std::sqrt(sq);
    if (alpha == 2.0) return sq;
    return std::pow(sq, 0.5 * alpha);
}

/// Pairwise alpha-powered distances between the rank vectors of one
/// segment. Ranks are fixed per segment, so every tau candidate and
/// every permutation replicate reads the same matrix.
struct SegmentContext {
    std::size_t n = 0;
    bool constant = false;      // all pooled points identical: divergence 0 throughout
    std::vector<double> dist;   // n * n, symmetric, zero diagonal

    double at(std::size_t i, std::size_t j) const { return dist[i * n + j]; }
};

SegmentContext make_context(const Series& series, Segment seg, const DetectConfig& cfg) {
    SegmentContext ctx;
    ctx.n = seg.length();
    const PointsView pooled = series.rows_view(seg.start, seg.end);
    if (all_points_identical(pooled)) {
        ctx.constant = true;
        return ctx;
    }
    const UnitGrid grid = make_grid(ctx.n, series.cols(), cfg.grid);
    const RankMap map = compute_rank_map(pooled, grid);
    const std::size_t d = map.dim();
    ctx.dist.assign(ctx.n * ctx.n, 0.0);
    for (std::size_t i = 0; i < ctx.n; ++i) {
        for (std::size_t j = i + 1; j < ctx.n; ++j) {
            const double v =
                alpha_distance(map.ranks.data() + i * d, map.ranks.data() + j * d, d, cfg.energy.alpha);
            ctx.dist[i * ctx.n + j] = v;
            ctx.dist[j * ctx.n + i] = v;
        }
    }
    return ctx;
}

double divergence_from_sums(double s_cross, double s_xx, double s_yy, std::size_t m, std::size_t n,
                            EnergyVariant variant) {
    const double dm = static_cast<double>(m);
    const double dn = static_cast<double>(n);
    const double between = 2.0 * s_cross / (dm * dn);
    double within_x;
    double within_y;
    if (variant == EnergyVariant::ustat) {
        within_x = s_xx / (0.5 * dm * (dm - 1.0));
        within_y = s_yy / (0.5 * dn * (dn - 1.0));
    } else {
        within_x = 2.0 * s_xx / (dm * dm);
        within_y = 2.0 * s_yy / (dn * dn);
    }
    return between - within_x - within_y;
}

/// Sweep tau over [min_size, n - min_size] for the point order given by
/// `order`, maintaining the cross/within sums incrementally as one point
/// at a time moves from the right part to the left. Ties resolve to the
/// smallest tau.
SplitStatistic sweep_best_tau(const SegmentContext& ctx, std::span<const std::uint32_t> order,
                              std::size_t min_size, EnergyVariant variant) {
    const std::size_t n = ctx.n;
    if (ctx.constant) return {min_size, n, 0.0, 0.0};

    double s_xx = 0.0;
    double s_xy = 0.0;
    double s_yy = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) s_yy += ctx.at(order[i], order[j]);

    SplitStatistic best{0, n, 0.0, -std::numeric_limits<double>::infinity()};
    for (std::size_t t = 0; t + 1 < n; ++t) {
        const std::uint32_t p = order[t];
        double to_left = 0.0;
        for (std::size_t i = 0; i < t; ++i) to_left += ctx.at(order[i], p);
        double to_right = 0.0;
        for (std::size_t j = t + 1; j < n; ++j) to_right += ctx.at(p, order[j]);
        s_xx += to_left;
        s_yy -= to_right;
        s_xy += to_right - to_left;

        const std::size_t tau = t + 1;
        if (tau < min_size || n - tau < min_size) continue;
        const double e = divergence_from_sums(s_xy, s_xx, s_yy, tau, n - tau, variant);
        const double q = scaled_divergence(tau, n - tau, e);
        if (q > best.q_value) best = {tau, n, e, q};
    }
    return best;
}

bool better_split(const SplitStatistic& candidate, const SplitStatistic& incumbent) {
    if (candidate.q_value != incumbent.q_value) return candidate.q_value > incumbent.q_value;
    if (candidate.tau != incumbent.tau) return candidate.tau < incumbent.tau;
    return candidate.kappa < incumbent.kappa;
}

/// Full-sweep search over (tau, kappa): every pooled prefix of the
/// segment gets its own grid and rank map.
SplitStatistic best_split_prefixes(const Series& segment_rows, const DetectConfig& cfg) {
    const std::size_t len = segment_rows.rows();
    SplitStatistic best{cfg.min_size, 2 * cfg.min_size, 0.0,
                        -std::numeric_limits<double>::infinity()};
    bool have_best = false;
    for (std::size_t kappa = 2 * cfg.min_size; kappa <= len; ++kappa) {
        SegmentContext ctx = make_context(segment_rows, Segment{0, kappa}, cfg);
        SplitStatistic cand = sweep_best_tau(ctx, identity_permutation(kappa),
                                             cfg.min_size, cfg.energy.variant);
        cand.kappa = kappa;
        if (!have_best || better_split(cand, best)) {
            best = cand;
            have_best = true;
        }
    }
    return best;
}

Series permuted_rows(const Series& rows, std::span<const std::uint32_t> order) {
    Series out(rows.rows(), rows.cols());
    for (std::size_t i = 0; i < rows.rows(); ++i) {
        const auto src = rows.row(order[i]);
        for (std::size_t c = 0; c < rows.cols(); ++c) out.at(i, c) = src[c];
    }
    return out;
}

double permutation_test_impl(const Series& series, Segment segment, double observed_q,
                             const DetectConfig& cfg, const SegmentContext* ctx) {
    const std::size_t len = segment.length();
    std::size_t count_ge = 0;
    if (cfg.kappa_mode == KappaMode::segment_end) {
        // Permuting the observations permutes their ranks: the pooled
        // rank multiset is the whole grid either way, so each replicate
        // only re-sweeps the cached distance matrix in permuted order.
        for (std::size_t r = 1; r <= cfg.n_permutations; ++r) {
            SplitMix64 rng(cfg.seed, r);
            auto order = identity_permutation(len);
            shuffle(std::span<std::uint32_t>(order), rng);
            const SplitStatistic replicate =
                sweep_best_tau(*ctx, order, cfg.min_size, cfg.energy.variant);
            if (replicate.q_value >= observed_q) ++count_ge;
        }
    } else {
        const Series rows = series.slice(segment.start, segment.end);
        for (std::size_t r = 1; r <= cfg.n_permutations; ++r) {
            SplitMix64 rng(cfg.seed, r);
            auto order = identity_permutation(len);
            shuffle(std::span<std::uint32_t>(order), rng);
            const SplitStatistic replicate = best_split_prefixes(permuted_rows(rows, order), cfg);
            if (replicate.q_value >= observed_q) ++count_ge;
        }
    }
    return permutation_p_value(count_ge, cfg.n_permutations);
}

void check_segment(const Series& series, Segment segment, const DetectConfig& cfg) {
    if (segment.start >= segment.end || segment.end > series.rows())
        throw std::invalid_argument("segment out of range");
    if (segment.length() < 2 * cfg.min_size)
        throw std::invalid_argument("segment shorter than 2 * min_size");
}

/// Scaled divergence between two adjacent clusters, pooled and ranked
/// jointly.
double adjacent_q(const Series& series, Segment left, Segment right, const DetectConfig& cfg) {
    const std::size_t m = left.length();
    const std::size_t n = right.length();
    const PointsView pooled = series.rows_view(left.start, right.end);
    const UnitGrid grid = make_grid(m + n, series.cols(), cfg.grid);
    const double e = rank_energy(pooled, m, grid, cfg.energy);
    return scaled_divergence(m, n, e);
}

void check_clustering(const Series& series, const std::vector<Segment>& clusters,
                      const DetectConfig& cfg) {
    if (clusters.empty()) throw std::invalid_argument("clustering is empty");
    if (clusters.front().start != 0 || clusters.back().end != series.rows())
        throw std::invalid_argument("clustering does not cover the series");
    const std::size_t lo = cfg.energy.variant == EnergyVariant::ustat ? 2 : 1;
    for (std::size_t i = 0; i < clusters.size(); ++i) {
        if (clusters[i].start >= clusters[i].end)
            throw std::invalid_argument("empty cluster");
        if (clusters[i].length() < lo)
            throw std::invalid_argument("cluster too small for the energy variant");
        if (i > 0 && clusters[i].start != clusters[i - 1].end)
            throw std::invalid_argument("clustering is not contiguous");
    }
}

std::vector<std::size_t> internal_boundaries(const std::vector<Segment>& clusters) {
    std::vector<std::size_t> bounds;
    bounds.reserve(clusters.size() - 1);
    for (std::size_t i = 0; i + 1 < clusters.size(); ++i) bounds.push_back(clusters[i].end);
    return bounds;
}

} // namespace

void DetectConfig::validate() const {
    energy.validate();
    if (min_size < 1) throw std::invalid_argument("DetectConfig: min_size must be >= 1");
    if (energy.variant == EnergyVariant::ustat && min_size < 2)
        throw std::invalid_argument("DetectConfig: ustat requires min_size >= 2");
    if (n_permutations < 1) throw std::invalid_argument("DetectConfig: need at least 1 permutation");
    if (!(sig_level > 0.0) || !(sig_level < 1.0))
        throw std::invalid_argument("DetectConfig: sig_level must lie in (0, 1)");
}

std::vector<double> ChangePointResult::p_values() const {
    std::vector<double> out;
    out.reserve(tests.size());
    for (const auto& t : tests) out.push_back(t.p_value);
    return out;
}

std::vector<double> ChangePointResult::statistics() const {
    if (!tests.empty()) {
        std::vector<double> out;
        out.reserve(tests.size());
        for (const auto& t : tests) out.push_back(t.q_value);
        return out;
    }
    return boundary_q;
}

SplitStatistic best_split(const Series& series, Segment segment, const DetectConfig& cfg) {
    cfg.validate();
    check_segment(series, segment, cfg);
    if (cfg.kappa_mode == KappaMode::full_sweep)
        return best_split_prefixes(series.slice(segment.start, segment.end), cfg);
    const SegmentContext ctx = make_context(series, segment, cfg);
    return sweep_best_tau(ctx, identity_permutation(segment.length()), cfg.min_size,
                          cfg.energy.variant);
}

double permutation_test(const Series& series, Segment segment, const SplitStatistic& observed,
                        const DetectConfig& cfg) {
    cfg.validate();
    check_segment(series, segment, cfg);
    if (cfg.kappa_mode == KappaMode::full_sweep)
        return permutation_test_impl(series, segment, observed.q_value, cfg, nullptr);
    const SegmentContext ctx = make_context(series, segment, cfg);
    return permutation_test_impl(series, segment, observed.q_value, cfg, &ctx);
}

ChangePointResult divisive_detect(const Series& series, const DetectConfig& cfg) {
    cfg.validate();
    if (series.rows() < 2 * cfg.min_size)
        throw std::invalid_argument("divisive_detect: series shorter than 2 * min_size");

    ChangePointResult result;
    result.config = cfg;
    std::deque<Segment> worklist{Segment{0, series.rows()}};
    while (!worklist.empty()) {
        if (cfg.max_change_points && result.change_points.size() >= *cfg.max_change_points) break;
        const Segment segment = worklist.front();
        worklist.pop_front();

        SplitStatistic observed;
        double p;
        if (cfg.kappa_mode == KappaMode::segment_end) {
            const SegmentContext ctx = make_context(series, segment, cfg);
            observed = sweep_best_tau(ctx, identity_permutation(segment.length()), cfg.min_size,
                                      cfg.energy.variant);
            p = permutation_test_impl(series, segment, observed.q_value, cfg, &ctx);
        } else {
            observed = best_split_prefixes(series.slice(segment.start, segment.end), cfg);
            p = permutation_test_impl(series, segment, observed.q_value, cfg, nullptr);
        }

        const bool accepted = p <= cfg.sig_level;
        const std::size_t cut = segment.start + observed.tau;
        result.tests.push_back(SplitTest{cut, observed.q_value, p, accepted});
        if (accepted) {
            result.change_points.push_back(cut);
            if (cut - segment.start >= 2 * cfg.min_size) worklist.push_back(Segment{segment.start, cut});
            if (segment.end - cut >= 2 * cfg.min_size) worklist.push_back(Segment{cut, segment.end});
        }
    }
    std::sort(result.change_points.begin(), result.change_points.end());
    return result;
}

double goodness_of_fit(const Series& series, const std::vector<Segment>& clusters,
                       const DetectConfig& cfg) {
    cfg.validate();
    check_clustering(series, clusters, cfg);
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < clusters.size(); ++i)
        total += adjacent_q(series, clusters[i], clusters[i + 1], cfg);
    return total;
}

std::vector<std::pair<std::size_t, std::size_t>> legal_merges(const std::vector<Segment>& clusters) {
    for (std::size_t i = 1; i < clusters.size(); ++i)
        if (clusters[i].start != clusters[i - 1].end)
            throw std::invalid_argument("legal_merges: clustering is not contiguous");
    std::vector<std::pair<std::size_t, std::size_t>> merges;
    if (clusters.size() < 2) return merges;
    merges.reserve(clusters.size() - 1);
    for (std::size_t i = 0; i + 1 < clusters.size(); ++i) merges.emplace_back(i, i + 1);
    return merges;
}

std::pair<ChangePointResult, MergeTrace> agglomerative_detect(const Series& series,
                                                              std::size_t initial_block,
                                                              const DetectConfig& cfg) {
    cfg.validate();
    const std::size_t T = series.rows();
    const std::size_t lo = cfg.energy.variant == EnergyVariant::ustat ? 2 : 1;
    if (initial_block < lo)
        throw std::invalid_argument("agglomerative_detect: initial_block too small for the variant");
    if (T < 2 * initial_block)
        throw std::invalid_argument("agglomerative_detect: series shorter than 2 * initial_block");

    // Consecutive blocks; the last one absorbs the remainder.
    const std::size_t k0 = T / initial_block;
    std::vector<Segment> clusters;
    clusters.reserve(k0);
    for (std::size_t i = 0; i < k0; ++i)
        clusters.push_back(Segment{i * initial_block,
                                   i + 1 == k0 ? T : (i + 1) * initial_block});

    std::vector<double> q(k0 - 1);
    for (std::size_t i = 0; i + 1 < clusters.size(); ++i)
        q[i] = adjacent_q(series, clusters[i], clusters[i + 1], cfg);

    MergeTrace trace;
    trace.initial_boundaries = internal_boundaries(clusters);
    double s_current = 0.0;
    for (const double v : q) s_current += v;
    trace.initial_s = s_current;

    while (clusters.size() > 1) {
        const std::size_t pairs = clusters.size() - 1;
        std::size_t best_j = 0;
        double best_s = -std::numeric_limits<double>::infinity();
        double best_left_q = 0.0;
        double best_right_q = 0.0;
        for (std::size_t j = 0; j < pairs; ++j) {
            const Segment merged{clusters[j].start, clusters[j + 1].end};
            double candidate = s_current - q[j];
            double left_q = 0.0;
            double right_q = 0.0;
            if (j > 0) {
                left_q = adjacent_q(series, clusters[j - 1], merged, cfg);
                candidate += left_q - q[j - 1];
            }
            if (j + 1 < pairs) {
                right_q = adjacent_q(series, merged, clusters[j + 2], cfg);
                candidate += right_q - q[j + 1];
            }
            if (candidate > best_s) {
                best_s = candidate;
                best_j = j;
                best_left_q = left_q;
                best_right_q = right_q;
            }
        }

        clusters[best_j].end = clusters[best_j + 1].end;
        clusters.erase(clusters.begin() + static_cast<std::ptrdiff_t>(best_j + 1));
        if (best_j > 0) q[best_j - 1] = best_left_q;
        if (best_j < q.size() - 1) q[best_j] = best_right_q;
        q.erase(q.begin() + static_cast<std::ptrdiff_t>(
                    best_j < q.size() - 1 ? best_j + 1 : best_j));
        s_current = 0.0;
        for (const double v : q) s_current += v;

        trace.steps.push_back(MergeStep{best_j, internal_boundaries(clusters), s_current});
    }

    // Maximal recorded goodness of fit; ties resolve toward the latest
    // entry, i.e. the fewest clusters.
    trace.best_step = 0;
    for (std::size_t k = 1; k <= trace.steps.size(); ++k)
        if (trace.s_at(k) >= trace.best_s()) trace.best_step = k;

    ChangePointResult result;
    result.config = cfg;
    result.change_points = trace.boundaries_at(trace.best_step);
    result.boundary_q.reserve(result.change_points.size());
    std::size_t prev = 0;
    for (std::size_t b = 0; b < result.change_points.size(); ++b) {
        const std::size_t cut = result.change_points[b];
        const std::size_t next =
            b + 1 < result.change_points.size() ? result.change_points[b + 1] : T;
        result.boundary_q.push_back(
            adjacent_q(series, Segment{prev, cut}, Segment{cut, next}, cfg));
        prev = cut;
    }
    return {std::move(result), std::move(trace)};
}

} // namespace rankcp
