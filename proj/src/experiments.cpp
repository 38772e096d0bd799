#include "cluvalid/experiments.hpp"

#include <algorithm>
#include <array>
#include <bitset>
#include <set>
#include <cmath>
#include <stdexcept>

#include "cluvalid/enumeration.hpp"

namespace cluvalid {

namespace {

Partition partition_from_spec(const ClusterSizeSpec& spec) {
    std::vector<int> labels;
    labels.reserve(static_cast<size_t>(spec.n()));
    for (size_t c = 0; c < spec.sizes.size(); ++c)
        labels.insert(labels.end(), static_cast<size_t>(spec.sizes[c]), static_cast<int>(c));
    return Partition::from_labels(labels);
}

}  // namespace

Partition fixture_reference() {
    // 305 singletons plus 126 clusters of size >= 2 summing to 619
    SeededGenerator gen(0xC1BAF1D5u);
    std::vector<int> sizes(126, 2);
    int extra = 619 - 126 * 2;
    while (extra > 0) {
        ++sizes[gen.uniform_below(sizes.size())];
        --extra;
    }
    sizes.insert(sizes.end(), 305, 1);
    return partition_from_spec(ClusterSizeSpec(std::move(sizes)));
}

namespace {

std::vector<ExperimentCurve> run_scan(const Partition& reference, std::span<const double> xs,
                                      std::span<const ClusterSizeSpec> specs, int samples,
                                      std::span<const IndexId> ids, uint64_t seed, int mc_samples,
                                      const std::string& sweep) {
    if (samples < 1) throw std::invalid_argument("samples must be positive");
    SamplingConfig cfg;
    cfg.mode = SamplingConfig::Mode::MonteCarlo;
    cfg.samples = mc_samples;
    cfg.seed = seed;
    Evaluator ev(cfg);

    std::vector<ExperimentCurve> curves(ids.size());
    for (size_t ii = 0; ii < ids.size(); ++ii) {
        curves[ii].index = ids[ii];
        curves[ii].sweep = sweep;
        curves[ii].seed = seed;
    }

    const SeededGenerator master(seed);
    for (size_t xi = 0; xi < xs.size(); ++xi) {
        SeededGenerator sub = master.substream(xi);
        std::vector<std::vector<double>> values(ids.size());
        for (int s = 0; s < samples; ++s) {
            const Partition b = sample_uniform_with_sizes(specs[xi], sub);
            for (size_t ii = 0; ii < ids.size(); ++ii) {
                const IndexScore sc = ev.eval(ids[ii], reference, b);
                if (sc.defined()) values[ii].push_back(*sc.value);
            }
        }
        for (size_t ii = 0; ii < ids.size(); ++ii) {
            auto& v = values[ii];
            ExperimentPoint pt;
            pt.x = xs[xi];
            pt.samples = static_cast<int64_t>(v.size());
            if (!v.empty()) {
                double sum = 0;
                for (double y : v) sum += y;
                pt.mean = sum / static_cast<double>(v.size());
                double ss = 0;
                for (double y : v) ss += (y - pt.mean) * (y - pt.mean);
                pt.stderr_mean = v.size() > 1
                                     ? std::sqrt(ss / static_cast<double>(v.size() - 1) /
                                                 static_cast<double>(v.size()))
                                     : 0.0;
                std::sort(v.begin(), v.end());
                auto rank = [&](double q) {
                    const auto pos = static_cast<size_t>(
                        std::llround(q * static_cast<double>(v.size() - 1)));
                    return v[std::min(pos, v.size() - 1)];
                };
                pt.q05 = rank(0.05);
                pt.q95 = rank(0.95);
            }
            curves[ii].points.push_back(pt);
        }
    }
    return curves;
}

}  // namespace

std::vector<ExperimentCurve> experiment_k_scan(const Partition& reference, std::span<const int> ks,
                                               int samples, std::span<const IndexId> ids,
                                               uint64_t seed, int mc_samples) {
    std::vector<double> xs;
    std::vector<ClusterSizeSpec> specs;
    for (int k : ks) {
        if (k < 1 || k > reference.n()) throw std::invalid_argument("k out of range");
        xs.push_back(k);
        specs.push_back(balanced_sizes(reference.n(), k));
    }
    return run_scan(reference, xs, specs, samples, ids, seed, mc_samples, "k");
}

std::vector<ExperimentCurve> experiment_s_scan(const Partition& reference,
                                               std::span<const int> s_values, int samples,
                                               std::span<const IndexId> ids, uint64_t seed,
                                               int mc_samples) {
    const int n = reference.n();
    std::vector<double> xs;
    std::vector<ClusterSizeSpec> specs;
    for (int s : s_values) {
        if (s < 1 || 31 * s >= n) throw std::invalid_argument("infeasible small-cluster size");
        std::vector<int> sizes(31, s);
        sizes.push_back(n - 31 * s);
        xs.push_back(s);
        specs.push_back(ClusterSizeSpec(std::move(sizes)));
    }
    return run_scan(reference, xs, specs, samples, ids, seed, mc_samples, "s");
}

BaselineSuiteResult baseline_suite(std::span<const IndexId> ids, std::span<const int> n_values,
                                   int r, uint64_t seed, int mc_samples) {
    SamplingConfig cfg;
    cfg.mode = SamplingConfig::Mode::MonteCarlo;
    cfg.samples = mc_samples;
    cfg.seed = seed;
    Evaluator ev(cfg);

    BaselineSuiteResult result;
    const SeededGenerator master(seed);
    std::vector<std::vector<double>> anova_ps(ids.size()), selection_ps(ids.size());

    for (size_t ni = 0; ni < n_values.size(); ++ni) {
        const int n = n_values[ni];
        const int k_ref = static_cast<int>(std::floor(std::sqrt(static_cast<double>(n))));
        const Partition reference = partition_from_spec(balanced_sizes(n, k_ref));
        const std::array<ClusterSizeSpec, 3> specs = {
            balanced_sizes(n, std::max(2, static_cast<int>(std::floor(std::pow(n, 0.25))))),
            balanced_sizes(n, k_ref),
            balanced_sizes(n, static_cast<int>(std::floor(std::pow(n, 0.75)))),
        };
        // streams keyed by (n, test kind) only: every index is tested on the
        // same candidate draws, and results do not depend on the index list
        const SeededGenerator anova_gen = master.substream(2 * ni);
        const SeededGenerator selection_gen = master.substream(2 * ni + 1);
        for (size_t ii = 0; ii < ids.size(); ++ii) {
            BaselineSuiteRow row;
            row.index = ids[ii];
            row.n = n;
            for (const auto& s : specs) row.spec_ks.push_back(s.k());
            row.anova = anova_baseline_test(ids[ii], reference, specs, r, anova_gen, ev);
            row.selection = chisq_selection_bias_test(ids[ii], reference, specs, r, selection_gen, ev);
            row.anova.seed = seed;  // report the user-facing master seed
            row.selection.seed = seed;
            // tail probabilities can underflow to zero; clamp so Fisher's
            // method stays defined (the decision is unaffected)
            if (row.anova.ok()) anova_ps[ii].push_back(std::max(row.anova.p_value, 1e-300));
            if (row.selection.ok())
                selection_ps[ii].push_back(std::max(row.selection.p_value, 1e-300));
            result.rows.push_back(std::move(row));
        }
    }
    for (size_t ii = 0; ii < ids.size(); ++ii) {
        BaselineSuiteResult::Combined c;
        c.index = ids[ii];
        if (!anova_ps[ii].empty()) {
            c.anova_p = fisher_combine(anova_ps[ii]);
            c.anova_reject = c.anova_p < 0.05;
        }
        if (!selection_ps[ii].empty()) {
            c.selection_p = fisher_combine(selection_ps[ii]);
            c.selection_reject = c.selection_p < 0.05;
        }
        result.combined.push_back(c);
    }
    return result;
}

TripletScores score_triplet(const Partition& a, const Partition& b1, const Partition& b2,
                            std::span<const IndexId> ids, Evaluator& ev) {
    TripletScores t;
    t.a = a;
    t.b1 = b1;
    t.b2 = b2;
    t.ids.assign(ids.begin(), ids.end());
    t.s1.reserve(ids.size());
    t.s2.reserve(ids.size());
    for (IndexId id : ids) {
        t.s1.push_back(ev.eval(id, a, b1));
        t.s2.push_back(ev.eval(id, a, b2));
    }
    return t;
}

int preference(const IndexDescriptor& d, const IndexScore& s1, const IndexScore& s2, double tol) {
    if (!s1.defined() || !s2.defined()) return 0;
    const double delta = oriented(d, *s1.value) - oriented(d, *s2.value);
    if (delta > tol) return 1;
    if (delta < -tol) return -1;
    return 0;
}

double InconsistencyStats::pct(size_t i, size_t j) const {
    const int64_t c = at(consistent, i, j), x = at(inconsistent, i, j);
    if (c + x == 0) return std::numeric_limits<double>::quiet_NaN();
    return 100.0 * static_cast<double>(x) / static_cast<double>(c + x);
}

InconsistencyStats aggregate_inconsistency(std::span<const TripletScores> triplets) {
    InconsistencyStats stats;
    if (triplets.empty()) return stats;
    stats.ids = triplets.front().ids;
    const size_t k = stats.ids.size();
    stats.consistent.assign(k * k, 0);
    stats.inconsistent.assign(k * k, 0);
    stats.ties.assign(k * k, 0);
    for (const auto& t : triplets) {
        std::vector<int> prefs(k);
        for (size_t i = 0; i < k; ++i)
            prefs[i] = preference(descriptor(t.ids[i]), t.s1[i], t.s2[i]);
        for (size_t i = 0; i < k; ++i) {
            for (size_t j = i + 1; j < k; ++j) {
                auto bump = [&](std::vector<int64_t>& m) {
                    ++m[i * k + j];
                    ++m[j * k + i];
                };
                if (prefs[i] == 0 || prefs[j] == 0)
                    bump(stats.ties);
                else if (prefs[i] == prefs[j])
                    bump(stats.consistent);
                else
                    bump(stats.inconsistent);
            }
        }
    }
    return stats;
}

std::span<const IndexId> default_cover_indices() {
    static const std::vector<IndexId> ids = {
        IndexId::Nmi,    IndexId::NmiMax,       IndexId::Fnmi,
        IndexId::Vi,     IndexId::Ami,          IndexId::Rand,
        IndexId::AdjustedRand, IndexId::Jaccard, IndexId::Wallace1,
        IndexId::SokalSneath1, IndexId::CorrelationCoefficient,
        IndexId::FMeasure, IndexId::BCubed,
    };
    return ids;
}

namespace {

Partition random_partition(int n, SeededGenerator& gen) {
    const int k = 1 + static_cast<int>(gen.uniform_below(static_cast<uint64_t>(n)));
    std::vector<int> labels(static_cast<size_t>(n));
    for (auto& l : labels) l = static_cast<int>(gen.uniform_below(static_cast<uint64_t>(k)));
    return Partition::from_labels(labels);
}

}  // namespace

TripletCover find_inconsistency_cover(std::span<const IndexId> ids, int n_max, uint64_t seed,
                                      int64_t max_candidates, int target_size) {
    if (n_max < 3) throw std::invalid_argument("n_max too small for triplets");
    const size_t k = ids.size();
    if (k < 2) throw std::invalid_argument("need at least two indices");
    if (k > 16) throw std::invalid_argument("cover search supports up to 16 indices");

    // orderable pairs: drop linearly equivalent indices (order-preserving,
    // so no triplet can ever separate them)
    std::vector<std::pair<size_t, size_t>> pairs;
    TripletCover cover;
    for (size_t i = 0; i < k; ++i) {
        for (size_t j = i + 1; j < k; ++j) {
            if (descriptor(ids[i]).equivalence_rep == descriptor(ids[j]).equivalence_rep)
                cover.unorderable.emplace_back(ids[i], ids[j]);
            else
                pairs.emplace_back(i, j);
        }
    }
    using Mask = std::bitset<120>;
    Mask full;
    for (size_t p = 0; p < pairs.size(); ++p) full.set(p);

    SamplingConfig cfg;
    cfg.mode = SamplingConfig::Mode::ExactEnumeration;
    Evaluator ev(cfg);

    struct Candidate {
        Partition a, b1, b2;
        Mask mask;
    };
    std::vector<Candidate> picked;
    Mask covered;

    SeededGenerator gen(seed, 0xC0FFEE);
    auto evaluate_mask = [&](const Partition& a, const Partition& b1, const Partition& b2) {
        std::vector<int> prefs(k);
        for (size_t i = 0; i < k; ++i) {
            const auto& d = descriptor(ids[i]);
            prefs[i] = preference(d, ev.eval(ids[i], a, b1), ev.eval(ids[i], a, b2));
        }
        Mask m;
        for (size_t p = 0; p < pairs.size(); ++p) {
            const int pi = prefs[pairs[p].first], pj = prefs[pairs[p].second];
            if (pi != 0 && pj != 0 && pi != pj) m.set(p);
        }
        return m;
    };

    // pool of sampled candidates with distinct coverage masks, grown in
    // chunks; after each chunk, run greedy set cover once per forced first
    // pick among the widest masks, keeping the best cover seen
    std::vector<Candidate> pool;
    const int64_t chunk = 2000;
    int64_t produced = 0;
    std::vector<Candidate> best_pick;
    Mask best_covered;
    std::set<Mask, decltype([](const Mask& x, const Mask& y) {
                return x.to_string() < y.to_string();
            })>
        seen_masks;

    auto greedy_from = [&](size_t first) {
        std::vector<size_t> pick{first};
        Mask cov = pool[first].mask;
        while (cov != full) {
            size_t best = pool.size();
            size_t best_gain = 0;
            for (size_t i = 0; i < pool.size(); ++i) {
                const size_t gain = (pool[i].mask & ~cov).count();
                if (gain > best_gain) {
                    best_gain = gain;
                    best = i;
                }
            }
            if (best == pool.size()) break;
            cov |= pool[best].mask;
            pick.push_back(best);
        }
        if (cov.count() > best_covered.count() ||
            (cov == best_covered &&
             (best_pick.empty() || pick.size() < best_pick.size()))) {
            best_pick.clear();
            for (size_t i : pick) best_pick.push_back(pool[i]);
            best_covered = cov;
        }
    };

    while (produced < max_candidates) {
        for (int64_t c = 0; c < chunk && produced < max_candidates; ++c, ++produced) {
            const int n = 4 + static_cast<int>(gen.uniform_below(static_cast<uint64_t>(n_max - 3)));
            Partition a = random_partition(n, gen);
            Partition b1 = random_partition(n, gen);
            Partition b2 = random_partition(n, gen);
            Mask m = evaluate_mask(a, b1, b2);
            if (m.any() && seen_masks.insert(m).second)
                pool.push_back({std::move(a), std::move(b1), std::move(b2), std::move(m)});
        }
        // forced first picks: the widest masks make the best cover roots
        std::vector<size_t> order(pool.size());
        for (size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](size_t x, size_t y) {
            return pool[x].mask.count() > pool[y].mask.count();
        });
        const size_t roots = std::min<size_t>(order.size(), 64);
        for (size_t r = 0; r < roots; ++r) {
            greedy_from(order[r]);
            if (best_covered == full && static_cast<int>(best_pick.size()) <= target_size) break;
        }
        if (best_covered == full && static_cast<int>(best_pick.size()) <= target_size) break;
    }

    cover.examined = produced;
    covered.reset();
    for (const auto& cand : best_pick) {
        TripletCover::Entry e;
        e.a = cand.a;
        e.b1 = cand.b1;
        e.b2 = cand.b2;
        const Mask fresh = cand.mask & ~covered;
        for (size_t p = 0; p < pairs.size(); ++p)
            if (fresh.test(p)) e.newly_covered.emplace_back(ids[pairs[p].first], ids[pairs[p].second]);
        covered |= cand.mask;
        cover.triplets.push_back(std::move(e));
    }
    for (size_t p = 0; p < pairs.size(); ++p)
        if (!covered.test(p)) cover.uncovered.emplace_back(ids[pairs[p].first], ids[pairs[p].second]);
    cover.complete = cover.uncovered.empty();
    return cover;
}

}  // namespace cluvalid
