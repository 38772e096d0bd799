#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cluvalid/indices.hpp"
#include "cluvalid/partition.hpp"
#include "cluvalid/stats.hpp"

namespace cluvalid {

/// Synthetic stand-in for the production reference clustering: n = 924
/// elements in 431 clusters of which 305 are singletons, remaining sizes
/// drawn from a fixed seed.
Partition fixture_reference();

struct ExperimentPoint {
    double x = 0;             // sweep value (k or s)
    double mean = 0;
    double q05 = 0, q95 = 0;  // empirical 5%/95% quantiles
    double stderr_mean = 0;
    int64_t samples = 0;      // defined scores at this point
};

struct ExperimentCurve {
    IndexId index = IndexId::Rand;
    std::string sweep;  // "k" or "s"
    uint64_t seed = 0;
    std::vector<ExperimentPoint> points;
};

/// Scores `samples` random clusterings with sizes BS(n, k) against the
/// reference, per k.
std::vector<ExperimentCurve> experiment_k_scan(const Partition& reference, std::span<const int> ks,
                                               int samples, std::span<const IndexId> ids,
                                               uint64_t seed, int mc_samples = 10000);

/// Candidate sizes: 31 clusters of size s plus one cluster of n - 31s.
std::vector<ExperimentCurve> experiment_s_scan(const Partition& reference,
                                               std::span<const int> s_values, int samples,
                                               std::span<const IndexId> ids, uint64_t seed,
                                               int mc_samples = 10000);

struct BaselineSuiteRow {
    IndexId index = IndexId::Rand;
    int n = 0;
    std::vector<int> spec_ks;  // cluster counts of the candidate size specs
    TestReport anova;
    TestReport selection;
};

struct BaselineSuiteResult {
    std::vector<BaselineSuiteRow> rows;
    struct Combined {
        IndexId index = IndexId::Rand;
        double anova_p = 1, selection_p = 1;
        bool anova_reject = false, selection_reject = false;
    };
    std::vector<Combined> combined;  // Fisher-combined over the n values
};

/// For each n: reference with sizes BS(n, ⌊√n⌋) and candidate specs
/// BS(n, ⌊n^0.25⌋), BS(n, ⌊n^0.5⌋), BS(n, ⌊n^0.75⌋); ANOVA plus selection
/// test per index, Fisher-combined across n.
BaselineSuiteResult baseline_suite(std::span<const IndexId> ids, std::span<const int> n_values,
                                   int r, uint64_t seed, int mc_samples = 10000);

struct TripletScores {
    Partition a, b1, b2;
    std::vector<IndexId> ids;
    std::vector<IndexScore> s1, s2;  // scores of (a,b1) and (a,b2), aligned with ids
};

TripletScores score_triplet(const Partition& a, const Partition& b1, const Partition& b2,
                            std::span<const IndexId> ids, Evaluator& ev);

/// +1 if the first candidate is strictly preferred, -1 if the second,
/// 0 on a tie or an undefined score.
int preference(const IndexDescriptor& d, const IndexScore& s1, const IndexScore& s2,
               double tol = 1e-12);

struct InconsistencyStats {
    std::vector<IndexId> ids;
    std::vector<int64_t> consistent, inconsistent, ties;  // per unordered pair, flattened k*k

    int64_t at(const std::vector<int64_t>& m, size_t i, size_t j) const {
        return m[i * ids.size() + j];
    }
    /// Inconsistency percentage with ties excluded from the denominator.
    double pct(size_t i, size_t j) const;
};

InconsistencyStats aggregate_inconsistency(std::span<const TripletScores> triplets);

/// The paper's 13-index comparison set (Dice and CD dropped as monotone
/// duplicates of Jaccard and CC; SMI excluded for cost).
std::span<const IndexId> default_cover_indices();

struct TripletCover {
    struct Entry {
        Partition a, b1, b2;
        std::vector<std::pair<IndexId, IndexId>> newly_covered;
    };
    std::vector<Entry> triplets;
    std::vector<std::pair<IndexId, IndexId>> uncovered;  // orderable pairs still missing
    std::vector<std::pair<IndexId, IndexId>> unorderable;  // e.g. linearly equivalent pairs
    bool complete = false;
    int64_t examined = 0;
};

/// Randomized greedy cover search: samples candidate triplets on up to
/// n_max elements and greedily picks those covering the most new
/// inconsistent index pairs. Deterministic for a fixed seed and budget.
TripletCover find_inconsistency_cover(std::span<const IndexId> ids, int n_max, uint64_t seed,
                                      int64_t max_candidates, int target_size = 4);

}  // namespace cluvalid
