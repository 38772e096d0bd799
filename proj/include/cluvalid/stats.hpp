#pragma once

#include <span>
#include <string>
#include <vector>

#include "cluvalid/indices.hpp"
#include "cluvalid/partition.hpp"
#include "cluvalid/rng.hpp"
#include "cluvalid/sampling.hpp"

namespace cluvalid {

// Tail probabilities are computed from scratch via the regularized
// incomplete gamma/beta functions (series + Lentz continued fractions),
// relative error around 1e-12 on the tested ranges.
double regularized_gamma_p(double a, double x);
double regularized_gamma_q(double a, double x);
double regularized_beta(double a, double b, double x);
double chi_squared_sf(double x, double df);
double f_sf(double f, double df1, double df2);

struct TestReport {
    enum class Kind { AnovaBaseline, ChisqSelection, FisherCombined };
    Kind kind = Kind::AnovaBaseline;
    IndexId index = IndexId::Rand;
    double statistic = 0;
    double p_value = 1;
    bool reject = false;  // decision at alpha = 0.05
    int groups = 0;
    int replicates = 0;
    uint64_t seed = 0;
    int64_t ties = 0;                 // selection test: tie-broken pools
    long long skipped_undefined = 0;  // dropped undefined scores
    std::string error;                // set when the statistic is undefined

    bool ok() const { return error.empty(); }
};

/// One-way ANOVA of index scores across candidate size specs: draws r
/// clusterings per spec, scores them against the reference, and tests the
/// null that the group means are equal.
TestReport anova_baseline_test(IndexId id, const Partition& reference,
                               std::span<const ClusterSizeSpec> specs, int r,
                               const SeededGenerator& gen, Evaluator& ev);

/// Selection-bias test: r pools with one draw per spec; tallies which spec
/// wins (direction-aware argmax, ties to the lowest spec and counted) and
/// tests the win counts against uniform with the chi-squared test.
TestReport chisq_selection_bias_test(IndexId id, const Partition& reference,
                                     std::span<const ClusterSizeSpec> specs, int r,
                                     const SeededGenerator& gen, Evaluator& ev);

/// Fisher's method: -2 Σ ln p_i against chi-squared with 2m degrees of
/// freedom. All p must lie in (0, 1].
double fisher_combine(std::span<const double> p_values);

struct CdDeviation {
    double deviation = 0;       // E[CD(A,B)] - 1/2 over B ~ C(s)
    double series = 0;          // odd-moment arccos series, truncated at k <= 5
    double mc_stderr = 0;       // 0 in exact mode
    int64_t samples = 0;
    bool exact = false;
};

/// Requires a nontrivial reference and a size spec with 1 < k < n.
CdDeviation estimate_cd_deviation(const Partition& reference, const ClusterSizeSpec& s,
                                  const SamplingConfig& cfg);

}  // namespace cluvalid
