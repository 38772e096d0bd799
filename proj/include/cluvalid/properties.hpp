#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cluvalid/indices.hpp"
#include "cluvalid/partition.hpp"

namespace cluvalid {

enum class Property {
    MaxAgreement,
    MinAgreement,
    Symmetry,
    Distance,
    LinearComplexity,
    Monotonicity,
    StrongMonotonicity,
    ConstantBaselineExact,
    ConstantBaselineAsymptotic,
    Bias,
};

std::string_view property_name(Property p);

enum class Verdict { Holds, Violated, BiasClassified, Error };

/// Counterexample payload; which fields are set depends on the property.
struct Witness {
    std::vector<Partition> partitions;
    std::vector<std::array<int64_t, 4>> tallies;   // pair-count quadruples
    std::vector<double> values;                    // offending scores
    std::string note;
};

struct BiasClassification {
    bool pair_dec = false;
    bool pair_inc = false;
    struct GradientSample {
        double m_a, m_b, pair_total, derivative;
    };
    std::vector<GradientSample> witnesses;  // one per asserted direction
    std::string label() const;
};

struct PropertyVerdict {
    IndexId index = IndexId::Rand;
    Property property = Property::MaxAgreement;
    Verdict verdict = Verdict::Error;
    std::optional<Witness> witness;
    std::optional<double> constant;   // measured c_max / c_min / c_base
    std::optional<BiasClassification> bias;
    std::string bound;                // exhausted search bound
    long long skipped_undefined = 0;  // undefined evaluations skipped during the search
    std::string error;

    bool holds() const { return verdict == Verdict::Holds; }
};

struct CheckBudget {
    int n_max = 6;
    int n_max_sampled = 4;                 // bound for indices needing exact enumeration
    int strong_grid = 20;                  // quadruple scan: N11+N10+N01+N00 <= strong_grid
    int min_grid = 200;                    // same, for minimal agreement
    std::vector<double> grid_pair_totals{100.0, 10000.0};
    double tol = 1e-9;                     // equality tolerance for constants
    double strict_tol = 1e-12;             // improvements must exceed this to count as strict
    double derivative_step_rel = 1e-4;     // central-difference step, relative to N
    double derivative_threshold = 1e-8;
};

PropertyVerdict check_max_agreement(IndexId id, int n_max, Evaluator& ev);
PropertyVerdict check_min_agreement(IndexId id, int grid_n = 200);
PropertyVerdict check_symmetry(IndexId id, int n_max, Evaluator& ev);
PropertyVerdict check_distance(IndexId id, int n_max, Evaluator& ev);
PropertyVerdict check_monotonicity(IndexId id, int n_max, Evaluator& ev);
PropertyVerdict check_strong_monotonicity(IndexId id, int grid_bound = 20);
PropertyVerdict check_constant_baseline_exact(IndexId id, int n_max, Evaluator& ev);
PropertyVerdict check_asymptotic_baseline(IndexId id, const CheckBudget& budget = {});
BiasClassification classify_bias(IndexId id, const CheckBudget& budget = {});
PropertyVerdict linear_complexity_verdict(IndexId id);

/// Runs every applicable checker for every index; one row per (index,
/// property). Per-cell errors are recorded, never aborting the matrix.
std::vector<PropertyVerdict> property_matrix(std::span<const IndexId> ids,
                                             const CheckBudget& budget = {});

}  // namespace cluvalid
