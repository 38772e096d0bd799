#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cluvalid/partition.hpp"
#include "cluvalid/rng.hpp"

namespace cluvalid {

enum class IndexId : int {
    // pair-counting
    Rand,
    AdjustedRand,
    Jaccard,
    JaccardDistance,
    Wallace1,
    Wallace2,
    Dice,
    CorrelationCoefficient,
    CorrelationDistance,
    SokalSneath1,
    Minkowski,
    Hubert,
    FowlkesMallows,
    SokalSneath2,
    NormalizedMirkin,
    Kulczynski,
    McConnaughey,
    Yule,
    Baulieu1,
    RussellRao,
    FagerMcGowan,
    Peirce,
    Baulieu2,
    SokalSneath3,
    GowerLegendre,
    RogersTanimoto,
    GoodmanKruskal,
    // information-theoretic / set-matching
    Nmi,
    NmiMax,
    Fnmi,
    Vi,
    Ami,
    Smi,
    FMeasure,
    BCubed,
};

enum class Family { PairCounting, InformationTheoretic, SetMatching };

enum class Direction { HigherBetter, LowerBetter };

struct IndexDescriptor {
    IndexId id;
    std::string_view name;
    Family family;
    Direction direction;
    std::optional<double> c_max;         // maximal-agreement constant, when the property holds
    std::optional<double> c_min;         // minimal-agreement constant (pair-counting)
    std::optional<double> c_base;        // exact constant baseline
    std::optional<double> c_base_asymptotic;
    IndexId equivalence_rep;             // representative of the linear-equivalence class
    bool needs_sampling;                 // expectation/variance terms (AMI, SMI)
    bool linear_complexity;              // worst-case O(n) evaluation
};

const std::vector<IndexDescriptor>& index_registry();
const IndexDescriptor& descriptor(IndexId id);
std::optional<IndexId> index_from_name(std::string_view name);
std::string_view index_name(IndexId id);
bool is_pair_counting(IndexId id);

/// Orients a score so that larger always means more similar.
inline double oriented(const IndexDescriptor& d, double v) {
    return d.direction == Direction::HigherBetter ? v : -v;
}

struct SamplingConfig {
    enum class Mode { MonteCarlo, ExactEnumeration };
    Mode mode = Mode::ExactEnumeration;
    int64_t samples = 10000;
    uint64_t seed = 0;
};

struct IndexScore {
    std::optional<double> value;
    std::string reason;  // set when the value is undefined
    std::optional<double> mc_stderr;
    std::optional<int64_t> mc_samples;

    bool defined() const { return value.has_value(); }
};

/// Value plus undefinedness flag for the hot evaluation path.
struct RawScore {
    double value;               // NaN when undefined
    const char* reason;         // nullptr when defined
};

/// Evaluates a pair-counting index on real-valued pair counts.
/// Undefined denominators yield NaN with a reason; the only conventions are
/// CC = 1 (and CD = 0) when N10 = N01 = 0, matching equal partitions.
RawScore pair_index_raw(IndexId id, const RealPairCounts& pc);

IndexScore eval_pair_index(IndexId id, const PairCounts& pc);
IndexScore eval_pair_index(IndexId id, const RealPairCounts& pc);

/// Expected pair counts under the fixed-sizes random model:
/// (m_A·m_B/N, m_A−N̄11, m_B−N̄11, N−m_A−m_B+N̄11).
RealPairCounts expected_pair_counts(double m_a, double m_b, double pair_total);

/// Pair-counting index evaluated at the expected pair counts; m_a and m_b
/// must lie strictly inside (0, N).
double substituted_index(IndexId id, double m_a, double m_b, double pair_total);

/// Unit-sphere embedding whose inner product equals CC for nontrivial
/// partitions; trivial partitions map to ±(1/√N)·1.
std::vector<double> cc_embedding(const Partition& a);

/// Mean (and, for ExactEnumeration, exact standard deviation) of M(A, B')
/// over B' uniform on partitions with sizes s.
struct MiMoments {
    double mean = 0;
    double sd = 0;              // population standard deviation
    double mean_stderr = 0;     // 0 in exact mode
    int64_t count = 0;
    bool exact = false;
};

MiMoments mi_moments(const Partition& a, const ClusterSizeSpec& s, const SamplingConfig& cfg);

IndexScore expected_mutual_information(const Partition& a, const ClusterSizeSpec& s,
                                       const SamplingConfig& cfg);

/// Scores any registry index; caches the expected-MI moments of sampled
/// indices keyed by (reference labels, candidate sizes). Not thread-safe;
/// use one evaluator per thread.
class Evaluator {
public:
    Evaluator() = default;
    explicit Evaluator(SamplingConfig cfg) : cfg_(std::move(cfg)) {}

    IndexScore eval(IndexId id, const Partition& a, const Partition& b);
    const MiMoments& moments(const Partition& a, const ClusterSizeSpec& s);

    const SamplingConfig& config() const { return cfg_; }

private:
    SamplingConfig cfg_;
    std::map<std::pair<std::vector<int32_t>, std::vector<int>>, MiMoments> memo_;
};

/// One-off convenience wrapper around Evaluator.
IndexScore eval_index(IndexId id, const Partition& a, const Partition& b,
                      const SamplingConfig* cfg = nullptr);

}  // namespace cluvalid
