#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace cluvalid {

/// A partition of {0,...,n-1} in canonical form: cluster labels are dense
/// integers assigned in order of first occurrence, so two label sequences
/// describing the same set partition compare equal.
class Partition {
public:
    Partition() = default;

    /// Canonicalizes an arbitrary label sequence. Throws on empty input.
    static Partition from_labels(std::span<const int> labels);
    static Partition from_labels(std::span<const std::string> labels);
    static Partition from_labels(std::initializer_list<int> labels);

    int n() const { return static_cast<int>(labels_.size()); }
    int k() const { return k_; }
    const std::vector<int32_t>& labels() const { return labels_; }
    int32_t label(int i) const { return labels_[static_cast<size_t>(i)]; }

    /// Cluster sizes indexed by canonical cluster id (length k).
    const std::vector<int32_t>& cluster_sizes() const { return sizes_; }

    bool trivial() const { return k_ == 1 || k_ == n(); }
    bool same_cluster(int i, int j) const { return label(i) == label(j); }

    /// Members of each cluster, indexed by cluster id.
    std::vector<std::vector<int>> clusters() const;

    auto operator<=>(const Partition&) const = default;

private:
    std::vector<int32_t> labels_;
    std::vector<int32_t> sizes_;
    int32_t k_ = 0;

    void finalize();  // canonicalize labels_, fill sizes_ and k_
};

/// Multiset of cluster sizes, stored sorted in decreasing order.
struct ClusterSizeSpec {
    std::vector<int> sizes;

    ClusterSizeSpec() = default;
    explicit ClusterSizeSpec(std::vector<int> s);

    int n() const;
    int k() const { return static_cast<int>(sizes.size()); }
    /// Number of intra-cluster pairs, sum of C(s_i, 2).
    int64_t intra_pairs() const;

    auto operator<=>(const ClusterSizeSpec&) const = default;
};

ClusterSizeSpec size_spec(const Partition& p);

/// Sparse contingency table n_ij = |A_i ∩ B_j| with marginals.
struct ContingencyTable {
    struct Cell {
        int32_t row, col;
        int64_t count;
    };
    int64_t n = 0;
    std::vector<Cell> cells;          // nonzero entries only
    std::vector<int64_t> row_sums;    // cluster sizes of A
    std::vector<int64_t> col_sums;    // cluster sizes of B
};

ContingencyTable contingency(const Partition& a, const Partition& b);

/// Integer pair-count quadruple for two partitions on the same element set.
struct PairCounts {
    int64_t n11 = 0, n10 = 0, n01 = 0, n00 = 0;

    int64_t total() const { return n11 + n10 + n01 + n00; }
    int64_t intra_a() const { return n11 + n10; }
    int64_t intra_b() const { return n11 + n01; }
    double p_a() const { return static_cast<double>(intra_a()) / static_cast<double>(total()); }
    double p_b() const { return static_cast<double>(intra_b()) / static_cast<double>(total()); }
    double p_ab() const { return static_cast<double>(n11) / static_cast<double>(total()); }

    auto operator<=>(const PairCounts&) const = default;
};

/// Real-valued pair counts; holds the expected quadruple under the
/// fixed-sizes random model, or an integer quadruple promoted to double.
struct RealPairCounts {
    double n11 = 0, n10 = 0, n01 = 0, n00 = 0;

    double total() const { return n11 + n10 + n01 + n00; }
    double intra_a() const { return n11 + n10; }
    double intra_b() const { return n11 + n01; }
};

inline RealPairCounts to_real(const PairCounts& pc) {
    return {static_cast<double>(pc.n11), static_cast<double>(pc.n10),
            static_cast<double>(pc.n01), static_cast<double>(pc.n00)};
}

/// Requires a.n == b.n >= 2. Linear-time via the contingency table.
PairCounts pair_counts(const Partition& a, const Partition& b);
PairCounts pair_counts(const ContingencyTable& t);

/// Shannon entropy of the cluster-size distribution, in nats. 0·log 0 := 0.
double entropy(const Partition& p);
double entropy(const ClusterSizeSpec& s);

/// Entropy of the joint distribution {n_ij / n}, in nats.
double joint_entropy(const Partition& a, const Partition& b);
double joint_entropy(const ContingencyTable& t);

/// Mutual information H(A) + H(B) - H(A,B), in nats.
double mutual_information(const Partition& a, const Partition& b);
double mutual_information(const ContingencyTable& t);

/// Common refinement A ⊗ B.
Partition meet(const Partition& a, const Partition& b);

/// All partitions obtained by splitting one cluster of b into two nonempty
/// parts without separating any two members of one cluster of a.
std::vector<Partition> perfect_splits(const Partition& b, const Partition& a);

/// All partitions obtained by merging two clusters of b that lie inside a
/// single cluster of a.
std::vector<Partition> perfect_merges(const Partition& b, const Partition& a);

/// True iff b2 != b and every element pair that agrees in (a, b) also
/// agrees in (a, b2).
bool is_consistent_improvement(const Partition& a, const Partition& b, const Partition& b2);

}  // namespace cluvalid
