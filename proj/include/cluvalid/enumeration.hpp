#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "cluvalid/partition.hpp"

namespace cluvalid {

/// Exhaustive enumeration is capped here; Bell(12) ≈ 4.2M is the practical
/// ceiling. Larger n must use sampling.
inline constexpr int kEnumerationGuard = 12;

uint64_t bell_number(int n);

/// Number of distinct set partitions with the given size multiset,
/// n! / (∏ s_i! · ∏ mult(size)!).
uint64_t partition_count_with_sizes(const ClusterSizeSpec& s);

/// Streams all Bell(n) set partitions of {0,...,n-1} in restricted-growth
/// order, each exactly once, in canonical form. Restartable by constructing
/// a fresh instance.
class PartitionEnumerator {
public:
    explicit PartitionEnumerator(int n);
    std::optional<Partition> next();

private:
    int n_;
    bool done_ = false;
    bool first_ = true;
    std::vector<int> rgs_;   // restricted growth string
    std::vector<int> maxp_;  // maxp_[i] = max(rgs_[0..i-1])
};

void for_each_partition(int n, const std::function<void(const Partition&)>& fn);

/// Streams all distinct partitions with size multiset s, each exactly once.
void for_each_with_sizes(const ClusterSizeSpec& s, const std::function<void(const Partition&)>& fn);

std::vector<Partition> all_partitions(int n);
std::vector<Partition> partitions_with_sizes(const ClusterSizeSpec& s);

/// All integer partitions of n (candidate cluster-size multisets), descending.
std::vector<ClusterSizeSpec> all_size_specs(int n);

}  // namespace cluvalid
