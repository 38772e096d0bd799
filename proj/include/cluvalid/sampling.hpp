#pragma once

#include "cluvalid/partition.hpp"
#include "cluvalid/rng.hpp"

namespace cluvalid {

/// Uniform draw over all partitions with size multiset s, implemented as a
/// uniform random permutation of a fixed label vector. Uniformity over set
/// partitions follows because equal-size relabelings collapse identically
/// for every partition.
Partition sample_uniform_with_sizes(const ClusterSizeSpec& s, SeededGenerator& g);

/// BS(n, k): n - k*floor(n/k) clusters of size ceil(n/k), the remainder of
/// size floor(n/k).
ClusterSizeSpec balanced_sizes(int n, int k);

}  // namespace cluvalid
