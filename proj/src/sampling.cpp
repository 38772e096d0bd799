#include "cluvalid/sampling.hpp"

#include <span>
#include <stdexcept>

namespace cluvalid {

Partition sample_uniform_with_sizes(const ClusterSizeSpec& s, SeededGenerator& g) {
    const int n = s.n();
    if (n < 1) throw std::invalid_argument("empty size spec");
    std::vector<int> labels;
    labels.reserve(static_cast<size_t>(n));
    for (size_t c = 0; c < s.sizes.size(); ++c)
        labels.insert(labels.end(), static_cast<size_t>(s.sizes[c]), static_cast<int>(c));
    g.shuffle(std::span<int>(labels));
    return Partition::from_labels(labels);
}

ClusterSizeSpec balanced_sizes(int n, int k) {
    if (k < 1 || k > n) throw std::invalid_argument("k out of range");
    const int base = n / k;
    const int big = n - k * base;  // clusters of size base+1
    std::vector<int> sizes;
    sizes.reserve(static_cast<size_t>(k));
    for (int i = 0; i < big; ++i) sizes.push_back(base + 1);
    for (int i = big; i < k; ++i) sizes.push_back(base);
    return ClusterSizeSpec(std::move(sizes));
}

}  // namespace cluvalid
