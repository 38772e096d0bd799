#include "cluvalid/enumeration.hpp"

#include <algorithm>
#include <stdexcept>

namespace cluvalid {

namespace {

void check_guard(int n) {
    if (n < 1) throw std::invalid_argument("n must be positive");
    if (n > kEnumerationGuard) throw std::invalid_argument("n exceeds enumeration guard");
}

}  // namespace

uint64_t bell_number(int n) {
    if (n < 0 || n > 25) throw std::invalid_argument("bell_number supports 0 <= n <= 25");
    // Bell triangle
    std::vector<uint64_t> row{1};
    for (int i = 1; i <= n; ++i) {
        std::vector<uint64_t> next;
        next.reserve(row.size() + 1);
        next.push_back(row.back());
        for (uint64_t v : row) next.push_back(next.back() + v);
        row = std::move(next);
    }
    return row.front();
}

uint64_t partition_count_with_sizes(const ClusterSizeSpec& s) {
    const int n = s.n();
    check_guard(n);
    // n! / (prod s_i!) / (prod mult(size)!), computed exactly
    uint64_t num = 1;
    for (int i = 2; i <= n; ++i) num *= static_cast<uint64_t>(i);
    auto fact = [](int v) {
        uint64_t f = 1;
        for (int i = 2; i <= v; ++i) f *= static_cast<uint64_t>(i);
        return f;
    };
    for (int sz : s.sizes) num /= fact(sz);
    int run = 1;
    for (size_t i = 1; i <= s.sizes.size(); ++i) {
        if (i < s.sizes.size() && s.sizes[i] == s.sizes[i - 1]) {
            ++run;
        } else {
            num /= fact(run);
            run = 1;
        }
    }
    return num;
}

PartitionEnumerator::PartitionEnumerator(int n) : n_(n) {
    check_guard(n);
    rgs_.assign(static_cast<size_t>(n), 0);
    maxp_.assign(static_cast<size_t>(n), 0);
}

std::optional<Partition> PartitionEnumerator::next() {
    if (done_) return std::nullopt;
    if (first_) {
        first_ = false;
        return Partition::from_labels(rgs_);
    }
    // advance the restricted growth string
    for (int i = n_ - 1; i >= 1; --i) {
        const auto ui = static_cast<size_t>(i);
        if (rgs_[ui] <= maxp_[ui]) {
            ++rgs_[ui];
            for (size_t j = ui + 1; j < rgs_.size(); ++j) {
                rgs_[j] = 0;
                maxp_[j] = std::max(maxp_[j - 1], rgs_[j - 1]);
            }
            return Partition::from_labels(rgs_);
        }
    }
    done_ = true;
    return std::nullopt;
}

void for_each_partition(int n, const std::function<void(const Partition&)>& fn) {
    PartitionEnumerator e(n);
    while (auto p = e.next()) fn(*p);
}

std::vector<Partition> all_partitions(int n) {
    std::vector<Partition> out;
    out.reserve(bell_number(n));
    for_each_partition(n, [&](const Partition& p) { out.push_back(p); });
    return out;
}

namespace {

// Assigns the smallest free element plus a (size-1)-subset of the remaining
// free elements to a fresh block, once per distinct remaining block size.
struct SizedGen {
    int n;
    std::vector<int> labels;      // -1 = unassigned
    std::vector<int> remaining;   // unplaced block sizes, descending
    int next_label = 0;
    const std::function<void(const Partition&)>& fn;

    explicit SizedGen(int n_, std::vector<int> sizes, const std::function<void(const Partition&)>& f)
        : n(n_), labels(static_cast<size_t>(n_), -1), remaining(std::move(sizes)), fn(f) {}

    void run() { rec(); }

    void rec() {
        int seed = -1;
        for (int i = 0; i < n; ++i)
            if (labels[static_cast<size_t>(i)] == -1) {
                seed = i;
                break;
            }
        if (seed == -1) {
            fn(Partition::from_labels(labels));
            return;
        }
        std::vector<int> pool;
        for (int i = seed + 1; i < n; ++i)
            if (labels[static_cast<size_t>(i)] == -1) pool.push_back(i);

        for (size_t si = 0; si < remaining.size(); ++si) {
            if (si > 0 && remaining[si] == remaining[si - 1]) continue;  // distinct sizes only
            const int sz = remaining[si];
            if (sz - 1 > static_cast<int>(pool.size())) continue;
            remaining.erase(remaining.begin() + static_cast<long>(si));
            labels[static_cast<size_t>(seed)] = next_label;
            ++next_label;
            choose(pool, 0, sz - 1);
            --next_label;
            labels[static_cast<size_t>(seed)] = -1;
            remaining.insert(remaining.begin() + static_cast<long>(si), sz);
        }
    }

    void choose(const std::vector<int>& pool, size_t from, int need) {
        if (need == 0) {
            rec();
            return;
        }
        for (size_t i = from; i + static_cast<size_t>(need) <= pool.size(); ++i) {
            labels[static_cast<size_t>(pool[i])] = next_label - 1;
            choose(pool, i + 1, need - 1);
            labels[static_cast<size_t>(pool[i])] = -1;
        }
    }
};

}  // namespace

void for_each_with_sizes(const ClusterSizeSpec& s, const std::function<void(const Partition&)>& fn) {
    check_guard(s.n());
    SizedGen gen(s.n(), s.sizes, fn);
    gen.run();
}

std::vector<Partition> partitions_with_sizes(const ClusterSizeSpec& s) {
    std::vector<Partition> out;
    out.reserve(partition_count_with_sizes(s));
    for_each_with_sizes(s, [&](const Partition& p) { out.push_back(p); });
    return out;
}

namespace {

void size_spec_rec(int left, int max_part, std::vector<int>& cur,
                   std::vector<ClusterSizeSpec>& out) {
    if (left == 0) {
        out.emplace_back(cur);
        return;
    }
    for (int p = std::min(left, max_part); p >= 1; --p) {
        cur.push_back(p);
        size_spec_rec(left - p, p, cur, out);
        cur.pop_back();
    }
}

}  // namespace

std::vector<ClusterSizeSpec> all_size_specs(int n) {
    if (n < 1) throw std::invalid_argument("n must be positive");
    std::vector<ClusterSizeSpec> out;
    std::vector<int> cur;
    size_spec_rec(n, n, cur, out);
    return out;
}

}  // namespace cluvalid
