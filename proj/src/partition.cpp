#include "cluvalid/partition.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace cluvalid {

void Partition::finalize() {
    if (labels_.empty()) throw std::invalid_argument("empty partition");
    std::unordered_map<int32_t, int32_t> remap;
    remap.reserve(labels_.size());
    for (auto& l : labels_) {
        auto [it, inserted] = remap.try_emplace(l, static_cast<int32_t>(remap.size()));
        l = it->second;
    }
    k_ = static_cast<int32_t>(remap.size());
    sizes_.assign(k_, 0);
    for (int32_t l : labels_) ++sizes_[static_cast<size_t>(l)];
}

Partition Partition::from_labels(std::span<const int> labels) {
    Partition p;
    p.labels_.assign(labels.begin(), labels.end());
    p.finalize();
    return p;
}

Partition Partition::from_labels(std::initializer_list<int> labels) {
    return from_labels(std::span<const int>(labels.begin(), labels.size()));
}

Partition Partition::from_labels(std::span<const std::string> labels) {
    if (labels.empty()) throw std::invalid_argument("empty partition");
    Partition p;
    p.labels_.reserve(labels.size());
    std::unordered_map<std::string, int32_t> remap;
    for (const auto& s : labels) {
        auto [it, inserted] = remap.try_emplace(s, static_cast<int32_t>(remap.size()));
        p.labels_.push_back(it->second);
    }
    p.finalize();
    return p;
}

std::vector<std::vector<int>> Partition::clusters() const {
    std::vector<std::vector<int>> out(static_cast<size_t>(k_));
    for (size_t c = 0; c < out.size(); ++c) out[c].reserve(static_cast<size_t>(sizes_[c]));
    for (int i = 0; i < n(); ++i) out[static_cast<size_t>(labels_[static_cast<size_t>(i)])].push_back(i);
    return out;
}

ClusterSizeSpec::ClusterSizeSpec(std::vector<int> s) : sizes(std::move(s)) {
    for (int v : sizes)
        if (v < 1) throw std::invalid_argument("cluster sizes must be positive");
    std::sort(sizes.begin(), sizes.end(), std::greater<>());
}

int ClusterSizeSpec::n() const {
    return std::accumulate(sizes.begin(), sizes.end(), 0);
}

int64_t ClusterSizeSpec::intra_pairs() const {
    int64_t m = 0;
    for (int64_t s : sizes) m += s * (s - 1) / 2;
    return m;
}

ClusterSizeSpec size_spec(const Partition& p) {
    std::vector<int> s(p.cluster_sizes().begin(), p.cluster_sizes().end());
    return ClusterSizeSpec(std::move(s));
}

ContingencyTable contingency(const Partition& a, const Partition& b) {
    if (a.n() != b.n()) throw std::invalid_argument("partition size mismatch");
    ContingencyTable t;
    t.n = a.n();
    t.row_sums.assign(a.cluster_sizes().begin(), a.cluster_sizes().end());
    t.col_sums.assign(b.cluster_sizes().begin(), b.cluster_sizes().end());
    std::unordered_map<int64_t, int64_t> counts;
    counts.reserve(static_cast<size_t>(a.n()));
    const int64_t kb = b.k();
    for (int i = 0; i < a.n(); ++i) {
        const int64_t key = static_cast<int64_t>(a.label(i)) * kb + b.label(i);
        ++counts[key];
    }
    t.cells.reserve(counts.size());
    for (const auto& [key, cnt] : counts)
        t.cells.push_back({static_cast<int32_t>(key / kb), static_cast<int32_t>(key % kb), cnt});
    std::sort(t.cells.begin(), t.cells.end(), [](const auto& x, const auto& y) {
        return std::pair(x.row, x.col) < std::pair(y.row, y.col);
    });
    return t;
}

PairCounts pair_counts(const ContingencyTable& t) {
    if (t.n < 2) throw std::invalid_argument("no pairs");
    auto choose2 = [](int64_t v) { return v * (v - 1) / 2; };
    PairCounts pc;
    int64_t n11 = 0;
    for (const auto& c : t.cells) n11 += choose2(c.count);
    int64_t ma = 0, mb = 0;
    for (int64_t r : t.row_sums) ma += choose2(r);
    for (int64_t c : t.col_sums) mb += choose2(c);
    const int64_t total = choose2(t.n);
    pc.n11 = n11;
    pc.n10 = ma - n11;
    pc.n01 = mb - n11;
    pc.n00 = total - ma - mb + n11;
    return pc;
}

PairCounts pair_counts(const Partition& a, const Partition& b) {
    return pair_counts(contingency(a, b));
}

namespace {

double entropy_of_counts(std::span<const int64_t> counts, double n) {
    double h = 0.0;
    for (int64_t c : counts) {
        if (c > 0) {
            const double p = static_cast<double>(c) / n;
            h -= p * std::log(p);
        }
    }
    return h;
}

}  // namespace

double entropy(const Partition& p) {
    std::vector<int64_t> c(p.cluster_sizes().begin(), p.cluster_sizes().end());
    return entropy_of_counts(c, static_cast<double>(p.n()));
}

double entropy(const ClusterSizeSpec& s) {
    std::vector<int64_t> c(s.sizes.begin(), s.sizes.end());
    return entropy_of_counts(c, static_cast<double>(s.n()));
}

double joint_entropy(const ContingencyTable& t) {
    double h = 0.0;
    const double n = static_cast<double>(t.n);
    for (const auto& c : t.cells) {
        const double p = static_cast<double>(c.count) / n;
        h -= p * std::log(p);
    }
    return h;
}

double joint_entropy(const Partition& a, const Partition& b) {
    return joint_entropy(contingency(a, b));
}

double mutual_information(const ContingencyTable& t) {
    const double n = static_cast<double>(t.n);
    const double ha = entropy_of_counts(t.row_sums, n);
    const double hb = entropy_of_counts(t.col_sums, n);
    return ha + hb - joint_entropy(t);
}

double mutual_information(const Partition& a, const Partition& b) {
    return mutual_information(contingency(a, b));
}

Partition meet(const Partition& a, const Partition& b) {
    if (a.n() != b.n()) throw std::invalid_argument("partition size mismatch");
    std::vector<int> combo(static_cast<size_t>(a.n()));
    const int64_t kb = b.k();
    std::unordered_map<int64_t, int> remap;
    for (int i = 0; i < a.n(); ++i) {
        const int64_t key = static_cast<int64_t>(a.label(i)) * kb + b.label(i);
        auto [it, inserted] = remap.try_emplace(key, static_cast<int>(remap.size()));
        combo[static_cast<size_t>(i)] = it->second;
    }
    return Partition::from_labels(combo);
}

std::vector<Partition> perfect_splits(const Partition& b, const Partition& a) {
    if (a.n() != b.n()) throw std::invalid_argument("partition size mismatch");
    std::vector<Partition> out;
    const auto blocks = b.clusters();
    for (const auto& block : blocks) {
        if (block.size() < 2) continue;
        // group the block by reference cluster; these units cannot be separated
        std::unordered_map<int32_t, std::vector<int>> by_ref;
        for (int e : block) by_ref[a.label(e)].push_back(e);
        if (by_ref.size() < 2) continue;
        std::vector<const std::vector<int>*> units;
        units.reserve(by_ref.size());
        for (const auto& [lab, mem] : by_ref) units.push_back(&mem);
        std::sort(units.begin(), units.end(),
                  [](const auto* x, const auto* y) { return (*x)[0] < (*y)[0]; });
        const size_t g = units.size();
        const int32_t fresh = b.k();
        // unit 0 stays put; every nonempty subset of the rest forms the new cluster
        for (uint64_t mask = 1; mask < (uint64_t{1} << (g - 1)); ++mask) {
            std::vector<int> labels(b.labels().begin(), b.labels().end());
            for (size_t u = 1; u < g; ++u) {
                if (mask >> (u - 1) & 1)
                    for (int e : *units[u]) labels[static_cast<size_t>(e)] = fresh;
            }
            out.push_back(Partition::from_labels(labels));
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<Partition> perfect_merges(const Partition& b, const Partition& a) {
    if (a.n() != b.n()) throw std::invalid_argument("partition size mismatch");
    // ref_of[c] = the single reference cluster containing block c, or -1
    std::vector<int32_t> ref_of(static_cast<size_t>(b.k()), -1);
    std::vector<bool> pure(static_cast<size_t>(b.k()), true);
    for (int i = 0; i < b.n(); ++i) {
        const auto c = static_cast<size_t>(b.label(i));
        if (ref_of[c] == -1)
            ref_of[c] = a.label(i);
        else if (ref_of[c] != a.label(i))
            pure[c] = false;
    }
    std::vector<Partition> out;
    for (int32_t c1 = 0; c1 < b.k(); ++c1) {
        if (!pure[static_cast<size_t>(c1)]) continue;
        for (int32_t c2 = c1 + 1; c2 < b.k(); ++c2) {
            if (!pure[static_cast<size_t>(c2)]) continue;
            if (ref_of[static_cast<size_t>(c1)] != ref_of[static_cast<size_t>(c2)]) continue;
            std::vector<int> labels(b.labels().begin(), b.labels().end());
            for (auto& l : labels)
                if (l == c2) l = c1;
            out.push_back(Partition::from_labels(labels));
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool is_consistent_improvement(const Partition& a, const Partition& b, const Partition& b2) {
    if (a.n() != b.n() || a.n() != b2.n()) throw std::invalid_argument("partition size mismatch");
    if (b == b2) return false;
    const int n = a.n();
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const bool in_a = a.same_cluster(i, j);
            if (in_a == b.same_cluster(i, j) && b2.same_cluster(i, j) != in_a) return false;
        }
    }
    return true;
}

}  // namespace cluvalid
