#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "cluvalid/enumeration.hpp"
#include "cluvalid/partition.hpp"
#include "cluvalid/rng.hpp"
#include "cluvalid/sampling.hpp"

using namespace cluvalid;

namespace {

// brute-force N11 over all element pairs; independent of the contingency path
PairCounts pair_counts_brute(const Partition& a, const Partition& b) {
    PairCounts pc;
    const int n = a.n();
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const bool ia = a.same_cluster(i, j), ib = b.same_cluster(i, j);
            if (ia && ib)
                ++pc.n11;
            else if (ia)
                ++pc.n10;
            else if (ib)
                ++pc.n01;
            else
                ++pc.n00;
        }
    }
    return pc;
}

}  // namespace

TEST_CASE("partition canonical form") {
    const auto p = Partition::from_labels({0, 0, 1, 2});
    CHECK(p.n() == 4);
    CHECK(p.k() == 3);
    CHECK(size_spec(p).sizes == std::vector<int>{2, 1, 1});

    const std::vector<std::string> sx{"x", "x", "y", "y"};
    const auto a = Partition::from_labels(std::span<const std::string>(sx));
    const auto b = Partition::from_labels({1, 1, 0, 0});
    CHECK(a == b);

    const auto singleton = Partition::from_labels({5});
    CHECK(singleton.n() == 1);
    CHECK(singleton.k() == 1);

    CHECK_THROWS(Partition::from_labels(std::span<const int>{}));
}

TEST_CASE("contingency table") {
    const auto a = Partition::from_labels({0, 0, 1, 2});
    const auto b = Partition::from_labels({0, 0, 1, 1});
    const auto t = contingency(a, b);
    CHECK(t.n == 4);
    REQUIRE(t.cells.size() == 3);
    // cells sorted by (row, col): (0,0)=2, (1,1)=1, (2,1)=1
    CHECK(t.cells[0].count == 2);
    CHECK(t.cells[1].count == 1);
    CHECK(t.cells[2].count == 1);

    const auto d = contingency(a, a);
    for (const auto& cell : d.cells) CHECK(cell.row == cell.col);

    const auto singles = Partition::from_labels({0, 1, 2, 3});
    const auto one = Partition::from_labels({0, 0, 0, 0});
    const auto e = contingency(singles, one);
    CHECK(e.cells.size() == 4);
    for (const auto& cell : e.cells) CHECK(cell.count == 1);

    CHECK_THROWS(contingency(a, Partition::from_labels({0, 1})));
}

TEST_CASE("pair counts match the paper examples") {
    const auto a = Partition::from_labels({0, 0, 1, 2});
    const auto b = Partition::from_labels({0, 0, 1, 1});
    const auto c = Partition::from_labels({0, 1, 2, 2});

    const auto ab = pair_counts(a, b);
    CHECK(ab == PairCounts{1, 0, 1, 4});
    CHECK(ab.p_a() == doctest::Approx(1.0 / 6).epsilon(1e-12));
    CHECK(ab.p_b() == doctest::Approx(1.0 / 3).epsilon(1e-12));
    CHECK(ab.p_ab() == doctest::Approx(1.0 / 6).epsilon(1e-12));

    const auto ac = pair_counts(a, c);
    CHECK(ac == PairCounts{0, 1, 1, 4});
    CHECK(ac.p_ab() == 0.0);

    const auto self = pair_counts(a, a);
    CHECK(self.n10 == 0);
    CHECK(self.n01 == 0);

    CHECK_THROWS(pair_counts(Partition::from_labels({7}), Partition::from_labels({3})));
}

TEST_CASE("pair counts against brute force oracle") {
    SeededGenerator gen(99);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 2 + static_cast<int>(gen.uniform_below(29));
        std::vector<int> la(n), lb(n);
        for (int i = 0; i < n; ++i) {
            la[i] = static_cast<int>(gen.uniform_below(5));
            lb[i] = static_cast<int>(gen.uniform_below(4));
        }
        const auto a = Partition::from_labels(la);
        const auto b = Partition::from_labels(lb);
        const auto fast = pair_counts(a, b);
        const auto slow = pair_counts_brute(a, b);
        CHECK(fast == slow);
        CHECK(fast.total() == static_cast<int64_t>(n) * (n - 1) / 2);
    }
}

TEST_CASE("entropy") {
    CHECK(entropy(Partition::from_labels({0, 0, 0})) == 0.0);
    CHECK(entropy(Partition::from_labels({0, 0, 1, 1})) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
    const double expected = 0.5 * std::log(2.0) + 2 * 0.25 * std::log(4.0);
    CHECK(entropy(Partition::from_labels({0, 0, 1, 2})) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("joint entropy") {
    const auto a = Partition::from_labels({0, 0, 1, 2});
    const auto b = Partition::from_labels({0, 0, 1, 1});
    CHECK(joint_entropy(a, a) == doctest::Approx(entropy(a)).epsilon(1e-12));
    const auto singles = Partition::from_labels({0, 1, 2, 3});
    CHECK(joint_entropy(singles, b) == doctest::Approx(std::log(4.0)).epsilon(1e-12));
    const double expected = 0.5 * std::log(2.0) + 2 * 0.25 * std::log(4.0);
    CHECK(joint_entropy(a, b) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("meet") {
    const auto a = Partition::from_labels({0, 0, 1, 2});
    CHECK(meet(a, a) == a);

    const auto one = Partition::from_labels({0, 0, 0, 0});
    const auto halves = Partition::from_labels({0, 0, 1, 1});
    CHECK(meet(one, halves) == halves);

    const auto crossed = Partition::from_labels({0, 1, 0, 1});
    CHECK(meet(halves, crossed) == Partition::from_labels({0, 1, 2, 3}));
}

TEST_CASE("meet and joint entropy agree on all pairs up to n=6") {
    for (int n = 2; n <= 6; ++n) {
        const auto parts = all_partitions(n);
        for (const auto& a : parts)
            for (const auto& b : parts)
                CHECK(entropy(meet(a, b)) == doctest::Approx(joint_entropy(a, b)).epsilon(1e-12));
    }
}

TEST_CASE("perfect splits") {
    const auto one = Partition::from_labels({0, 0, 0, 0});
    const auto halves = Partition::from_labels({0, 0, 1, 1});
    const auto splits = perfect_splits(one, halves);
    REQUIRE(splits.size() == 1);
    CHECK(splits[0] == halves);

    CHECK(perfect_splits(Partition::from_labels({0, 1, 2, 3}), halves).empty());

    const auto pairx = Partition::from_labels({0, 0});
    const auto singles2 = Partition::from_labels({0, 1});
    const auto s2 = perfect_splits(pairx, singles2);
    REQUIRE(s2.size() == 1);
    CHECK(s2[0] == singles2);
}

TEST_CASE("perfect merges") {
    const auto one4 = Partition::from_labels({0, 0, 0, 0});
    const auto singles4 = Partition::from_labels({0, 1, 2, 3});
    CHECK(perfect_merges(singles4, one4).size() == 6);
    CHECK(perfect_merges(one4, one4).empty());

    const auto a = Partition::from_labels({0, 0, 1, 1});
    const auto b = Partition::from_labels({0, 1, 2, 2});
    const auto merges = perfect_merges(b, a);
    REQUIRE(merges.size() == 1);
    CHECK(merges[0] == a);
}

TEST_CASE("consistent improvement basics") {
    const auto a = Partition::from_labels({0, 0, 1, 1});
    const auto one = Partition::from_labels({0, 0, 0, 0});
    CHECK(is_consistent_improvement(a, one, a));
    CHECK_FALSE(is_consistent_improvement(a, one, one));

    const auto ref = Partition::from_labels({0, 0, 1, 2});
    const auto b = Partition::from_labels({0, 1, 2, 2});
    const auto b2 = Partition::from_labels({0, 0, 1, 1});
    CHECK(is_consistent_improvement(ref, b, b2));
}

TEST_CASE("consistent improvement equals split/merge reachability up to n=5") {
    for (int n = 2; n <= 5; ++n) {
        const auto parts = all_partitions(n);
        for (const auto& a : parts) {
            for (const auto& b : parts) {
                // BFS closure over perfect splits and merges w.r.t. a
                std::set<Partition> reach;
                std::vector<Partition> queue{b};
                while (!queue.empty()) {
                    const Partition cur = queue.back();
                    queue.pop_back();
                    for (const auto& nb : {perfect_splits(cur, a), perfect_merges(cur, a)}) {
                        for (const auto& nx : nb) {
                            if (reach.insert(nx).second) queue.push_back(nx);
                        }
                    }
                }
                reach.erase(b);
                for (const auto& b2 : parts) {
                    const bool reachable = reach.count(b2) > 0;
                    CHECK(is_consistent_improvement(a, b, b2) == reachable);
                }
            }
        }
    }
}

TEST_CASE("uniform sampler hits only the right sizes and all of them") {
    const ClusterSizeSpec spec({2, 1});
    SeededGenerator gen(7);
    std::set<Partition> seen;
    for (int i = 0; i < 300; ++i) seen.insert(sample_uniform_with_sizes(spec, gen));
    CHECK(seen.size() == 3);
    for (const auto& p : seen) CHECK(size_spec(p) == spec);

    SeededGenerator g2(1);
    CHECK(sample_uniform_with_sizes(ClusterSizeSpec({4}), g2) == Partition::from_labels({0, 0, 0, 0}));
    CHECK(sample_uniform_with_sizes(ClusterSizeSpec({1, 1, 1}), g2) == Partition::from_labels({0, 1, 2}));
}

TEST_CASE("balanced sizes") {
    CHECK(balanced_sizes(10, 3).sizes == std::vector<int>{4, 3, 3});
    CHECK(balanced_sizes(8, 4).sizes == std::vector<int>{2, 2, 2, 2});
    CHECK(balanced_sizes(5, 5).sizes == std::vector<int>{1, 1, 1, 1, 1});
    CHECK_THROWS(balanced_sizes(4, 5));
    CHECK_THROWS(balanced_sizes(4, 0));
}

TEST_CASE("seeded generator determinism and substreams") {
    SeededGenerator a(42, 3), b(42, 3), c(42, 4);
    for (int i = 0; i < 16; ++i) CHECK(a.next_u64() == b.next_u64());
    bool differs = false;
    SeededGenerator a2(42, 3);
    for (int i = 0; i < 16; ++i) differs |= a2.next_u64() != c.next_u64();
    CHECK(differs);

    auto s1 = SeededGenerator(9).substream(5);
    auto s2 = SeededGenerator(9).substream(5);
    CHECK(s1.next_u64() == s2.next_u64());
}
