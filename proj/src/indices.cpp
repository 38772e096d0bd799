#include "cluvalid/indices.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <unordered_map>

#include "cluvalid/enumeration.hpp"
#include "cluvalid/sampling.hpp"

namespace cluvalid {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

constexpr const char* kZeroDenominator = "denominator vanishes";
constexpr const char* kTrivialPartition = "undefined for trivial partition (zero marginal variance)";
constexpr const char* kNoIntraPairs = "no intra-cluster pairs in one argument";
constexpr const char* kZeroEntropy = "both partitions have zero entropy";
constexpr const char* kZeroVariance = "zero variance of mutual information under the null";
constexpr const char* kDegenerateNorm = "degenerate normalization";

std::vector<IndexDescriptor> build_registry() {
    using enum IndexId;
    using enum Family;
    const auto hi = Direction::HigherBetter;
    const auto lo = Direction::LowerBetter;
    const std::optional<double> none = std::nullopt;
    std::vector<IndexDescriptor> r = {
        // id, name, family, direction, c_max, c_min, c_base, c_base_asymptotic,
        // equivalence_rep, needs_sampling, linear_complexity
        {Rand, "rand", PairCounting, hi, 1.0, 0.0, none, none, Rand, false, true},
        {AdjustedRand, "adjusted_rand", PairCounting, hi, 1.0, none, 0.0, 0.0, AdjustedRand, false, true},
        {Jaccard, "jaccard", PairCounting, hi, 1.0, none, none, none, Jaccard, false, true},
        {JaccardDistance, "jaccard_distance", PairCounting, lo, 0.0, none, none, none, Jaccard, false, true},
        {Wallace1, "wallace_1", PairCounting, hi, none, none, none, none, Wallace1, false, true},
        {Wallace2, "wallace_2", PairCounting, hi, none, none, none, none, Wallace1, false, true},
        {Dice, "dice", PairCounting, hi, 1.0, none, none, none, Dice, false, true},
        {CorrelationCoefficient, "correlation_coefficient", PairCounting, hi, 1.0, -1.0, 0.0, 0.0,
         CorrelationCoefficient, false, true},
        {CorrelationDistance, "correlation_distance", PairCounting, lo, 0.0, 1.0, none, 0.5,
         CorrelationDistance, false, true},
        {SokalSneath1, "sokal_sneath_1", PairCounting, hi, 1.0, 0.0, 0.5, 0.5, SokalSneath1, false, true},
        {Minkowski, "minkowski", PairCounting, lo, 0.0, none, none, none, Minkowski, false, true},
        {Hubert, "hubert", PairCounting, hi, 1.0, -1.0, none, none, Rand, false, true},
        {FowlkesMallows, "fowlkes_mallows", PairCounting, hi, 1.0, none, none, none, FowlkesMallows, false, true},
        {SokalSneath2, "sokal_sneath_2", PairCounting, hi, 1.0, none, none, none, SokalSneath2, false, true},
        {NormalizedMirkin, "normalized_mirkin", PairCounting, lo, 0.0, 1.0, none, none, Rand, false, true},
        {Kulczynski, "kulczynski", PairCounting, hi, 1.0, none, none, none, Kulczynski, false, true},
        {McConnaughey, "mcconnaughey", PairCounting, hi, 1.0, none, none, none, Kulczynski, false, true},
        {Yule, "yule", PairCounting, hi, none, none, none, 0.0, Yule, false, true},
        {Baulieu1, "baulieu_1", PairCounting, hi, none, none, none, none, Baulieu1, false, true},
        {RussellRao, "russell_rao", PairCounting, hi, none, none, none, none, RussellRao, false, true},
        {FagerMcGowan, "fager_mcgowan", PairCounting, hi, none, none, none, none, FagerMcGowan, false, true},
        {Peirce, "peirce", PairCounting, hi, 1.0, -1.0, 0.0, 0.0, Peirce, false, true},
        {Baulieu2, "baulieu_2", PairCounting, hi, none, none, 0.0, 0.0, Baulieu2, false, true},
        {SokalSneath3, "sokal_sneath_3", PairCounting, hi, 1.0, none, none, none, SokalSneath3, false, true},
        {GowerLegendre, "gower_legendre", PairCounting, hi, 1.0, 0.0, none, none, GowerLegendre, false, true},
        {RogersTanimoto, "rogers_tanimoto", PairCounting, hi, 1.0, 0.0, none, none, RogersTanimoto, false, true},
        {GoodmanKruskal, "goodman_kruskal", PairCounting, hi, none, none, none, 0.0, GoodmanKruskal, false, true},

        {Nmi, "nmi", InformationTheoretic, hi, 1.0, none, none, none, Nmi, false, true},
        {NmiMax, "nmi_max", InformationTheoretic, hi, 1.0, none, none, none, NmiMax, false, true},
        {Fnmi, "fnmi", InformationTheoretic, hi, 1.0, none, none, none, Fnmi, false, true},
        {Vi, "vi", InformationTheoretic, lo, 0.0, none, none, none, Vi, false, true},
        {Ami, "ami", InformationTheoretic, hi, 1.0, none, 0.0, none, Ami, true, false},
        {Smi, "smi", InformationTheoretic, hi, none, none, 0.0, none, Smi, true, false},
        {FMeasure, "fmeasure", SetMatching, hi, 1.0, none, none, none, FMeasure, false, true},
        {BCubed, "bcubed", SetMatching, hi, 1.0, none, none, none, BCubed, false, true},
    };
    return r;
}

const std::unordered_map<std::string_view, IndexId>& alias_map() {
    static const std::unordered_map<std::string_view, IndexId> m = [] {
        std::unordered_map<std::string_view, IndexId> a;
        for (const auto& d : index_registry()) a.emplace(d.name, d.id);
        a.emplace("r", IndexId::Rand);
        a.emplace("ar", IndexId::AdjustedRand);
        a.emplace("j", IndexId::Jaccard);
        a.emplace("jd", IndexId::JaccardDistance);
        a.emplace("w", IndexId::Wallace1);
        a.emplace("w1", IndexId::Wallace1);
        a.emplace("w2", IndexId::Wallace2);
        a.emplace("d", IndexId::Dice);
        a.emplace("cc", IndexId::CorrelationCoefficient);
        a.emplace("cd", IndexId::CorrelationDistance);
        a.emplace("ss", IndexId::SokalSneath1);
        a.emplace("s&s", IndexId::SokalSneath1);
        a.emplace("fm", IndexId::FMeasure);
        a.emplace("bc", IndexId::BCubed);
        return a;
    }();
    return m;
}

}  // namespace

const std::vector<IndexDescriptor>& index_registry() {
    static const std::vector<IndexDescriptor> reg = build_registry();
    return reg;
}

const IndexDescriptor& descriptor(IndexId id) {
    return index_registry()[static_cast<size_t>(id)];
}

std::optional<IndexId> index_from_name(std::string_view name) {
    const auto& m = alias_map();
    auto it = m.find(name);
    if (it == m.end()) return std::nullopt;
    return it->second;
}

std::string_view index_name(IndexId id) { return descriptor(id).name; }

bool is_pair_counting(IndexId id) { return descriptor(id).family == Family::PairCounting; }

RawScore pair_index_raw(IndexId id, const RealPairCounts& pc) {
    const double a = pc.n11, b = pc.n10, c = pc.n01, d = pc.n00;
    const double total = a + b + c + d;
    const double ma = a + b, mb = a + c;
    const double ca = c + d, cb = b + d;  // N - m_A, N - m_B

    switch (id) {
        case IndexId::Rand:
            return {(a + d) / total, nullptr};
        case IndexId::AdjustedRand: {
            const double den = 0.5 * (ma + mb) - ma * mb / total;
            if (std::abs(den) <= 1e-12 * std::max(1.0, total)) return {kNaN, kZeroDenominator};
            return {(a - ma * mb / total) / den, nullptr};
        }
        case IndexId::Jaccard: {
            const double den = a + b + c;
            if (den == 0) return {kNaN, kZeroDenominator};
            return {a / den, nullptr};
        }
        case IndexId::JaccardDistance: {
            const double den = a + b + c;
            if (den == 0) return {kNaN, kZeroDenominator};
            return {(b + c) / den, nullptr};
        }
        case IndexId::Wallace1:
            if (ma == 0) return {kNaN, kNoIntraPairs};
            return {a / ma, nullptr};
        case IndexId::Wallace2:
            if (mb == 0) return {kNaN, kNoIntraPairs};
            return {a / mb, nullptr};
        case IndexId::Dice: {
            const double den = 2 * a + b + c;
            if (den == 0) return {kNaN, kZeroDenominator};
            return {2 * a / den, nullptr};
        }
        case IndexId::CorrelationCoefficient:
        case IndexId::CorrelationDistance:
        case IndexId::SokalSneath3: {
            if (b == 0 && c == 0 && id != IndexId::SokalSneath3) {
                // equal partitions, including the trivial ones
                return {id == IndexId::CorrelationCoefficient ? 1.0 : 0.0, nullptr};
            }
            if (ma == 0 || mb == 0 || ca == 0 || cb == 0) return {kNaN, kTrivialPartition};
            const double den = std::sqrt(ma * mb * ca * cb);
            if (id == IndexId::SokalSneath3) return {a * d / den, nullptr};
            const double cc = (a * d - b * c) / den;
            if (id == IndexId::CorrelationCoefficient) return {cc, nullptr};
            return {std::acos(std::clamp(cc, -1.0, 1.0)) / std::numbers::pi, nullptr};
        }
        case IndexId::SokalSneath1:
            if (ma == 0 || mb == 0 || ca == 0 || cb == 0) return {kNaN, kTrivialPartition};
            return {0.25 * (a / ma + a / mb + d / cb + d / ca), nullptr};
        case IndexId::Minkowski:
            if (ma == 0) return {kNaN, kNoIntraPairs};
            return {std::sqrt((b + c) / ma), nullptr};
        case IndexId::Hubert:
            return {(a + d - b - c) / total, nullptr};
        case IndexId::FowlkesMallows:
            if (ma == 0 || mb == 0) return {kNaN, kNoIntraPairs};
            return {a / std::sqrt(ma * mb), nullptr};
        case IndexId::SokalSneath2: {
            const double den = 0.5 * a + b + c;
            if (den == 0) return {kNaN, kZeroDenominator};
            return {0.5 * a / den, nullptr};
        }
        case IndexId::NormalizedMirkin:
            return {(b + c) / total, nullptr};
        case IndexId::Kulczynski:
            if (ma == 0 || mb == 0) return {kNaN, kNoIntraPairs};
            return {0.5 * (a / ma + a / mb), nullptr};
        case IndexId::McConnaughey:
            if (ma == 0 || mb == 0) return {kNaN, kNoIntraPairs};
            return {(a * a - b * c) / (ma * mb), nullptr};
        case IndexId::Yule: {
            const double den = a * b + c * d;
            if (den == 0) return {kNaN, kZeroDenominator};
            return {(a * d - b * c) / den, nullptr};
        }
        case IndexId::Baulieu1:
            return {(total * (a + d) + (b - c) * (b - c)) / (total * total), nullptr};
        case IndexId::RussellRao:
            return {a / total, nullptr};
        case IndexId::FagerMcGowan:
            if (ma == 0 || mb == 0) return {kNaN, kNoIntraPairs};
            return {a / std::sqrt(ma * mb) - 0.5 / std::sqrt(ma), nullptr};
        case IndexId::Peirce: {
            const double den = mb * cb;
            if (den == 0) return {kNaN, kZeroDenominator};
            return {(a * d - b * c) / den, nullptr};
        }
        case IndexId::Baulieu2:
            return {(a * d - b * c) / (total * total), nullptr};
        case IndexId::GowerLegendre:
            return {(a + d) / (a + 0.5 * (b + c) + d), nullptr};
        case IndexId::RogersTanimoto:
            return {(a + d) / (a + 2 * (b + c) + d), nullptr};
        case IndexId::GoodmanKruskal: {
            const double den = a * d + b * c;
            if (den == 0) return {kNaN, kZeroDenominator};
            return {(a * d - b * c) / den, nullptr};
        }
        default:
            throw std::invalid_argument("not a pair-counting index");
    }
}

namespace {

IndexScore to_score(const RawScore& raw) {
    IndexScore s;
    if (raw.reason) {
        s.reason = raw.reason;
    } else {
        s.value = raw.value;
    }
    return s;
}

}  // namespace

IndexScore eval_pair_index(IndexId id, const PairCounts& pc) {
    return to_score(pair_index_raw(id, to_real(pc)));
}

IndexScore eval_pair_index(IndexId id, const RealPairCounts& pc) {
    return to_score(pair_index_raw(id, pc));
}

RealPairCounts expected_pair_counts(double m_a, double m_b, double pair_total) {
    if (!(pair_total > 0)) throw std::invalid_argument("pair total must be positive");
    if (m_a < 0 || m_a > pair_total || m_b < 0 || m_b > pair_total)
        throw std::invalid_argument("intra-pair counts out of range");
    const double n11 = m_a * m_b / pair_total;
    return {n11, m_a - n11, m_b - n11, pair_total - m_a - m_b + n11};
}

double substituted_index(IndexId id, double m_a, double m_b, double pair_total) {
    if (!is_pair_counting(id)) throw std::invalid_argument("not a pair-counting index");
    if (!(m_a > 0 && m_a < pair_total && m_b > 0 && m_b < pair_total))
        throw std::invalid_argument("m_a and m_b must lie strictly inside (0, N)");
    return pair_index_raw(id, expected_pair_counts(m_a, m_b, pair_total)).value;
}

std::vector<double> cc_embedding(const Partition& a) {
    const int n = a.n();
    if (n < 2) throw std::invalid_argument("embedding needs n >= 2");
    const int64_t pair_total = static_cast<int64_t>(n) * (n - 1) / 2;
    std::vector<double> u(static_cast<size_t>(pair_total));
    const double root = 1.0 / std::sqrt(static_cast<double>(pair_total));
    if (a.k() == 1) {
        std::fill(u.begin(), u.end(), root);
        return u;
    }
    if (a.k() == n) {
        std::fill(u.begin(), u.end(), -root);
        return u;
    }
    int64_t m_a = 0;
    for (int64_t s : a.cluster_sizes()) m_a += s * (s - 1) / 2;
    const double shift = static_cast<double>(m_a) / static_cast<double>(pair_total);
    const double norm =
        std::sqrt(static_cast<double>(m_a) * (static_cast<double>(pair_total) - static_cast<double>(m_a)) /
                  static_cast<double>(pair_total));
    size_t idx = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            u[idx++] = ((a.same_cluster(i, j) ? 1.0 : 0.0) - shift) / norm;
    return u;
}

MiMoments mi_moments(const Partition& a, const ClusterSizeSpec& s, const SamplingConfig& cfg) {
    if (s.n() != a.n()) throw std::invalid_argument("size spec does not match partition");
    MiMoments out;
    // Welford accumulation
    double mean = 0, m2 = 0;
    int64_t count = 0;
    auto push = [&](double x) {
        ++count;
        const double delta = x - mean;
        mean += delta / static_cast<double>(count);
        m2 += delta * (x - mean);
    };
    if (cfg.mode == SamplingConfig::Mode::ExactEnumeration) {
        if (a.n() > kEnumerationGuard)
            throw std::invalid_argument("exact enumeration beyond guard; use Monte Carlo mode");
        for_each_with_sizes(s, [&](const Partition& b) { push(mutual_information(a, b)); });
        out.exact = true;
        out.sd = count > 0 ? std::sqrt(m2 / static_cast<double>(count)) : 0.0;
        out.mean_stderr = 0.0;
    } else {
        if (cfg.samples < 1) throw std::invalid_argument("samples must be positive");
        // substream keyed by the inputs so results do not depend on call order
        uint64_t h = 0xcbf29ce484222325ull;
        auto mix = [&h](uint64_t v) {
            h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        };
        for (int32_t l : a.labels()) mix(static_cast<uint64_t>(l) + 1);
        for (int v : s.sizes) mix(static_cast<uint64_t>(v) + 0x100);
        SeededGenerator gen(cfg.seed, h);
        for (int64_t i = 0; i < cfg.samples; ++i) {
            const Partition b = sample_uniform_with_sizes(s, gen);
            push(mutual_information(a, b));
        }
        out.exact = false;
        const double var_sample = count > 1 ? m2 / static_cast<double>(count - 1) : 0.0;
        out.sd = std::sqrt(var_sample);
        out.mean_stderr = std::sqrt(var_sample / static_cast<double>(count));
    }
    out.mean = mean;
    out.count = count;
    return out;
}

IndexScore expected_mutual_information(const Partition& a, const ClusterSizeSpec& s,
                                       const SamplingConfig& cfg) {
    const MiMoments m = mi_moments(a, s, cfg);
    IndexScore score;
    score.value = m.mean;
    if (!m.exact) {
        score.mc_stderr = m.mean_stderr;
        score.mc_samples = m.count;
    }
    return score;
}

namespace {

IndexScore eval_information(IndexId id, const Partition& a, const Partition& b) {
    const ContingencyTable t = contingency(a, b);
    const double ha = entropy(a), hb = entropy(b);
    const double hab = joint_entropy(t);
    const double mi = ha + hb - hab;
    IndexScore s;
    switch (id) {
        case IndexId::Vi:
            s.value = 2 * hab - ha - hb;
            return s;
        case IndexId::Nmi:
        case IndexId::Fnmi: {
            if (ha + hb <= 0) {
                s.reason = kZeroEntropy;
                return s;
            }
            const double nmi = mi / ((ha + hb) / 2);
            if (id == IndexId::Nmi) {
                s.value = nmi;
            } else {
                const double ka = a.k(), kb = b.k();
                s.value = std::exp(-std::abs(ka - kb) / ka) * nmi;
            }
            return s;
        }
        case IndexId::NmiMax: {
            const double mx = std::max(ha, hb);
            if (mx <= 0) {
                s.reason = kZeroEntropy;
                return s;
            }
            s.value = mi / mx;
            return s;
        }
        default:
            throw std::invalid_argument("not an information-theoretic index");
    }
}

IndexScore eval_set_matching(IndexId id, const Partition& a, const Partition& b) {
    const ContingencyTable t = contingency(a, b);
    const double n = static_cast<double>(t.n);
    IndexScore s;
    if (id == IndexId::FMeasure) {
        std::vector<int64_t> row_max(t.row_sums.size(), 0), col_max(t.col_sums.size(), 0);
        for (const auto& cell : t.cells) {
            row_max[static_cast<size_t>(cell.row)] = std::max(row_max[static_cast<size_t>(cell.row)], cell.count);
            col_max[static_cast<size_t>(cell.col)] = std::max(col_max[static_cast<size_t>(cell.col)], cell.count);
        }
        double recall = 0, precision = 0;
        for (int64_t v : row_max) recall += static_cast<double>(v);
        for (int64_t v : col_max) precision += static_cast<double>(v);
        recall /= n;
        precision /= n;
        s.value = 2 * recall * precision / (recall + precision);
        return s;
    }
    // BCubed: r'(A,B) = (1/n) Σ_i (1/|A_i|) Σ_j n_ij²
    double recall = 0, precision = 0;
    for (const auto& cell : t.cells) {
        const double sq = static_cast<double>(cell.count) * static_cast<double>(cell.count);
        recall += sq / static_cast<double>(t.row_sums[static_cast<size_t>(cell.row)]);
        precision += sq / static_cast<double>(t.col_sums[static_cast<size_t>(cell.col)]);
    }
    recall /= n;
    precision /= n;
    s.value = 2 * recall * precision / (recall + precision);
    return s;
}

}  // namespace

const MiMoments& Evaluator::moments(const Partition& a, const ClusterSizeSpec& s) {
    auto key = std::pair(a.labels(), s.sizes);
    auto it = memo_.find(key);
    if (it == memo_.end()) it = memo_.emplace(std::move(key), mi_moments(a, s, cfg_)).first;
    return it->second;
}

IndexScore Evaluator::eval(IndexId id, const Partition& a, const Partition& b) {
    if (a.n() != b.n()) throw std::invalid_argument("partition size mismatch");
    const auto& d = descriptor(id);
    if (d.family == Family::PairCounting) {
        if (a.n() < 2) throw std::invalid_argument("no pairs");
        return eval_pair_index(id, pair_counts(a, b));
    }
    switch (id) {
        case IndexId::Nmi:
        case IndexId::NmiMax:
        case IndexId::Fnmi:
        case IndexId::Vi:
            return eval_information(id, a, b);
        case IndexId::FMeasure:
        case IndexId::BCubed:
            return eval_set_matching(id, a, b);
        case IndexId::Ami:
        case IndexId::Smi: {
            const MiMoments& m = moments(a, size_spec(b));
            const double mi = mutual_information(a, b);
            IndexScore s;
            if (!m.exact) {
                s.mc_stderr = m.mean_stderr;
                s.mc_samples = m.count;
            }
            if (id == IndexId::Smi) {
                if (m.sd <= 1e-12) {
                    s.reason = kZeroVariance;
                    return s;
                }
                s.value = (mi - m.mean) / m.sd;
                return s;
            }
            const double den = std::sqrt(entropy(a) * entropy(b)) - m.mean;
            if (std::abs(den) <= 1e-12) {
                s.reason = kDegenerateNorm;
                return s;
            }
            s.value = (mi - m.mean) / den;
            return s;
        }
        default:
            throw std::invalid_argument("unknown index");
    }
}

IndexScore eval_index(IndexId id, const Partition& a, const Partition& b, const SamplingConfig* cfg) {
    if (descriptor(id).needs_sampling && cfg == nullptr)
        throw std::invalid_argument("sampling config required for this index");
    Evaluator ev(cfg ? *cfg : SamplingConfig{});
    return ev.eval(id, a, b);
}

}  // namespace cluvalid
