#include "cluvalid/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "cluvalid/enumeration.hpp"

namespace cluvalid {

namespace {

constexpr int kMaxIter = 500;
constexpr double kEps = 1e-16;
constexpr double kTiny = 1e-300;

double gamma_p_series(double a, double x) {
    double ap = a;
    double del = 1.0 / a;
    double sum = del;
    for (int i = 0; i < kMaxIter; ++i) {
        ap += 1;
        del *= x / ap;
        sum += del;
        if (std::abs(del) < std::abs(sum) * kEps) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

double gamma_q_contfrac(double a, double x) {
    double b = x + 1 - a;
    double c = 1 / kTiny;
    double d = 1 / b;
    double h = d;
    for (int i = 1; i <= kMaxIter; ++i) {
        const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2;
        d = an * d + b;
        if (std::abs(d) < kTiny) d = kTiny;
        c = b + an / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1) < kEps) break;
    }
    return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

double betacf(double a, double b, double x) {
    const double qab = a + b, qap = a + 1, qam = a - 1;
    double c = 1;
    double d = 1 - qab * x / qap;
    if (std::abs(d) < kTiny) d = kTiny;
    d = 1 / d;
    double h = d;
    for (int m = 1; m <= kMaxIter; ++m) {
        const double dm = m;
        double aa = dm * (b - dm) * x / ((qam + 2 * dm) * (a + 2 * dm));
        d = 1 + aa * d;
        if (std::abs(d) < kTiny) d = kTiny;
        c = 1 + aa / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1 / d;
        h *= d * c;
        aa = -(a + dm) * (qab + dm) * x / ((a + 2 * dm) * (qap + 2 * dm));
        d = 1 + aa * d;
        if (std::abs(d) < kTiny) d = kTiny;
        c = 1 + aa / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1) < kEps) break;
    }
    return h;
}

}  // namespace

double regularized_gamma_p(double a, double x) {
    if (a <= 0 || x < 0) throw std::invalid_argument("gamma_p requires a > 0, x >= 0");
    if (x == 0) return 0;
    if (x < a + 1) return gamma_p_series(a, x);
    return 1 - gamma_q_contfrac(a, x);
}

double regularized_gamma_q(double a, double x) {
    if (a <= 0 || x < 0) throw std::invalid_argument("gamma_q requires a > 0, x >= 0");
    if (x == 0) return 1;
    if (x < a + 1) return 1 - gamma_p_series(a, x);
    return gamma_q_contfrac(a, x);
}

double regularized_beta(double a, double b, double x) {
    if (a <= 0 || b <= 0) throw std::invalid_argument("beta requires a, b > 0");
    if (x <= 0) return 0;
    if (x >= 1) return 1;
    const double bt =
        std::exp(std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) +
                 b * std::log1p(-x));
    if (x < (a + 1) / (a + b + 2)) return bt * betacf(a, b, x) / a;
    return 1 - bt * betacf(b, a, 1 - x) / b;
}

double chi_squared_sf(double x, double df) {
    if (x <= 0) return 1;
    return regularized_gamma_q(df / 2, x / 2);
}

double f_sf(double f, double df1, double df2) {
    if (f <= 0) return 1;
    return regularized_beta(df2 / 2, df1 / 2, df2 / (df2 + df1 * f));
}

namespace {

struct DrawnScores {
    std::vector<std::vector<double>> groups;
    long long skipped = 0;
};

DrawnScores draw_scores(IndexId id, const Partition& reference,
                        std::span<const ClusterSizeSpec> specs, int r, const SeededGenerator& gen,
                        Evaluator& ev) {
    DrawnScores out;
    out.groups.resize(specs.size());
    for (size_t si = 0; si < specs.size(); ++si) {
        SeededGenerator sub = gen.substream(si);
        out.groups[si].reserve(static_cast<size_t>(r));
        for (int i = 0; i < r; ++i) {
            const Partition b = sample_uniform_with_sizes(specs[si], sub);
            const IndexScore s = ev.eval(id, reference, b);
            if (s.defined())
                out.groups[si].push_back(*s.value);
            else
                ++out.skipped;
        }
    }
    return out;
}

}  // namespace

TestReport anova_baseline_test(IndexId id, const Partition& reference,
                               std::span<const ClusterSizeSpec> specs, int r,
                               const SeededGenerator& gen, Evaluator& ev) {
    if (r < 2) throw std::invalid_argument("ANOVA needs r >= 2");
    if (specs.size() < 2) throw std::invalid_argument("ANOVA needs at least two specs");
    if (reference.trivial()) throw std::invalid_argument("reference must satisfy 1 < k_A < n");
    for (const auto& s : specs)
        if (s.n() != reference.n()) throw std::invalid_argument("spec size mismatch");

    TestReport rep;
    rep.kind = TestReport::Kind::AnovaBaseline;
    rep.index = id;
    rep.groups = static_cast<int>(specs.size());
    rep.replicates = r;
    rep.seed = gen.seed();

    const auto data = draw_scores(id, reference, specs, r, gen, ev);
    rep.skipped_undefined = data.skipped;

    double grand = 0;
    int64_t total = 0;
    int k = 0;
    for (const auto& g : data.groups) {
        if (g.size() < 2) continue;
        ++k;
        for (double v : g) {
            grand += v;
            ++total;
        }
    }
    if (k < 2) {
        rep.error = "fewer than two usable groups";
        return rep;
    }
    grand /= static_cast<double>(total);
    double ssb = 0, ssw = 0;
    for (const auto& g : data.groups) {
        if (g.size() < 2) continue;
        double mean = 0;
        for (double v : g) mean += v;
        mean /= static_cast<double>(g.size());
        ssb += static_cast<double>(g.size()) * (mean - grand) * (mean - grand);
        for (double v : g) ssw += (v - mean) * (v - mean);
    }
    const double df1 = k - 1;
    const double df2 = static_cast<double>(total - k);
    if (ssw <= 0) {
        rep.error = "zero within-group variance, F undefined";
        return rep;
    }
    rep.statistic = (ssb / df1) / (ssw / df2);
    rep.p_value = f_sf(rep.statistic, df1, df2);
    rep.reject = rep.p_value < 0.05;
    return rep;
}

TestReport chisq_selection_bias_test(IndexId id, const Partition& reference,
                                     std::span<const ClusterSizeSpec> specs, int r,
                                     const SeededGenerator& gen, Evaluator& ev) {
    if (r < 2) throw std::invalid_argument("selection test needs r >= 2");
    if (specs.size() < 2) throw std::invalid_argument("selection test needs at least two specs");
    if (reference.trivial()) throw std::invalid_argument("reference must satisfy 1 < k_A < n");
    for (const auto& s : specs)
        if (s.n() != reference.n()) throw std::invalid_argument("spec size mismatch");

    TestReport rep;
    rep.kind = TestReport::Kind::ChisqSelection;
    rep.index = id;
    rep.groups = static_cast<int>(specs.size());
    rep.replicates = r;
    rep.seed = gen.seed();

    const double dir = descriptor(id).direction == Direction::HigherBetter ? 1.0 : -1.0;
    const size_t k = specs.size();
    std::vector<int64_t> wins(k, 0);
    int64_t pools = 0;
    for (int pool = 0; pool < r; ++pool) {
        SeededGenerator sub = gen.substream(1000003ull * static_cast<uint64_t>(pool));
        double best = 0;
        int best_at = -1;
        bool tie = false;
        for (size_t si = 0; si < k; ++si) {
            const Partition b = sample_uniform_with_sizes(specs[si], sub);
            const IndexScore s = ev.eval(id, reference, b);
            if (!s.defined()) {
                ++rep.skipped_undefined;
                continue;
            }
            const double v = dir * *s.value;
            if (best_at < 0 || v > best + 1e-12) {
                best = v;
                best_at = static_cast<int>(si);
                tie = false;
            } else if (std::abs(v - best) <= 1e-12) {
                tie = true;  // keep the lowest spec position
            }
        }
        if (best_at < 0) continue;
        ++wins[static_cast<size_t>(best_at)];
        ++pools;
        if (tie) ++rep.ties;
    }
    if (pools < static_cast<int64_t>(2 * k)) {
        rep.error = "too few usable pools";
        return rep;
    }
    const double expected = static_cast<double>(pools) / static_cast<double>(k);
    double stat = 0;
    for (int64_t w : wins) {
        const double d = static_cast<double>(w) - expected;
        stat += d * d / expected;
    }
    rep.statistic = stat;
    rep.p_value = chi_squared_sf(stat, static_cast<double>(k - 1));
    rep.reject = rep.p_value < 0.05;
    return rep;
}

double fisher_combine(std::span<const double> p_values) {
    if (p_values.empty()) throw std::invalid_argument("no p-values to combine");
    double stat = 0;
    for (double p : p_values) {
        if (!(p > 0) || p > 1) throw std::invalid_argument("p-values must lie in (0, 1]");
        stat += -2 * std::log(p);
    }
    return chi_squared_sf(stat, 2.0 * static_cast<double>(p_values.size()));
}

CdDeviation estimate_cd_deviation(const Partition& reference, const ClusterSizeSpec& s,
                                  const SamplingConfig& cfg) {
    if (reference.trivial()) throw std::invalid_argument("reference must satisfy 1 < k_A < n");
    if (s.n() != reference.n()) throw std::invalid_argument("spec size mismatch");
    if (s.k() == 1 || s.k() == s.n()) throw std::invalid_argument("trivial candidate sizes");

    // arccos Taylor coefficients (2k)! / (2^{2k} (k!)^2 (2k+1)), k = 1..5
    constexpr double kCoef[] = {1.0 / 6, 3.0 / 40, 15.0 / 336, 105.0 / 3456, 945.0 / 42240};

    CdDeviation out;
    double sum_cd = 0, sumsq_cd = 0;
    double odd_moments[5] = {0, 0, 0, 0, 0};
    int64_t count = 0;
    auto push = [&](double cc, double cd) {
        sum_cd += cd;
        sumsq_cd += cd * cd;
        double p = cc;
        for (int k = 0; k < 5; ++k) {
            p *= cc * cc;  // cc^(2k+3) after k increments starting from cc^1
            odd_moments[k] += p;
        }
        ++count;
    };
    auto eval_pair = [&](const Partition& b) {
        const auto pc = pair_counts(reference, b);
        const auto cc = pair_index_raw(IndexId::CorrelationCoefficient, to_real(pc));
        const auto cd = pair_index_raw(IndexId::CorrelationDistance, to_real(pc));
        push(cc.value, cd.value);
    };

    if (cfg.mode == SamplingConfig::Mode::ExactEnumeration) {
        for_each_with_sizes(s, [&](const Partition& b) { eval_pair(b); });
        out.exact = true;
    } else {
        SeededGenerator gen(cfg.seed, 0x7a3c9d);
        for (int64_t i = 0; i < cfg.samples; ++i) eval_pair(sample_uniform_with_sizes(s, gen));
    }
    const double mean_cd = sum_cd / static_cast<double>(count);
    out.deviation = mean_cd - 0.5;
    out.samples = count;
    if (!out.exact) {
        const double var =
            std::max(0.0, (sumsq_cd - sum_cd * sum_cd / static_cast<double>(count)) /
                              static_cast<double>(count - 1));
        out.mc_stderr = std::sqrt(var / static_cast<double>(count));
    }
    double series = 0;
    for (int k = 0; k < 5; ++k)
        series += kCoef[k] * odd_moments[k] / static_cast<double>(count);
    out.series = -series / std::numbers::pi;
    return out;
}

}  // namespace cluvalid
