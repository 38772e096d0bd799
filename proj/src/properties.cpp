#include "cluvalid/properties.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "cluvalid/enumeration.hpp"

namespace cluvalid {

std::string_view property_name(Property p) {
    switch (p) {
        case Property::MaxAgreement: return "max_agreement";
        case Property::MinAgreement: return "min_agreement";
        case Property::Symmetry: return "symmetry";
        case Property::Distance: return "distance";
        case Property::LinearComplexity: return "linear_complexity";
        case Property::Monotonicity: return "monotonicity";
        case Property::StrongMonotonicity: return "strong_monotonicity";
        case Property::ConstantBaselineExact: return "constant_baseline_exact";
        case Property::ConstantBaselineAsymptotic: return "constant_baseline_asymptotic";
        case Property::Bias: return "bias";
    }
    return "?";
}

std::string BiasClassification::label() const {
    if (pair_dec && pair_inc) return "both";
    if (pair_dec) return "PairDec";
    if (pair_inc) return "PairInc";
    return "none";
}

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

std::string bound_n(int n_max) {
    return "exhaustive over all partition tuples with n <= " + std::to_string(n_max);
}

std::string bound_grid(int g) {
    return "exhaustive over pair-count quadruples with N <= " + std::to_string(g);
}

/// Scores for all ordered pairs of the given partitions; NaN = undefined.
struct ScoreTable {
    const std::vector<Partition>* parts = nullptr;
    std::vector<double> v;
    long long undefined = 0;

    double at(size_t i, size_t j) const { return v[i * parts->size() + j]; }
};

ScoreTable build_table(IndexId id, const std::vector<Partition>& parts, Evaluator& ev) {
    ScoreTable t;
    t.parts = &parts;
    const size_t m = parts.size();
    t.v.assign(m * m, kNan);
    for (size_t i = 0; i < m; ++i) {
        for (size_t j = 0; j < m; ++j) {
            const IndexScore s = ev.eval(id, parts[i], parts[j]);
            if (s.defined())
                t.v[i * m + j] = *s.value;
            else
                ++t.undefined;
        }
    }
    return t;
}

std::map<Partition, size_t> index_of(const std::vector<Partition>& parts) {
    std::map<Partition, size_t> m;
    for (size_t i = 0; i < parts.size(); ++i) m.emplace(parts[i], i);
    return m;
}

PropertyVerdict make(IndexId id, Property p) {
    PropertyVerdict v;
    v.index = id;
    v.property = p;
    return v;
}

}  // namespace

PropertyVerdict check_max_agreement(IndexId id, int n_max, Evaluator& ev) {
    auto out = make(id, Property::MaxAgreement);
    out.bound = bound_n(n_max);
    const double dir = descriptor(id).direction == Direction::HigherBetter ? 1.0 : -1.0;
    std::optional<double> c;
    Partition c_holder;

    // pass 1: V(A,A) must be one constant wherever defined
    for (int n = 2; n <= n_max; ++n) {
        for (const auto& a : all_partitions(n)) {
            const IndexScore s = ev.eval(id, a, a);
            if (!s.defined()) {
                ++out.skipped_undefined;
                continue;
            }
            if (!c) {
                c = *s.value;
                c_holder = a;
            } else if (std::abs(*s.value - *c) > 1e-9) {
                out.verdict = Verdict::Violated;
                out.witness = Witness{{c_holder, a}, {}, {*c, *s.value}, "self-similarity is not constant"};
                return out;
            }
        }
    }
    if (!c) {
        out.verdict = Verdict::Violated;
        out.witness = Witness{{}, {}, {}, "self-similarity undefined for every partition"};
        return out;
    }
    // pass 2: the constant must be a strict optimum over B != A
    for (int n = 2; n <= n_max; ++n) {
        const auto parts = all_partitions(n);
        for (const auto& a : parts) {
            for (const auto& b : parts) {
                if (a == b) continue;
                const IndexScore s = ev.eval(id, a, b);
                if (!s.defined()) {
                    ++out.skipped_undefined;
                    continue;
                }
                if (dir * *s.value >= dir * *c - 1e-12) {
                    out.verdict = Verdict::Violated;
                    out.witness = Witness{{a, b}, {}, {*c, *s.value},
                                          "optimum attained by a different partition"};
                    return out;
                }
            }
        }
    }
    out.verdict = Verdict::Holds;
    out.constant = c;
    return out;
}

PropertyVerdict check_min_agreement(IndexId id, int grid_n) {
    auto out = make(id, Property::MinAgreement);
    if (!is_pair_counting(id)) {
        out.error = "minimal agreement applies to pair-counting indices only";
        return out;
    }
    out.bound = bound_grid(grid_n);
    const double dir = descriptor(id).direction == Direction::HigherBetter ? 1.0 : -1.0;
    std::optional<double> c;
    std::array<int64_t, 4> c_holder{};

    // pass 1: V(0, N10, N01, 0) must be one constant wherever defined
    for (int64_t b = 0; b <= grid_n; ++b) {
        for (int64_t cq = b == 0 ? 1 : 0; b + cq <= grid_n; ++cq) {
            const auto raw = pair_index_raw(id, {0, static_cast<double>(b), static_cast<double>(cq), 0});
            if (raw.reason) {
                ++out.skipped_undefined;
                continue;
            }
            if (!c) {
                c = raw.value;
                c_holder = {0, b, cq, 0};
            } else if (std::abs(raw.value - *c) > 1e-9) {
                out.verdict = Verdict::Violated;
                out.witness = Witness{{}, {c_holder, {0, b, cq, 0}}, {*c, raw.value},
                                      "value at N11=N00=0 is not constant"};
                return out;
            }
        }
    }
    if (!c) {
        out.verdict = Verdict::Violated;
        out.witness = Witness{{}, {}, {}, "undefined at every N11=N00=0 quadruple"};
        return out;
    }
    // pass 2: every quadruple with N11+N00 > 0 must score strictly better
    for (int64_t a = 0; a <= grid_n; ++a) {
        for (int64_t b = 0; a + b <= grid_n; ++b) {
            for (int64_t cq = 0; a + b + cq <= grid_n; ++cq) {
                for (int64_t d = (a + b + cq == 0) ? 1 : 0; a + b + cq + d <= grid_n; ++d) {
                    if (a + d == 0) continue;
                    const auto raw = pair_index_raw(id, {static_cast<double>(a), static_cast<double>(b),
                                                         static_cast<double>(cq), static_cast<double>(d)});
                    if (raw.reason) {
                        ++out.skipped_undefined;
                        continue;
                    }
                    if (dir * raw.value <= dir * *c + 1e-12) {
                        out.verdict = Verdict::Violated;
                        out.witness = Witness{{}, {c_holder, {a, b, cq, d}}, {*c, raw.value},
                                              "worst value attained with N11+N00 > 0"};
                        return out;
                    }
                }
            }
        }
    }
    out.verdict = Verdict::Holds;
    out.constant = c;
    return out;
}

PropertyVerdict check_symmetry(IndexId id, int n_max, Evaluator& ev) {
    auto out = make(id, Property::Symmetry);
    out.bound = bound_n(n_max);
    for (int n = 2; n <= n_max; ++n) {
        const auto parts = all_partitions(n);
        const auto table = build_table(id, parts, ev);
        out.skipped_undefined += table.undefined;
        for (size_t i = 0; i < parts.size(); ++i) {
            for (size_t j = i + 1; j < parts.size(); ++j) {
                const double x = table.at(i, j), y = table.at(j, i);
                const bool dx = !std::isnan(x), dy = !std::isnan(y);
                if (dx != dy || (dx && std::abs(x - y) > 1e-9)) {
                    out.verdict = Verdict::Violated;
                    out.witness = Witness{{parts[i], parts[j]}, {}, {x, y}, "order of arguments matters"};
                    return out;
                }
            }
        }
    }
    out.verdict = Verdict::Holds;
    return out;
}

PropertyVerdict check_distance(IndexId id, int n_max, Evaluator& ev) {
    auto out = make(id, Property::Distance);
    out.bound = bound_n(n_max);

    auto sym = check_symmetry(id, n_max, ev);
    if (!sym.holds()) {
        out.verdict = Verdict::Violated;
        out.witness = sym.witness;
        if (out.witness) out.witness->note = "not symmetric, so not a distance";
        return out;
    }
    auto max_agree = check_max_agreement(id, n_max, ev);
    if (!max_agree.holds()) {
        out.verdict = Verdict::Violated;
        out.witness = max_agree.witness;
        if (out.witness) out.witness->note = "no maximal agreement, so not positive-definite";
        return out;
    }
    const double c = *max_agree.constant;
    const bool higher = descriptor(id).direction == Direction::HigherBetter;

    for (int n = 2; n <= n_max; ++n) {
        const auto parts = all_partitions(n);
        const auto table = build_table(id, parts, ev);
        out.skipped_undefined += table.undefined;
        const size_t m = parts.size();
        auto dist = [&](size_t i, size_t j) {
            const double v = table.at(i, j);
            return higher ? c - v : v - c;
        };
        for (size_t i = 0; i < m; ++i) {
            for (size_t j = 0; j < m; ++j) {
                if (std::isnan(table.at(i, j))) continue;
                const double dij = dist(i, j);
                for (size_t k = 0; k < m; ++k) {
                    if (std::isnan(table.at(i, k)) || std::isnan(table.at(j, k))) continue;
                    if (dist(i, k) > dij + dist(j, k) + 1e-9) {
                        out.verdict = Verdict::Violated;
                        out.witness = Witness{{parts[i], parts[j], parts[k]},
                                              {},
                                              {table.at(i, k), table.at(i, j), table.at(j, k)},
                                              "triangle inequality fails for d = |c_max - V|"};
                        return out;
                    }
                }
            }
        }
    }
    out.verdict = Verdict::Holds;
    out.constant = c;
    return out;
}

PropertyVerdict check_monotonicity(IndexId id, int n_max, Evaluator& ev) {
    auto out = make(id, Property::Monotonicity);
    out.bound = bound_n(n_max) + ", single perfect splits/merges (Theorem-2 complete)";
    const double dir = descriptor(id).direction == Direction::HigherBetter ? 1.0 : -1.0;
    for (int n = 2; n <= n_max; ++n) {
        const auto parts = all_partitions(n);
        const auto table = build_table(id, parts, ev);
        out.skipped_undefined += table.undefined;
        const auto idx = index_of(parts);
        // the index's worst attainable score; a tie there is not a violation
        // since nothing below the floor can be ordered
        double worst = std::numeric_limits<double>::infinity();
        for (double v : table.v)
            if (!std::isnan(v)) worst = std::min(worst, dir * v);
        auto improves = [&](double before, double after) {
            if (dir * after > dir * before + 1e-12) return true;
            return dir * before <= worst + 1e-12 && dir * after <= worst + 1e-12;
        };
        for (size_t ai = 0; ai < parts.size(); ++ai) {
            const auto& a = parts[ai];
            if (a.trivial()) continue;  // k_A in {1, n} excluded
            for (size_t bi = 0; bi < parts.size(); ++bi) {
                const auto& b = parts[bi];
                auto improved = perfect_splits(b, a);
                auto merges = perfect_merges(b, a);
                improved.insert(improved.end(), merges.begin(), merges.end());
                for (const auto& b2 : improved) {
                    const size_t b2i = idx.at(b2);
                    const double before_ab = table.at(ai, bi), after_ab = table.at(ai, b2i);
                    const double before_ba = table.at(bi, ai), after_ba = table.at(b2i, ai);
                    if (std::isnan(before_ab) || std::isnan(after_ab) || std::isnan(before_ba) ||
                        std::isnan(after_ba)) {
                        ++out.skipped_undefined;
                        continue;
                    }
                    if (!improves(before_ab, after_ab) || !improves(before_ba, after_ba)) {
                        out.verdict = Verdict::Violated;
                        out.witness = Witness{{a, b, b2},
                                              {},
                                              {before_ab, after_ab, before_ba, after_ba},
                                              "perfect split/merge fails to strictly improve the score"};
                        return out;
                    }
                }
            }
        }
    }
    out.verdict = Verdict::Holds;
    return out;
}

PropertyVerdict check_strong_monotonicity(IndexId id, int grid_bound) {
    auto out = make(id, Property::StrongMonotonicity);
    if (!is_pair_counting(id)) {
        out.error = "strong monotonicity applies to pair-counting indices only";
        return out;
    }
    out.bound = bound_grid(grid_bound);
    const double dir = descriptor(id).direction == Direction::HigherBetter ? 1.0 : -1.0;

    auto value = [&](int64_t a, int64_t b, int64_t c, int64_t d) {
        return pair_index_raw(id, {static_cast<double>(a), static_cast<double>(b),
                                   static_cast<double>(c), static_cast<double>(d)});
    };
    auto fail = [&](std::array<int64_t, 4> from, std::array<int64_t, 4> to, double v0, double v1,
                    const char* what) {
        out.verdict = Verdict::Violated;
        out.witness = Witness{{}, {from, to}, {v0, v1}, what};
    };

    for (int64_t a = 0; a <= grid_bound; ++a) {
        for (int64_t b = 0; a + b <= grid_bound; ++b) {
            for (int64_t c = 0; a + b + c <= grid_bound; ++c) {
                for (int64_t d = 0; a + b + c + d <= grid_bound; ++d) {
                    if (a + b + c + d == 0) continue;
                    const auto v0 = value(a, b, c, d);
                    if (v0.reason) {
                        ++out.skipped_undefined;
                        continue;
                    }
                    if (b + c > 0) {  // must increase in N11 and N00
                        for (int var : {0, 3}) {
                            const auto v1 = var == 0 ? value(a + 1, b, c, d) : value(a, b, c, d + 1);
                            if (v1.reason) {
                                ++out.skipped_undefined;
                                continue;
                            }
                            if (dir * v1.value <= dir * v0.value + 1e-12) {
                                fail({a, b, c, d},
                                     {a + (var == 0), b, c, d + (var == 3)}, v0.value, v1.value,
                                     var == 0 ? "not strictly increasing in N11"
                                              : "not strictly increasing in N00");
                                return out;
                            }
                        }
                    }
                    if (a + d > 0) {  // must decrease in N10 and N01
                        for (int var : {1, 2}) {
                            const auto v1 = var == 1 ? value(a, b + 1, c, d) : value(a, b, c + 1, d);
                            if (v1.reason) {
                                ++out.skipped_undefined;
                                continue;
                            }
                            if (dir * v1.value >= dir * v0.value - 1e-12) {
                                fail({a, b, c, d},
                                     {a, b + (var == 1), c + (var == 2), d}, v0.value, v1.value,
                                     var == 1 ? "not strictly decreasing in N10"
                                              : "not strictly decreasing in N01");
                                return out;
                            }
                        }
                    }
                }
            }
        }
    }
    out.verdict = Verdict::Holds;
    return out;
}

PropertyVerdict check_constant_baseline_exact(IndexId id, int n_max, Evaluator& ev) {
    auto out = make(id, Property::ConstantBaselineExact);
    out.bound = "exact means over C(s) for all (A, s) with 3 <= n <= " + std::to_string(n_max) +
                ", 1 < k_A < n";
    struct Group {
        Partition a;
        ClusterSizeSpec s;
        double mean;
    };
    std::optional<Group> first;
    for (int n = 3; n <= n_max; ++n) {
        const auto parts = all_partitions(n);
        const auto specs = all_size_specs(n);
        std::vector<std::vector<Partition>> by_spec;
        by_spec.reserve(specs.size());
        for (const auto& s : specs) by_spec.push_back(partitions_with_sizes(s));
        for (const auto& a : parts) {
            if (a.trivial()) continue;
            for (size_t si = 0; si < specs.size(); ++si) {
                double sum = 0;
                int64_t cnt = 0;
                for (const auto& b : by_spec[si]) {
                    const IndexScore s = ev.eval(id, a, b);
                    if (!s.defined()) {
                        ++out.skipped_undefined;
                        continue;
                    }
                    sum += *s.value;
                    ++cnt;
                }
                if (cnt == 0) continue;  // group undefined throughout, e.g. CC against trivial sizes
                const double mean = sum / static_cast<double>(cnt);
                if (!first) {
                    first = Group{a, specs[si], mean};
                } else if (std::abs(mean - first->mean) > 1e-9) {
                    std::ostringstream note;
                    note << "group means differ: sizes [";
                    for (int v : first->s.sizes) note << v << ' ';
                    note << "] vs [";
                    for (int v : specs[si].sizes) note << v << ' ';
                    note << "]";
                    out.verdict = Verdict::Violated;
                    out.witness = Witness{{first->a, a}, {}, {first->mean, mean}, note.str()};
                    return out;
                }
            }
        }
    }
    if (!first) {
        out.error = "no defined groups";
        return out;
    }
    out.verdict = Verdict::Holds;
    out.constant = first->mean;
    return out;
}

PropertyVerdict check_asymptotic_baseline(IndexId id, const CheckBudget& budget) {
    auto out = make(id, Property::ConstantBaselineAsymptotic);
    if (!is_pair_counting(id)) {
        out.error = "asymptotic baseline applies to pair-counting indices only";
        return out;
    }
    out.bound = "substituted index on m_A, m_B in {0.01N..0.99N}, N in {100, 10^4}";
    std::optional<double> c;
    std::array<double, 3> holder{};
    for (double total : budget.grid_pair_totals) {
        for (int i = 1; i <= 99; ++i) {
            for (int j = 1; j <= 99; ++j) {
                const double ma = total * i / 100.0, mb = total * j / 100.0;
                const double v = substituted_index(id, ma, mb, total);
                if (std::isnan(v)) {
                    ++out.skipped_undefined;
                    continue;
                }
                if (!c) {
                    c = v;
                    holder = {ma, mb, total};
                } else if (std::abs(v - *c) > budget.tol) {
                    std::ostringstream note;
                    note << "substituted value varies: V(s)(" << holder[0] << "," << holder[1]
                         << ";N=" << holder[2] << ") vs V(s)(" << ma << "," << mb << ";N=" << total << ")";
                    out.verdict = Verdict::Violated;
                    out.witness = Witness{{}, {}, {*c, v}, note.str()};
                    return out;
                }
            }
        }
    }
    out.verdict = Verdict::Holds;
    out.constant = c;
    return out;
}

BiasClassification classify_bias(IndexId id, const CheckBudget& budget) {
    if (!is_pair_counting(id)) throw std::invalid_argument("bias applies to pair-counting indices only");
    BiasClassification bc;
    const double dir = descriptor(id).direction == Direction::HigherBetter ? 1.0 : -1.0;
    for (double total : budget.grid_pair_totals) {
        const double h = total * budget.derivative_step_rel;
        for (int i = 1; i <= 99; ++i) {
            for (int j = 1; j <= 99; ++j) {
                const double ma = total * i / 100.0, mb = total * j / 100.0;
                const double up = substituted_index(id, ma, mb + h, total);
                const double down = substituted_index(id, ma, mb - h, total);
                if (std::isnan(up) || std::isnan(down)) continue;
                const double deriv = dir * (up - down) / (2 * h);
                if (deriv > budget.derivative_threshold && !bc.pair_dec) {
                    bc.pair_dec = true;
                    bc.witnesses.push_back({ma, mb, total, deriv});
                } else if (deriv < -budget.derivative_threshold && !bc.pair_inc) {
                    bc.pair_inc = true;
                    bc.witnesses.push_back({ma, mb, total, deriv});
                }
                if (bc.pair_dec && bc.pair_inc) return bc;
            }
        }
    }
    return bc;
}

PropertyVerdict linear_complexity_verdict(IndexId id) {
    auto out = make(id, Property::LinearComplexity);
    out.bound = "by construction";
    if (descriptor(id).linear_complexity) {
        out.verdict = Verdict::Holds;
    } else {
        out.verdict = Verdict::Violated;
        out.witness = Witness{{}, {}, {}, "expected-mutual-information term is superlinear"};
    }
    return out;
}

std::vector<PropertyVerdict> property_matrix(std::span<const IndexId> ids, const CheckBudget& budget) {
    SamplingConfig cfg;
    cfg.mode = SamplingConfig::Mode::ExactEnumeration;  // deterministic verdicts
    Evaluator ev(cfg);

    std::vector<PropertyVerdict> rows;
    auto run = [&rows](IndexId id, Property p, auto&& fn) {
        try {
            rows.push_back(fn());
        } catch (const std::exception& e) {
            auto v = make(id, p);
            v.error = e.what();
            rows.push_back(std::move(v));
        }
    };

    for (IndexId id : ids) {
        const auto& d = descriptor(id);
        const int n_max = d.needs_sampling ? std::min(budget.n_max, budget.n_max_sampled) : budget.n_max;
        const bool pair = d.family == Family::PairCounting;

        run(id, Property::MaxAgreement, [&] { return check_max_agreement(id, n_max, ev); });
        if (pair)
            run(id, Property::MinAgreement, [&] { return check_min_agreement(id, budget.min_grid); });
        run(id, Property::Symmetry, [&] { return check_symmetry(id, n_max, ev); });
        run(id, Property::Distance, [&] { return check_distance(id, n_max, ev); });
        run(id, Property::LinearComplexity, [&] { return linear_complexity_verdict(id); });
        run(id, Property::Monotonicity, [&] { return check_monotonicity(id, n_max, ev); });
        if (pair) {
            run(id, Property::StrongMonotonicity,
                [&] { return check_strong_monotonicity(id, budget.strong_grid); });
        }
        run(id, Property::ConstantBaselineExact,
            [&] { return check_constant_baseline_exact(id, n_max, ev); });
        if (pair) {
            run(id, Property::ConstantBaselineAsymptotic,
                [&] { return check_asymptotic_baseline(id, budget); });
            run(id, Property::Bias, [&] {
                auto v = make(id, Property::Bias);
                v.bias = classify_bias(id, budget);
                v.verdict = Verdict::BiasClassified;
                v.bound = "derivative signs of the substituted index over the grid";
                return v;
            });
        }
    }
    return rows;
}

}  // namespace cluvalid
