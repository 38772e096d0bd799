// cluvalid: compare partitions with the full index catalogue, verify index
// properties by exhaustive search, and run the randomized baseline/bias
// experiments. See README.md for the command reference.

#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "cluvalid/enumeration.hpp"
#include "cluvalid/experiments.hpp"
#include "cluvalid/indices.hpp"
#include "cluvalid/io.hpp"
#include "cluvalid/properties.hpp"
#include "cluvalid/stats.hpp"

using namespace cluvalid;
using nlohmann::json;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitBudget = 3;

struct OutputOptions {
    std::string path;    // empty = stdout
    std::string format = "csv";
};

std::ostream& open_output(const OutputOptions& opt, std::ofstream& file) {
    if (opt.path.empty()) return std::cout;
    file.open(opt.path);
    if (!file) throw std::runtime_error("cannot open output file: " + opt.path);
    return file;
}

std::vector<IndexId> resolve_indices(const std::vector<std::string>& names, bool default_all) {
    std::vector<IndexId> ids;
    if (names.empty()) {
        if (default_all)
            for (const auto& d : index_registry()) ids.push_back(d.id);
        return ids;
    }
    for (const auto& raw : names) {
        std::stringstream ss(raw);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            if (tok.empty()) continue;
            const auto id = index_from_name(tok);
            if (!id) {
                std::ostringstream msg;
                msg << "unknown index '" << tok << "'; available:";
                for (const auto& d : index_registry()) msg << ' ' << d.name;
                throw CLI::ValidationError(msg.str());
            }
            ids.push_back(*id);
        }
    }
    return ids;
}

Partition load_reference(const std::string& spec) {
    if (spec == "fixture") return fixture_reference();
    return load_partition(spec);
}

std::string fmt(double v) {
    std::ostringstream out;
    out << std::setprecision(12) << v;
    return out.str();
}

std::string score_text(const IndexScore& s) {
    return s.defined() ? fmt(*s.value) : "undefined(" + s.reason + ")";
}

const char* direction_text(IndexId id) {
    return descriptor(id).direction == Direction::HigherBetter ? "higher_better" : "lower_better";
}

void emit_table(const OutputOptions& opt, const std::vector<std::string>& header,
                const std::vector<std::vector<std::string>>& rows) {
    std::ofstream file;
    std::ostream& out = open_output(opt, file);
    if (opt.format == "json") {
        json arr = json::array();
        for (const auto& r : rows) {
            json obj;
            for (size_t i = 0; i < header.size(); ++i) obj[header[i]] = r[i];
            arr.push_back(std::move(obj));
        }
        out << arr.dump(2) << '\n';
        return;
    }
    CsvWriter csv(out);
    csv.row(header);
    for (const auto& r : rows) csv.row(r);
}

std::string verdict_text(const PropertyVerdict& v) {
    switch (v.verdict) {
        case Verdict::Holds: return "holds-up-to-bound";
        case Verdict::Violated: return "violated";
        case Verdict::BiasClassified: return v.bias ? v.bias->label() : "?";
        case Verdict::Error: return "error";
    }
    return "?";
}

std::string witness_text(const PropertyVerdict& v) {
    if (!v.witness) return "";
    std::ostringstream out;
    const auto& w = *v.witness;
    for (size_t i = 0; i < w.partitions.size(); ++i) {
        if (i) out << " | ";
        out << partition_to_line(w.partitions[i]);
    }
    for (const auto& t : w.tallies)
        out << " (" << t[0] << "," << t[1] << "," << t[2] << "," << t[3] << ")";
    if (!w.values.empty()) {
        out << " scores:";
        for (double x : w.values) out << ' ' << fmt(x);
    }
    if (!w.note.empty()) out << " -- " << w.note;
    return out.str();
}

int run_score(const std::string& ref_path, const std::string& cand_path,
              const std::vector<std::string>& index_names, uint64_t seed, int64_t samples,
              const OutputOptions& out) {
    const Partition ref = load_reference(ref_path);
    const Partition cand = load_reference(cand_path);
    if (ref.n() != cand.n()) throw std::runtime_error("partition sizes differ");
    const auto ids = resolve_indices(index_names, true);

    SamplingConfig cfg;
    cfg.seed = seed;
    cfg.samples = samples;
    cfg.mode = ref.n() <= kEnumerationGuard ? SamplingConfig::Mode::ExactEnumeration
                                            : SamplingConfig::Mode::MonteCarlo;
    Evaluator ev(cfg);

    std::vector<std::vector<std::string>> rows;
    for (IndexId id : ids) {
        const auto s = ev.eval(id, ref, cand);
        rows.push_back({std::string(index_name(id)), score_text(s), direction_text(id),
                        s.mc_stderr ? fmt(*s.mc_stderr) : ""});
    }
    emit_table(out, {"index", "value", "direction", "mc_stderr"}, rows);
    return 0;
}

int run_matrix(const std::string& ref_path, const std::vector<std::string>& cands,
               const std::vector<std::string>& index_names, uint64_t seed, int64_t samples,
               const OutputOptions& out) {
    const Partition ref = load_reference(ref_path);
    const auto ids = resolve_indices(index_names, true);
    SamplingConfig cfg;
    cfg.seed = seed;
    cfg.samples = samples;
    cfg.mode = ref.n() <= kEnumerationGuard ? SamplingConfig::Mode::ExactEnumeration
                                            : SamplingConfig::Mode::MonteCarlo;
    Evaluator ev(cfg);

    std::vector<std::string> header{"candidate"};
    for (IndexId id : ids) header.emplace_back(index_name(id));
    std::vector<std::vector<std::string>> rows;
    for (const auto& path : cands) {
        const Partition cand = load_reference(path);
        if (cand.n() != ref.n()) throw std::runtime_error(path + ": partition sizes differ");
        std::vector<std::string> row{path};
        for (IndexId id : ids) row.push_back(score_text(ev.eval(id, ref, cand)));
        rows.push_back(std::move(row));
    }
    emit_table(out, header, rows);
    return 0;
}

int run_indices_list(const OutputOptions& out) {
    std::vector<std::vector<std::string>> rows;
    auto opt = [](const std::optional<double>& v) { return v ? fmt(*v) : ""; };
    for (const auto& d : index_registry()) {
        const char* family = d.family == Family::PairCounting          ? "pair-counting"
                             : d.family == Family::InformationTheoretic ? "information-theoretic"
                                                                        : "set-matching";
        rows.push_back({std::string(d.name), family, direction_text(d.id), opt(d.c_max),
                        opt(d.c_min), opt(d.c_base), opt(d.c_base_asymptotic),
                        std::string(index_name(d.equivalence_rep)), d.needs_sampling ? "yes" : "no",
                        d.linear_complexity ? "yes" : "no"});
    }
    emit_table(out, {"index", "family", "direction", "c_max", "c_min", "c_base",
                     "c_base_asymptotic", "equivalence_rep", "needs_sampling", "linear_complexity"},
               rows);
    return 0;
}

int run_properties(const std::vector<std::string>& index_names, int n_max, int n_max_sampled,
                   const OutputOptions& out) {
    const auto ids = resolve_indices(index_names, true);
    CheckBudget budget;
    budget.n_max = n_max;
    budget.n_max_sampled = n_max_sampled;
    const auto rows = property_matrix(ids, budget);

    std::vector<std::vector<std::string>> table;
    for (const auto& r : rows) {
        table.push_back({std::string(index_name(r.index)), std::string(property_name(r.property)),
                         r.error.empty() ? verdict_text(r) : "error: " + r.error,
                         r.constant ? fmt(*r.constant) : "", r.bound, witness_text(r),
                         std::to_string(r.skipped_undefined)});
    }
    emit_table(out, {"index", "property", "verdict", "constant", "bound", "witness", "skipped"},
               table);
    return 0;
}

int run_triplets(const std::string& manifest, const std::vector<std::string>& index_names,
                 uint64_t seed, int64_t samples, const OutputOptions& out) {
    const auto ids = resolve_indices(index_names, true);
    const auto paths = load_triplet_manifest(manifest);
    if (paths.empty()) throw std::runtime_error("empty triplet manifest");

    std::vector<TripletScores> triplets;
    SamplingConfig cfg;
    cfg.seed = seed;
    cfg.samples = samples;
    for (const auto& tp : paths) {
        const Partition a = load_reference(tp.reference);
        const Partition b1 = load_reference(tp.candidate1);
        const Partition b2 = load_reference(tp.candidate2);
        if (a.n() != b1.n() || a.n() != b2.n())
            throw std::runtime_error("triplet sizes differ: " + tp.reference);
        cfg.mode = a.n() <= kEnumerationGuard ? SamplingConfig::Mode::ExactEnumeration
                                              : SamplingConfig::Mode::MonteCarlo;
        Evaluator ev(cfg);
        triplets.push_back(score_triplet(a, b1, b2, ids, ev));
    }

    const auto stats = aggregate_inconsistency(triplets);
    std::ofstream file;
    std::ostream& os = open_output(out, file);
    if (out.format == "json") {
        json doc;
        doc["triplets"] = json::array();
        for (size_t t = 0; t < triplets.size(); ++t) {
            const auto& tr = triplets[t];
            json scores = json::array();
            for (size_t i = 0; i < tr.ids.size(); ++i) {
                const int pref = preference(descriptor(tr.ids[i]), tr.s1[i], tr.s2[i]);
                scores.push_back({{"index", index_name(tr.ids[i])},
                                  {"score_b1", score_text(tr.s1[i])},
                                  {"score_b2", score_text(tr.s2[i])},
                                  {"preference", pref > 0 ? "b1" : pref < 0 ? "b2" : "tie"}});
            }
            doc["triplets"].push_back({{"reference", partition_to_line(tr.a)},
                                       {"candidate1", partition_to_line(tr.b1)},
                                       {"candidate2", partition_to_line(tr.b2)},
                                       {"scores", std::move(scores)}});
        }
        doc["pairs"] = json::array();
        for (size_t i = 0; i < stats.ids.size(); ++i) {
            for (size_t j = i + 1; j < stats.ids.size(); ++j) {
                const double pct = stats.pct(i, j);
                doc["pairs"].push_back({{"index_a", index_name(stats.ids[i])},
                                        {"index_b", index_name(stats.ids[j])},
                                        {"consistent", stats.at(stats.consistent, i, j)},
                                        {"inconsistent", stats.at(stats.inconsistent, i, j)},
                                        {"ties", stats.at(stats.ties, i, j)},
                                        {"inconsistency_pct",
                                         std::isnan(pct) ? json() : json(pct)}});
            }
        }
        os << doc.dump(2) << '\n';
        return 0;
    }
    CsvWriter csv(os);
    csv.row({"triplet", "index", "score_b1", "score_b2", "preference"});
    for (size_t t = 0; t < triplets.size(); ++t) {
        const auto& tr = triplets[t];
        for (size_t i = 0; i < tr.ids.size(); ++i) {
            const int pref = preference(descriptor(tr.ids[i]), tr.s1[i], tr.s2[i]);
            csv.row({std::to_string(t), std::string(index_name(tr.ids[i])), score_text(tr.s1[i]),
                     score_text(tr.s2[i]), pref > 0 ? "b1" : pref < 0 ? "b2" : "tie"});
        }
    }
    os << '\n';
    csv.row({"index_a", "index_b", "consistent", "inconsistent", "ties", "inconsistency_pct"});
    for (size_t i = 0; i < stats.ids.size(); ++i) {
        for (size_t j = i + 1; j < stats.ids.size(); ++j) {
            const double pct = stats.pct(i, j);
            csv.row({std::string(index_name(stats.ids[i])), std::string(index_name(stats.ids[j])),
                     std::to_string(stats.at(stats.consistent, i, j)),
                     std::to_string(stats.at(stats.inconsistent, i, j)),
                     std::to_string(stats.at(stats.ties, i, j)),
                     std::isnan(pct) ? "n/a" : fmt(pct)});
        }
    }
    return 0;
}

int run_find_cover(const std::vector<std::string>& index_names, int n_max, uint64_t seed,
                   int64_t budget, const OutputOptions& out) {
    std::vector<IndexId> ids = resolve_indices(index_names, false);
    if (ids.empty())
        ids.assign(default_cover_indices().begin(), default_cover_indices().end());
    const auto cover = find_inconsistency_cover(ids, n_max, seed, budget);

    std::ofstream file;
    std::ostream& os = open_output(out, file);
    if (out.format == "json") {
        json doc;
        doc["complete"] = cover.complete;
        doc["examined"] = cover.examined;
        doc["triplets"] = json::array();
        for (const auto& e : cover.triplets) {
            json pairs = json::array();
            for (const auto& [x, y] : e.newly_covered)
                pairs.push_back({{"index_a", index_name(x)}, {"index_b", index_name(y)}});
            doc["triplets"].push_back({{"reference", partition_to_line(e.a)},
                                       {"candidate1", partition_to_line(e.b1)},
                                       {"candidate2", partition_to_line(e.b2)},
                                       {"newly_covered", std::move(pairs)}});
        }
        auto pair_list = [](const std::vector<std::pair<IndexId, IndexId>>& v) {
            json arr = json::array();
            for (const auto& [x, y] : v)
                arr.push_back({{"index_a", index_name(x)}, {"index_b", index_name(y)}});
            return arr;
        };
        doc["unorderable"] = pair_list(cover.unorderable);
        doc["uncovered"] = pair_list(cover.uncovered);
        os << doc.dump(2) << '\n';
    } else {
        CsvWriter csv(os);
        csv.row({"triplet", "role", "partition"});
        for (size_t t = 0; t < cover.triplets.size(); ++t) {
            csv.row({std::to_string(t), "reference", partition_to_line(cover.triplets[t].a)});
            csv.row({std::to_string(t), "candidate1", partition_to_line(cover.triplets[t].b1)});
            csv.row({std::to_string(t), "candidate2", partition_to_line(cover.triplets[t].b2)});
        }
        os << '\n';
        csv.row({"triplet", "newly_covered_pair"});
        for (size_t t = 0; t < cover.triplets.size(); ++t)
            for (const auto& [x, y] : cover.triplets[t].newly_covered)
                csv.row({std::to_string(t),
                         std::string(index_name(x)) + " vs " + std::string(index_name(y))});
        for (const auto& [x, y] : cover.unorderable)
            csv.row({"unorderable",
                     std::string(index_name(x)) + " vs " + std::string(index_name(y))});
        for (const auto& [x, y] : cover.uncovered)
            csv.row({"uncovered", std::string(index_name(x)) + " vs " + std::string(index_name(y))});
    }
    std::cerr << "cover size " << cover.triplets.size() << ", examined " << cover.examined
              << " candidates, " << (cover.complete ? "complete" : "incomplete") << '\n';
    return cover.complete ? 0 : kExitBudget;
}

int run_scan(bool k_scan, const std::string& ref_path, const std::vector<int>& xs, int samples,
             const std::vector<std::string>& index_names, uint64_t seed, int64_t mc_samples,
             const OutputOptions& out) {
    const Partition ref = load_reference(ref_path);
    const auto ids = resolve_indices(index_names, true);
    const auto curves = k_scan ? experiment_k_scan(ref, xs, samples, ids, seed,
                                                   static_cast<int>(mc_samples))
                               : experiment_s_scan(ref, xs, samples, ids, seed,
                                                   static_cast<int>(mc_samples));
    std::vector<std::vector<std::string>> rows;
    for (const auto& c : curves) {
        for (const auto& pt : c.points) {
            rows.push_back({std::string(index_name(c.index)), c.sweep, fmt(pt.x), fmt(pt.mean),
                            fmt(pt.q05), fmt(pt.q95), fmt(pt.stderr_mean),
                            std::to_string(pt.samples), std::to_string(c.seed)});
        }
    }
    emit_table(out, {"index", "sweep", "x", "mean", "q05", "q95", "stderr", "samples", "seed"},
               rows);
    return 0;
}

int run_baseline_tests(const std::vector<std::string>& index_names, const std::vector<int>& ns,
                       int r, uint64_t seed, int64_t mc_samples, const OutputOptions& out) {
    const auto ids = resolve_indices(index_names, true);
    const auto result = baseline_suite(ids, ns, r, seed, static_cast<int>(mc_samples));

    std::vector<std::vector<std::string>> rows;
    for (const auto& row : result.rows) {
        std::ostringstream specs;
        for (size_t i = 0; i < row.spec_ks.size(); ++i)
            specs << (i ? "|" : "") << "BS(" << row.n << ',' << row.spec_ks[i] << ')';
        auto report = [&](const TestReport& t, const char* kind) {
            rows.push_back({kind, std::string(index_name(row.index)), std::to_string(row.n),
                            specs.str(), std::to_string(t.replicates), std::to_string(t.seed),
                            t.ok() ? fmt(t.statistic) : "", t.ok() ? fmt(t.p_value) : "",
                            t.ok() ? (t.reject ? "reject" : "keep") : "", t.error});
        };
        report(row.anova, "anova-baseline");
        report(row.selection, "chisq-selection");
    }
    for (const auto& c : result.combined) {
        rows.push_back({"fisher-combined-anova", std::string(index_name(c.index)), "", "", "",
                        std::to_string(seed), "", fmt(c.anova_p),
                        c.anova_reject ? "reject" : "keep", ""});
        rows.push_back({"fisher-combined-selection", std::string(index_name(c.index)), "", "", "",
                        std::to_string(seed), "", fmt(c.selection_p),
                        c.selection_reject ? "reject" : "keep", ""});
    }
    emit_table(out, {"test", "index", "n", "specs", "r", "seed", "statistic", "p", "decision",
                     "error"},
               rows);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cluster similarity indices: scoring, property verification, and bias analysis"};
    app.require_subcommand(1);
    app.fallthrough();  // common flags may follow the subcommand name

    std::vector<std::string> index_names;
    uint64_t seed = 2024;
    int64_t samples = 10000;
    OutputOptions out;
    app.add_option("--indices", index_names, "comma-separated index names (default: all)");
    app.add_option("--seed", seed, "master seed for every randomized step");
    app.add_option("--samples", samples, "Monte Carlo samples for expectation terms");
    app.add_option("--out", out.path, "write the report to this file instead of stdout");
    app.add_option("--format", out.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));

    auto* score = app.add_subcommand("score", "score one candidate against a reference");
    std::string ref_path, cand_path;
    score->add_option("--ref", ref_path, "reference partition file (or 'fixture')")->required();
    score->add_option("--cand", cand_path, "candidate partition file")->required();

    auto* matrix = app.add_subcommand("matrix", "score many candidates against one reference");
    std::vector<std::string> cand_paths;
    matrix->add_option("--ref", ref_path, "reference partition file (or 'fixture')")->required();
    matrix->add_option("candidates", cand_paths, "candidate partition files")->required();

    auto* triplets = app.add_subcommand("triplets", "per-triplet consistency analysis");
    std::string manifest;
    triplets->add_option("--manifest", manifest,
                         "one triplet per line: reference candidate1 candidate2")
        ->required();

    auto* find_cover = app.add_subcommand("find-cover",
                                          "search for a small set of triplets exposing every "
                                          "pairwise index inconsistency");
    int n_max = 8;
    int64_t budget = 150000;
    find_cover->add_option("--n-max", n_max, "largest partition size searched");
    find_cover->add_option("--budget", budget, "candidate triplets examined before giving up");

    auto* properties = app.add_subcommand("properties", "property matrix with witnesses");
    int prop_n_max = 6, prop_n_sampled = 4;
    properties->add_option("--n-max", prop_n_max, "exhaustive bound for analytic indices");
    properties->add_option("--n-max-sampled", prop_n_sampled,
                           "exhaustive bound for AMI/SMI (exact enumeration)");

    auto* baseline = app.add_subcommand("baseline-tests",
                                        "ANOVA constant-baseline and chi-squared selection tests");
    std::vector<int> n_values{50, 100, 150, 200};
    int replicates = 100;
    baseline->add_option("--n-values", n_values, "element counts");
    baseline->add_option("--r", replicates, "replicates per size spec");

    auto* experiment = app.add_subcommand("experiment", "bias-scan experiments");
    experiment->require_subcommand(1);
    auto* kscan = experiment->add_subcommand("k-scan", "balanced k-cluster scan");
    std::vector<int> k_values{2, 4, 8, 16, 32, 64, 128, 256, 512};
    int scan_samples = 200;
    std::string scan_ref = "fixture";
    kscan->add_option("--ref", scan_ref, "reference partition file or 'fixture'");
    kscan->add_option("--k", k_values, "cluster counts");
    kscan->add_option("--scan-samples", scan_samples, "random clusterings per point");
    auto* sscan = experiment->add_subcommand("s-scan", "31 small clusters plus one large");
    std::vector<int> s_values;
    sscan->add_option("--ref", scan_ref, "reference partition file or 'fixture'");
    sscan->add_option("--s", s_values, "small-cluster sizes (default 1..28)");
    sscan->add_option("--scan-samples", scan_samples, "random clusterings per point");

    auto* indices_cmd = app.add_subcommand("indices", "registry inspection");
    auto* indices_list = indices_cmd->add_subcommand("list", "machine-readable index catalogue");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*score) return run_score(ref_path, cand_path, index_names, seed, samples, out);
        if (*matrix) return run_matrix(ref_path, cand_paths, index_names, seed, samples, out);
        if (*triplets) return run_triplets(manifest, index_names, seed, samples, out);
        if (*find_cover) return run_find_cover(index_names, n_max, seed, budget, out);
        if (*properties) return run_properties(index_names, prop_n_max, prop_n_sampled, out);
        if (*baseline)
            return run_baseline_tests(index_names, n_values, replicates, seed, samples, out);
        if (*kscan)
            return run_scan(true, scan_ref, k_values, scan_samples, index_names, seed, samples, out);
        if (*sscan) {
            if (s_values.empty())
                for (int s = 1; s <= 28; ++s) s_values.push_back(s);
            return run_scan(false, scan_ref, s_values, scan_samples, index_names, seed, samples, out);
        }
        if (*indices_list) return run_indices_list(out);
        std::cerr << "no subcommand selected\n";
        return kExitUsage;
    } catch (const CLI::ValidationError& e) {
        std::cerr << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitData;
    }
}
