#include "edmselect/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include <nlohmann/json.hpp>

#include "edmselect/parallel.hpp"
#include "edmselect/version.hpp"

namespace edmselect {

using ordered_json = nlohmann::ordered_json;

namespace {

std::string fmt6(double v) {
    if (std::isnan(v)) return "NA";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

// Evaluation always projects the subset in ascending attribute order, so a
// given feature set scores bit-identically no matter which ranking
// produced it.
CrossValResult evaluate_subset(const Dataset& d, const std::vector<int>& attributes,
                               const Classifier& clf, const FoldAssignment& folds) {
    std::vector<int> sorted = attributes;
    std::sort(sorted.begin(), sorted.end());
    Dataset projected = project(d, sorted);
    return cross_validate(projected, clf, folds);
}

}  // namespace

std::vector<SubsetEvaluation> sweep(const Dataset& d, const Ranking& ranking,
                                    const FoldAssignment& folds, int jobs, int k_min, int k_max) {
    int n_predictors = static_cast<int>(d.n_predictors());
    if (n_predictors < 2) throw ArgumentError("sweep needs at least 2 predictors");
    if (static_cast<int>(ranking.ordered.size()) != n_predictors) {
        throw ArgumentError("ranking does not cover the dataset's predictors");
    }
    if (k_min < 2) throw ArgumentError("sweep starts at cardinality 2");
    if (k_max < 0 || k_max > n_predictors) k_max = n_predictors;
    if (k_min > k_max) throw ArgumentError("empty sweep range");

    auto nb = make_naive_bayes();
    std::vector<SubsetEvaluation> evals(static_cast<std::size_t>(k_max - k_min + 1));
    run_parallel(evals.size(), jobs, [&](std::size_t i) {
        int k = k_min + static_cast<int>(i);
        SubsetEvaluation ev;
        ev.method = ranking.method;
        ev.k = k;
        ev.attributes.assign(ranking.ordered.begin(), ranking.ordered.begin() + k);
        auto cv = evaluate_subset(d, ev.attributes, *nb, folds);
        ev.metrics = cv.pooled;
        ev.skipped_folds = static_cast<int>(cv.skipped_folds.size());
        evals[i] = std::move(ev);
    });
    return evals;
}

PeakResult find_peak(const std::vector<SubsetEvaluation>& evals, const std::string& metric) {
    if (evals.empty()) throw ArgumentError("find_peak on an empty sweep");
    if (metric != "roc" && metric != "macro_f1") {
        throw ArgumentError("unknown peak metric '" + metric + "' (roc or macro_f1)");
    }
    std::vector<const SubsetEvaluation*> by_k;
    by_k.reserve(evals.size());
    for (const auto& ev : evals) by_k.push_back(&ev);
    std::sort(by_k.begin(), by_k.end(),
              [](const SubsetEvaluation* a, const SubsetEvaluation* b) { return a->k < b->k; });
    PeakResult peak;
    peak.method = evals.front().method;
    peak.metric = metric;
    bool found = false;
    for (const auto* ev : by_k) {
        double v = metric == "roc" ? ev->metrics.roc_value : ev->metrics.macro_f1;
        if (std::isnan(v)) continue;
        if (!found || v > peak.value) {
            peak.value = v;
            peak.k = ev->k;
            found = true;
        }
    }
    if (!found) throw UndefinedMetricError("find_peak: metric undefined over the whole sweep");
    return peak;
}

std::vector<PeakResult> compute_peaks(
    const std::map<std::string, std::vector<SubsetEvaluation>>& curves) {
    std::vector<PeakResult> peaks;
    for (const auto& [name, evals] : curves) {
        (void)name;
        peaks.push_back(find_peak(evals, "roc"));
        peaks.push_back(find_peak(evals, "macro_f1"));
    }
    return peaks;
}

std::vector<NamedSubset> default_subsets(
    const std::map<std::string, std::vector<SubsetEvaluation>>& curves,
    const std::map<std::string, Ranking>& rankings) {
    std::vector<NamedSubset> subsets;
    auto add = [&](const PeakResult& peak) {
        std::string name = method_name(peak.method) + "-" + std::to_string(peak.k);
        for (const auto& s : subsets) {
            if (s.name == name) return;
        }
        const Ranking& r = rankings.at(method_name(peak.method));
        NamedSubset s;
        s.name = name;
        s.method = peak.method;
        s.k = peak.k;
        s.attributes.assign(r.ordered.begin(), r.ordered.begin() + peak.k);
        subsets.push_back(std::move(s));
    };
    for (const auto& peak : compute_peaks(curves)) add(peak);
    return subsets;
}

void run_benchmark_grid(BenchmarkReport& report, const Dataset& d,
                        const std::vector<const Classifier*>& classifiers,
                        const FoldAssignment& folds, int jobs) {
    if (report.subsets.empty()) throw ArgumentError("benchmark needs at least one subset");
    report.classifiers.clear();
    for (const auto* clf : classifiers) report.classifiers.push_back(clf->name());
    report.grid.assign(classifiers.size() * report.subsets.size(), {});
    run_parallel(report.grid.size(), jobs, [&](std::size_t i) {
        std::size_t ci = i / report.subsets.size();
        std::size_t si = i % report.subsets.size();
        BenchmarkCell cell;
        cell.classifier = classifiers[ci]->name();
        cell.subset = report.subsets[si].name;
        try {
            auto cv = evaluate_subset(d, report.subsets[si].attributes, *classifiers[ci], folds);
            cell.metrics = cv.pooled;
            cell.skipped_folds = static_cast<int>(cv.skipped_folds.size());
            cell.ok = true;
        } catch (const std::exception& e) {
            cell.ok = false;
            cell.error = e.what();
        }
        report.grid[i] = std::move(cell);
    });
}

void write_sweep_curves_csv(const std::map<std::string, std::vector<SubsetEvaluation>>& curves,
                            std::ostream& out) {
    out << "method,k,roc,macro_f1,accuracy,rmse\n";
    for (const auto& [name, evals] : curves) {
        std::vector<const SubsetEvaluation*> by_k;
        for (const auto& ev : evals) by_k.push_back(&ev);
        std::sort(by_k.begin(), by_k.end(),
                  [](const SubsetEvaluation* a, const SubsetEvaluation* b) { return a->k < b->k; });
        for (const auto* ev : by_k) {
            out << name << ',' << ev->k << ',' << fmt6(ev->metrics.roc_value) << ','
                << fmt6(ev->metrics.macro_f1) << ',' << fmt6(ev->metrics.accuracy) << ','
                << fmt6(ev->metrics.rmse) << '\n';
        }
    }
}

void write_peaks_csv(const std::vector<PeakResult>& peaks, std::ostream& out) {
    out << "method,metric,k,value\n";
    for (const auto& p : peaks) {
        out << method_name(p.method) << ',' << p.metric << ',' << p.k << ',' << fmt6(p.value)
            << '\n';
    }
}

void write_grid_csv(const std::vector<BenchmarkCell>& grid, std::ostream& out) {
    out << "classifier,subset,accuracy,rmse,status\n";
    for (const auto& cell : grid) {
        out << cell.classifier << ',' << cell.subset << ',';
        if (cell.ok) {
            out << fmt6(cell.metrics.accuracy) << ',' << fmt6(cell.metrics.rmse) << ",ok";
        } else {
            std::string reason = cell.error;
            std::replace(reason.begin(), reason.end(), ',', ';');
            std::replace(reason.begin(), reason.end(), '\n', ' ');
            out << ",,failed: " << reason;
        }
        out << '\n';
    }
}

namespace {

ordered_json metrics_json(const MetricBundle& m) {
    ordered_json j;
    j["roc"] = std::isnan(m.roc_value) ? ordered_json(nullptr) : ordered_json(m.roc_value);
    j["macro_f1"] = m.macro_f1;
    j["accuracy"] = m.accuracy;
    j["rmse"] = m.rmse;
    return j;
}

ordered_json report_json(const BenchmarkReport& r) {
    ordered_json j;
    j["version"] = kVersion;
    j["config"] = ordered_json::parse(config_to_json(r.config));
    j["dataset"] = {{"rows", r.n_rows},
                    {"predictors", r.attribute_names.empty() ? 0 : r.attribute_names.size() - 1},
                    {"class", r.class_name},
                    {"positive", r.positive_label}};
    ordered_json rankings(ordered_json::value_t::object);
    for (const auto& [name, ranking] : r.rankings) {
        ordered_json one;
        one["attributes"] = ranking.ordered;
        ordered_json names = ordered_json::array();
        for (int a : ranking.ordered) names.push_back(r.attribute_names[static_cast<std::size_t>(a)]);
        one["names"] = names;
        one["merits"] = ranking.merits;
        rankings[name] = one;
    }
    j["rankings"] = rankings;
    ordered_json curves(ordered_json::value_t::object);
    for (const auto& [name, evals] : r.curves) {
        ordered_json list = ordered_json::array();
        std::vector<const SubsetEvaluation*> by_k;
        for (const auto& ev : evals) by_k.push_back(&ev);
        std::sort(by_k.begin(), by_k.end(),
                  [](const SubsetEvaluation* a, const SubsetEvaluation* b) { return a->k < b->k; });
        for (const auto* ev : by_k) {
            ordered_json one;
            one["k"] = ev->k;
            one["attributes"] = ev->attributes;
            one["metrics"] = metrics_json(ev->metrics);
            one["skipped_folds"] = ev->skipped_folds;
            list.push_back(one);
        }
        curves[name] = list;
    }
    j["sweep_curves"] = curves;
    ordered_json peaks = ordered_json::array();
    for (const auto& p : r.peaks) {
        peaks.push_back({{"method", method_name(p.method)},
                         {"metric", p.metric},
                         {"k", p.k},
                         {"value", p.value}});
    }
    j["peaks"] = peaks;
    ordered_json subsets = ordered_json::array();
    for (const auto& s : r.subsets) {
        subsets.push_back({{"name", s.name}, {"attributes", s.attributes}});
    }
    j["subsets"] = subsets;
    ordered_json grid = ordered_json::array();
    for (const auto& cell : r.grid) {
        ordered_json one;
        one["classifier"] = cell.classifier;
        one["subset"] = cell.subset;
        one["ok"] = cell.ok;
        if (cell.ok) {
            one["metrics"] = metrics_json(cell.metrics);
            one["skipped_folds"] = cell.skipped_folds;
        } else {
            one["error"] = cell.error;
        }
        grid.push_back(one);
    }
    j["benchmark"] = grid;
    return j;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    out << content;
    if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace

void emit_report(const BenchmarkReport& r, const std::string& dir) {
    std::filesystem::path base(dir);
    std::error_code ec;
    std::filesystem::create_directories(base, ec);
    if (ec) throw IoError("cannot create output directory " + dir + ": " + ec.message());

    std::ostringstream curves;
    write_sweep_curves_csv(r.curves, curves);
    write_file(base / "sweep_curves.csv", curves.str());

    std::ostringstream peaks;
    write_peaks_csv(r.peaks, peaks);
    write_file(base / "peaks.csv", peaks.str());

    std::ostringstream grid;
    write_grid_csv(r.grid, grid);
    write_file(base / "benchmark_grid.csv", grid.str());

    write_file(base / "report.json", report_json(r).dump(2) + "\n");
    write_file(base / "run_config.json", config_to_json(r.config));
}

Dataset acquire_dataset(const RunConfig& cfg) {
    if (cfg.input_path.empty()) {
        Dataset d = generate_synthetic(cfg.synth);
        if (!cfg.class_attribute.empty()) set_class_attribute(d, cfg.class_attribute);
        if (!cfg.positive_label.empty()) set_positive_label(d, cfg.positive_label);
        return d;
    }
    return load_dataset(cfg.input_path, cfg.class_attribute, cfg.positive_label);
}

std::map<std::string, Ranking> run_rankings(const Dataset& d, const std::vector<Method>& methods,
                                            const ClassifierParams& params) {
    RankParams rp;
    rp.relief.n_neighbors = params.relief_neighbors;
    rp.relief.sample = params.relief_sample;
    std::map<std::string, Ranking> rankings;
    for (Method m : methods) {
        rankings.emplace(method_name(m), rank_attributes(d, m, rp));
    }
    return rankings;
}

std::map<std::string, std::vector<SubsetEvaluation>> run_sweeps(
    const Dataset& d, const std::map<std::string, Ranking>& rankings,
    const FoldAssignment& folds, const RunConfig& cfg) {
    std::map<std::string, std::vector<SubsetEvaluation>> curves;
    for (const auto& [name, ranking] : rankings) {
        curves.emplace(name, sweep(d, ranking, folds, cfg.jobs, cfg.sweep_min, cfg.sweep_max));
    }
    return curves;
}

PipelineResult run_pipeline(const RunConfig& cfg) {
    cfg.validate();
    Dataset d = acquire_dataset(cfg);
    FoldAssignment folds = stratified_folds(d, cfg.folds, cfg.fold_seed);

    PipelineResult result;
    BenchmarkReport& report = result.report;
    report.config = cfg;
    report.n_rows = d.n_rows();
    report.class_name = d.class_attribute().name;
    report.positive_label = d.class_attribute().values[static_cast<std::size_t>(d.positive_class)];
    for (const auto& attr : d.schema) report.attribute_names.push_back(attr.name);

    // Rank the requested methods plus any method named by an explicit subset.
    std::vector<Method> methods = cfg.methods;
    for (const auto& [m, k] : cfg.subsets) {
        (void)k;
        if (std::find(methods.begin(), methods.end(), m) == methods.end()) methods.push_back(m);
    }
    report.rankings = run_rankings(d, methods, cfg.params);

    std::map<std::string, Ranking> swept;
    for (Method m : cfg.methods) swept.emplace(method_name(m), report.rankings.at(method_name(m)));
    report.curves = run_sweeps(d, swept, folds, cfg);
    report.peaks = compute_peaks(report.curves);

    if (cfg.subsets.empty()) {
        report.subsets = default_subsets(report.curves, report.rankings);
    } else {
        for (const auto& [m, k] : cfg.subsets) {
            const Ranking& r = report.rankings.at(method_name(m));
            if (k > static_cast<int>(r.ordered.size())) {
                throw ArgumentError("subset " + method_name(m) + ":" + std::to_string(k) +
                                    " exceeds the predictor count");
            }
            NamedSubset s;
            s.name = method_name(m) + "-" + std::to_string(k);
            s.method = m;
            s.k = k;
            s.attributes.assign(r.ordered.begin(), r.ordered.begin() + k);
            report.subsets.push_back(std::move(s));
        }
    }

    auto nb = make_naive_bayes();
    auto vp = make_voted_perceptron(cfg.params.vp_epochs);
    auto oner = make_one_r();
    auto part = make_part({cfg.params.part_min_leaf, cfg.params.part_cf});
    run_benchmark_grid(report, d, {nb.get(), vp.get(), oner.get(), part.get()}, folds, cfg.jobs);

    for (const auto& cell : report.grid) {
        if (!cell.ok || cell.skipped_folds > 0) result.had_skipped_cells = true;
    }
    return result;
}

}  // namespace edmselect
