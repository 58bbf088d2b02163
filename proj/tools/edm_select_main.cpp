// edm-select: feature-selection benchmarking on nominal tabular data.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "edmselect/pipeline.hpp"
#include "edmselect/version.hpp"

namespace {

using namespace edmselect;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitRuntime = 2;
constexpr int kExitPartial = 3;

int default_jobs() {
    if (const char* env = std::getenv("EDM_SELECT_JOBS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end && *end == '\0' && v >= 1) return static_cast<int>(v);
    }
    return 1;
}

struct CommonFlags {
    std::string config_path;
    std::string input_path;
    std::string class_attribute;
    std::string positive_label;
    std::string methods = "all";
    std::string subsets;
    std::string out_dir = "out";
    int folds = 10;
    uint64_t fold_seed = 7;
    int rows = 1969;
    int informative = 7;
    double signal = kDefaultSignal;
    double pass_rate = 0.6;
    uint64_t data_seed = 42;
    int vp_epochs = 10;
    int part_min_leaf = 2;
    double part_cf = 0.25;
    int relief_neighbors = 10;
    long relief_sample = -1;
    int sweep_min = 2;
    int sweep_max = -1;
    int jobs = default_jobs();
};

void add_data_options(CLI::App* cmd, CommonFlags& f) {
    cmd->add_option("input", f.input_path, "dataset file (.csv or .arff); omit for synthetic data");
    cmd->add_option("--config", f.config_path, "config file (key=value, or a saved run_config.json)");
    cmd->add_option("--class", f.class_attribute, "class attribute name (default: last column)");
    cmd->add_option("--positive", f.positive_label, "positive class label (default: first value)");
    cmd->add_option("--rows", f.rows, "synthetic: instance count");
    cmd->add_option("--informative", f.informative, "synthetic: class-correlated predictors");
    cmd->add_option("--signal", f.signal, "synthetic: class-conditional skew in [0,1]");
    cmd->add_option("--pass-rate", f.pass_rate, "synthetic: positive class prior");
    cmd->add_option("--data-seed", f.data_seed, "synthetic: generator seed");
}

void add_eval_options(CLI::App* cmd, CommonFlags& f) {
    cmd->add_option("--methods,--method", f.methods, "comma list of CB,CH,GR,IG,RF,SU or 'all'");
    cmd->add_option("--folds", f.folds, "cross-validation folds");
    cmd->add_option("--seed", f.fold_seed, "fold-assignment seed");
    cmd->add_option("--vp-epochs", f.vp_epochs, "voted perceptron epochs");
    cmd->add_option("--part-min-leaf", f.part_min_leaf, "PART minimum node size");
    cmd->add_option("--part-cf", f.part_cf, "PART pruning confidence");
    cmd->add_option("--relief-neighbors", f.relief_neighbors, "ReliefF neighbor count");
    cmd->add_option("--relief-sample", f.relief_sample, "ReliefF sampled instances (-1 = all)");
    cmd->add_option("--sweep-min", f.sweep_min, "smallest sweep cardinality");
    cmd->add_option("--sweep-max", f.sweep_max, "largest sweep cardinality (-1 = all)");
    cmd->add_option("--jobs,-j", f.jobs, "worker threads (env EDM_SELECT_JOBS)");
}

// Flags that were actually passed override the config file.
RunConfig assemble_config(const CLI::App* cmd, const CommonFlags& f) {
    RunConfig cfg;
    if (!f.config_path.empty()) cfg = load_config(f.config_path);
    auto given = [&](const std::string& name) {
        auto* opt = cmd->get_option_no_throw(name);
        return opt != nullptr && opt->count() > 0;
    };
    if (given("input")) cfg.input_path = f.input_path;
    if (given("--class")) cfg.class_attribute = f.class_attribute;
    if (given("--positive")) cfg.positive_label = f.positive_label;
    if (given("--rows")) cfg.synth.n_rows = f.rows;
    if (given("--informative")) cfg.synth.n_informative = f.informative;
    if (given("--signal")) cfg.synth.signal = f.signal;
    if (given("--pass-rate")) cfg.synth.pass_rate = f.pass_rate;
    if (given("--data-seed")) cfg.synth.seed = f.data_seed;
    if (given("--methods")) {
        std::string err = parse_methods_list(f.methods, cfg.methods);
        if (!err.empty()) throw ArgumentError(err);
    }
    if (given("--folds")) cfg.folds = f.folds;
    if (given("--seed")) cfg.fold_seed = f.fold_seed;
    if (given("--vp-epochs")) cfg.params.vp_epochs = f.vp_epochs;
    if (given("--part-min-leaf")) cfg.params.part_min_leaf = f.part_min_leaf;
    if (given("--part-cf")) cfg.params.part_cf = f.part_cf;
    if (given("--relief-neighbors")) cfg.params.relief_neighbors = f.relief_neighbors;
    if (given("--relief-sample")) cfg.params.relief_sample = f.relief_sample;
    if (given("--sweep-min")) cfg.sweep_min = f.sweep_min;
    if (given("--sweep-max")) cfg.sweep_max = f.sweep_max;
    if (given("--subsets")) {
        std::string err = parse_subset_list(f.subsets, cfg.subsets);
        if (!err.empty()) throw ArgumentError(err);
    }
    if (given("--jobs")) cfg.jobs = f.jobs;
    else if (cfg.jobs == 1) cfg.jobs = f.jobs;
    cfg.out_dir = f.out_dir;
    cfg.validate();
    return cfg;
}

std::filesystem::path ensure_out_dir(const std::string& dir) {
    std::filesystem::path base(dir);
    std::error_code ec;
    std::filesystem::create_directories(base, ec);
    if (ec) throw IoError("cannot create output directory " + dir + ": " + ec.message());
    return base;
}

void write_text(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    out << content;
    if (!out) throw IoError("write failed: " + path.string());
}

int cmd_generate(const CommonFlags& f, const std::string& out_file) {
    SyntheticConfig cfg{f.rows, f.informative, f.signal, f.pass_rate, f.data_seed};
    try {
        cfg.validate();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    try {
        Dataset d = generate_synthetic(cfg);
        write_csv_file(d, out_file);
        auto counts = d.class_counts();
        std::cout << "wrote " << out_file << ": " << d.n_rows() << " rows, " << d.n_attributes()
                  << " attributes, pass=" << counts[0] << " fail=" << counts[1] << '\n';
        return kExitOk;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
}

// configure+load failures are usage errors; compute failures are runtime.
template <typename Fn>
int run_stage(const CLI::App* cmd, const CommonFlags& f, Fn&& body) {
    RunConfig cfg;
    Dataset d;
    try {
        cfg = assemble_config(cmd, f);
        d = acquire_dataset(cfg);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    try {
        return body(cfg, d);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
}

int cmd_rank(const CLI::App* cmd, const CommonFlags& f) {
    return run_stage(cmd, f, [&](const RunConfig& cfg, const Dataset& d) {
        auto base = ensure_out_dir(cfg.out_dir);
        auto rankings = run_rankings(d, cfg.methods, cfg.params);
        for (const auto& [name, ranking] : rankings) {
            std::ostringstream csv;
            write_ranking_csv(ranking, d, csv);
            write_text(base / ("ranking_" + name + ".csv"), csv.str());
            std::cout << "wrote " << (base / ("ranking_" + name + ".csv")).string() << '\n';
        }
        return kExitOk;
    });
}

int cmd_sweep(const CLI::App* cmd, const CommonFlags& f, bool with_peaks) {
    return run_stage(cmd, f, [&](const RunConfig& cfg, const Dataset& d) {
        auto base = ensure_out_dir(cfg.out_dir);
        auto folds = stratified_folds(d, cfg.folds, cfg.fold_seed);
        auto rankings = run_rankings(d, cfg.methods, cfg.params);
        auto curves = run_sweeps(d, rankings, folds, cfg);
        std::ostringstream csv;
        write_sweep_curves_csv(curves, csv);
        write_text(base / "sweep_curves.csv", csv.str());
        std::cout << "wrote " << (base / "sweep_curves.csv").string() << '\n';
        if (with_peaks) {
            std::ostringstream peaks_csv;
            write_peaks_csv(compute_peaks(curves), peaks_csv);
            write_text(base / "peaks.csv", peaks_csv.str());
            std::cout << "wrote " << (base / "peaks.csv").string() << '\n';
        }
        return kExitOk;
    });
}

int cmd_benchmark(const CLI::App* cmd, const CommonFlags& f) {
    return run_stage(cmd, f, [&](const RunConfig& cfg, const Dataset& d) {
        auto base = ensure_out_dir(cfg.out_dir);
        auto folds = stratified_folds(d, cfg.folds, cfg.fold_seed);

        BenchmarkReport report;
        std::vector<Method> methods = cfg.methods;
        for (const auto& [m, k] : cfg.subsets) {
            (void)k;
            if (std::find(methods.begin(), methods.end(), m) == methods.end()) {
                methods.push_back(m);
            }
        }
        auto rankings = run_rankings(d, methods, cfg.params);
        if (cfg.subsets.empty()) {
            auto curves = run_sweeps(d, rankings, folds, cfg);
            report.subsets = default_subsets(curves, rankings);
        } else {
            for (const auto& [m, k] : cfg.subsets) {
                const Ranking& r = rankings.at(method_name(m));
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
        run_benchmark_grid(report, d, {nb.get(), vp.get(), oner.get(), part.get()}, folds,
                           cfg.jobs);

        std::ostringstream grid_csv;
        write_grid_csv(report.grid, grid_csv);
        write_text(base / "benchmark_grid.csv", grid_csv.str());
        std::cout << "wrote " << (base / "benchmark_grid.csv").string() << '\n';
        for (const auto& cell : report.grid) {
            if (!cell.ok || cell.skipped_folds > 0) return kExitPartial;
        }
        return kExitOk;
    });
}

int cmd_report(const CLI::App* cmd, const CommonFlags& f) {
    return run_stage(cmd, f, [&](const RunConfig& cfg, const Dataset&) {
        auto result = run_pipeline(cfg);
        emit_report(result.report, cfg.out_dir);
        std::cout << "wrote report into " << cfg.out_dir << "/ (sweep_curves.csv, peaks.csv, "
                     "benchmark_grid.csv, report.json, run_config.json)\n";
        return result.had_skipped_cells ? kExitPartial : kExitOk;
    });
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"feature-selection benchmarking for nominal tabular data"};
    app.set_version_flag("--version", edmselect::kVersion);
    app.require_subcommand(1);

    CommonFlags f;
    std::string generate_out = "data.csv";

    auto* generate = app.add_subcommand("generate", "write a synthetic survey-shaped dataset");
    generate->add_option("--rows", f.rows, "instance count")->check(CLI::PositiveNumber);
    generate->add_option("--informative", f.informative, "class-correlated predictors");
    generate->add_option("--signal", f.signal, "class-conditional skew in [0,1]");
    generate->add_option("--pass-rate", f.pass_rate, "positive class prior");
    generate->add_option("--seed,--data-seed", f.data_seed, "generator seed");
    generate->add_option("-o,--out", generate_out, "output CSV path");

    auto* rank = app.add_subcommand("rank", "rank predictors under the chosen evaluators");
    add_data_options(rank, f);
    add_eval_options(rank, f);
    rank->add_option("-o,--out", f.out_dir, "output directory");

    auto* sweep_cmd = app.add_subcommand("sweep", "incremental top-k NaiveBayes sweep");
    add_data_options(sweep_cmd, f);
    add_eval_options(sweep_cmd, f);
    sweep_cmd->add_option("-o,--out", f.out_dir, "output directory");

    auto* peaks_cmd = app.add_subcommand("peaks", "sweep plus peak-cardinality tables");
    add_data_options(peaks_cmd, f);
    add_eval_options(peaks_cmd, f);
    peaks_cmd->add_option("-o,--out", f.out_dir, "output directory");

    auto* bench = app.add_subcommand("benchmark", "four-classifier benchmark of chosen subsets");
    add_data_options(bench, f);
    add_eval_options(bench, f);
    bench->add_option("--subsets", f.subsets, "explicit subsets, e.g. \"IG:7,CB:9\"");
    bench->add_option("-o,--out", f.out_dir, "output directory");

    auto* report = app.add_subcommand("report", "full pipeline: rank, sweep, peaks, benchmark");
    add_data_options(report, f);
    add_eval_options(report, f);
    report->add_option("--subsets", f.subsets, "explicit subsets, e.g. \"IG:7,CB:9\"");
    report->add_option("-o,--out", f.out_dir, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    if (generate->parsed()) return cmd_generate(f, generate_out);
    if (rank->parsed()) return cmd_rank(rank, f);
    if (sweep_cmd->parsed()) return cmd_sweep(sweep_cmd, f, false);
    if (peaks_cmd->parsed()) return cmd_sweep(peaks_cmd, f, true);
    if (bench->parsed()) return cmd_benchmark(bench, f);
    if (report->parsed()) return cmd_report(report, f);
    return kExitUsage;
}
