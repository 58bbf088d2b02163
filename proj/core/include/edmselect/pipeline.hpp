#pragma once

#include <map>
#include <string>
#include <vector>

#include "edmselect/evaluation.hpp"
#include "edmselect/filters.hpp"
#include "edmselect/run_config.hpp"

namespace edmselect {

struct SubsetEvaluation {
    Method method = Method::IG;
    int k = 0;
    std::vector<int> attributes;  // first k of the ranking, ranking order
    MetricBundle metrics;
    int skipped_folds = 0;
};

// NaiveBayes cross-validation of the ranking's top-k subsets for
// k = k_min..k_max (k_max = -1 means all predictors). The projection sorts
// attribute indices so equal subsets evaluate bit-identically regardless
// of ranking order.
std::vector<SubsetEvaluation> sweep(const Dataset& d, const Ranking& ranking,
                                    const FoldAssignment& folds, int jobs = 1, int k_min = 2,
                                    int k_max = -1);

struct PeakResult {
    Method method = Method::IG;
    std::string metric;  // "roc" or "macro_f1"
    int k = 0;
    double value = 0.0;
};

// Maximum of the chosen metric over the sweep; ties take the smallest k.
PeakResult find_peak(const std::vector<SubsetEvaluation>& evals, const std::string& metric);

struct NamedSubset {
    std::string name;  // e.g. "IG-7"
    Method method = Method::IG;
    int k = 0;
    std::vector<int> attributes;
};

struct BenchmarkCell {
    std::string classifier;
    std::string subset;
    bool ok = false;
    std::string error;
    MetricBundle metrics;
    int skipped_folds = 0;
};

struct BenchmarkReport {
    std::vector<std::string> attribute_names;  // full schema, class included
    std::string class_name;
    std::string positive_label;
    std::size_t n_rows = 0;
    std::map<std::string, Ranking> rankings;                      // per method name
    std::map<std::string, std::vector<SubsetEvaluation>> curves;  // per method name
    std::vector<PeakResult> peaks;
    std::vector<NamedSubset> subsets;
    std::vector<std::string> classifiers;
    std::vector<BenchmarkCell> grid;  // classifier-major order
    RunConfig config;
};

// Cross-validates every (classifier, subset) cell on the shared folds.
// A failing cell is recorded with its reason; the run continues.
void run_benchmark_grid(BenchmarkReport& report, const Dataset& d,
                        const std::vector<const Classifier*>& classifiers,
                        const FoldAssignment& folds, int jobs = 1);

// Peaks for every curve, method-major, roc before macro_f1.
std::vector<PeakResult> compute_peaks(
    const std::map<std::string, std::vector<SubsetEvaluation>>& curves);

// The deduplicated union of each method's ROC-peak and F1-peak subsets,
// named METHOD-k.
std::vector<NamedSubset> default_subsets(
    const std::map<std::string, std::vector<SubsetEvaluation>>& curves,
    const std::map<std::string, Ranking>& rankings);

void write_sweep_curves_csv(const std::map<std::string, std::vector<SubsetEvaluation>>& curves,
                            std::ostream& out);
void write_peaks_csv(const std::vector<PeakResult>& peaks, std::ostream& out);
void write_grid_csv(const std::vector<BenchmarkCell>& grid, std::ostream& out);

// Writes sweep_curves.csv, peaks.csv, benchmark_grid.csv, report.json and
// run_config.json into dir (created if absent). Output is byte-stable for
// identical inputs.
void emit_report(const BenchmarkReport& r, const std::string& dir);

struct PipelineResult {
    BenchmarkReport report;
    bool had_skipped_cells = false;
};

// The full experiment: load/generate -> rank -> sweep -> peaks -> default
// (or configured) subsets -> four-classifier benchmark.
PipelineResult run_pipeline(const RunConfig& cfg);

// Shared by the pipeline and the CLI stages.
Dataset acquire_dataset(const RunConfig& cfg);
std::map<std::string, Ranking> run_rankings(const Dataset& d, const std::vector<Method>& methods,
                                            const ClassifierParams& params);
std::map<std::string, std::vector<SubsetEvaluation>> run_sweeps(
    const Dataset& d, const std::map<std::string, Ranking>& rankings,
    const FoldAssignment& folds, const RunConfig& cfg);

}  // namespace edmselect
