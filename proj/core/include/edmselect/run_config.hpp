#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "edmselect/filters.hpp"
#include "edmselect/synthetic.hpp"

namespace edmselect {

struct ClassifierParams {
    int vp_epochs = 10;
    int part_min_leaf = 2;
    double part_cf = 0.25;
    int relief_neighbors = 10;
    long relief_sample = -1;  // -1 = all instances
};

// Resolved experiment configuration. out_dir and jobs describe the
// environment, not the experiment, and are excluded from run_config.json
// so reruns from a saved config are byte-identical.
struct RunConfig {
    std::string input_path;  // empty = synthetic data
    SyntheticConfig synth;
    std::string class_attribute;  // empty = last column
    std::string positive_label;   // empty = first declared class value
    std::vector<Method> methods = {Method::CB, Method::CH, Method::GR,
                                   Method::IG, Method::RF, Method::SU};
    int folds = 10;
    uint64_t fold_seed = 7;
    ClassifierParams params;
    int sweep_min = 2;
    int sweep_max = -1;  // -1 = n_predictors
    std::vector<std::pair<Method, int>> subsets;  // explicit benchmark subsets; empty = peaks
    std::string out_dir = "out";
    int jobs = 1;

    void validate() const;  // throws ArgumentError; schema names checked at load
};

// Flat key=value format (comments with '#', lists comma-separated).
RunConfig parse_config_file(const std::string& path);
RunConfig parse_config_keyvalues(std::istream& in, const std::string& origin);

// JSON mirror, as written into run_config.json.
std::string config_to_json(const RunConfig& cfg);
RunConfig config_from_json_file(const std::string& path);

// Loads either format, picking by extension (.json vs key=value).
RunConfig load_config(const std::string& path);

std::string parse_methods_list(const std::string& spec, std::vector<Method>& out);  // "" or error text
std::string parse_subset_list(const std::string& spec,
                              std::vector<std::pair<Method, int>>& out);  // "METHOD:k,..."

}  // namespace edmselect
