#include "edmselect/run_config.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "edmselect/version.hpp"

namespace edmselect {

using ordered_json = nlohmann::ordered_json;

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, ',')) {
        cur = trim(cur);
        if (!cur.empty()) out.push_back(cur);
    }
    return out;
}

template <typename T>
T parse_number(const std::string& key, const std::string& value) {
    std::istringstream in(value);
    T out;
    std::string rest;
    if (!(in >> out) || (in >> rest)) {
        throw ArgumentError("config key '" + key + "': bad value '" + value + "'");
    }
    return out;
}

}  // namespace

void RunConfig::validate() const {
    if (!input_path.empty() && input_path.find('\0') != std::string::npos) {
        throw ArgumentError("invalid input path");
    }
    if (input_path.empty()) synth.validate();
    if (methods.empty()) throw ArgumentError("no methods requested");
    if (folds < 2) throw ArgumentError("folds must be at least 2");
    if (sweep_min < 2) throw ArgumentError("sweep range must start at 2 or later");
    if (sweep_max != -1 && sweep_max < sweep_min) {
        throw ArgumentError("sweep_max must be -1 or >= sweep_min");
    }
    if (jobs < 1) throw ArgumentError("jobs must be at least 1");
    if (params.vp_epochs < 0) throw ArgumentError("vp_epochs must be non-negative");
    if (params.part_min_leaf < 1) throw ArgumentError("part_min_leaf must be positive");
    if (!(params.part_cf > 0.0 && params.part_cf <= 1.0)) {
        throw ArgumentError("part_cf must be in (0, 1]");
    }
    if (params.relief_neighbors < 1) throw ArgumentError("relief_neighbors must be positive");
    for (const auto& [method, k] : subsets) {
        (void)method;
        if (k < 1) throw ArgumentError("subset cardinality must be positive");
    }
}

std::string parse_methods_list(const std::string& spec, std::vector<Method>& out) {
    out.clear();
    if (trim(spec) == "all") {
        out.assign(std::begin(kAllMethods), std::end(kAllMethods));
        return "";
    }
    for (const auto& name : split_list(spec)) {
        try {
            Method m = method_from_name(name);
            for (Method seen : out) {
                if (seen == m) return "duplicate method '" + name + "'";
            }
            out.push_back(m);
        } catch (const ArgumentError& e) {
            return e.what();
        }
    }
    if (out.empty()) return "no methods given (valid: CB, CH, GR, IG, RF, SU, or 'all')";
    return "";
}

std::string parse_subset_list(const std::string& spec,
                              std::vector<std::pair<Method, int>>& out) {
    out.clear();
    for (const auto& item : split_list(spec)) {
        auto colon = item.find(':');
        if (colon == std::string::npos) {
            return "subset '" + item + "' must look like METHOD:k (e.g. IG:7)";
        }
        std::string name = trim(item.substr(0, colon));
        std::string num = trim(item.substr(colon + 1));
        try {
            Method m = method_from_name(name);
            std::size_t pos = 0;
            int k = std::stoi(num, &pos);
            if (pos != num.size() || k < 1) return "bad subset cardinality '" + num + "'";
            out.push_back({m, k});
        } catch (const ArgumentError& e) {
            return e.what();
        } catch (const std::exception&) {
            return "bad subset cardinality '" + num + "'";
        }
    }
    if (out.empty()) return "empty subset list";
    return "";
}

RunConfig parse_config_keyvalues(std::istream& in, const std::string& origin) {
    RunConfig cfg;
    std::string line;
    long line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        auto eq = t.find('=');
        if (eq == std::string::npos) {
            throw ParseError(origin + ": expected key=value", line_no);
        }
        std::string key = trim(t.substr(0, eq));
        std::string value = trim(t.substr(eq + 1));
        if (key == "input") {
            cfg.input_path = value;
        } else if (key == "rows") {
            cfg.synth.n_rows = parse_number<int>(key, value);
        } else if (key == "informative") {
            cfg.synth.n_informative = parse_number<int>(key, value);
        } else if (key == "signal") {
            cfg.synth.signal = parse_number<double>(key, value);
        } else if (key == "pass_rate") {
            cfg.synth.pass_rate = parse_number<double>(key, value);
        } else if (key == "data_seed") {
            cfg.synth.seed = parse_number<uint64_t>(key, value);
        } else if (key == "class") {
            cfg.class_attribute = value;
        } else if (key == "positive") {
            cfg.positive_label = value;
        } else if (key == "methods") {
            std::string err = parse_methods_list(value, cfg.methods);
            if (!err.empty()) throw ArgumentError(origin + ": " + err);
        } else if (key == "folds") {
            cfg.folds = parse_number<int>(key, value);
        } else if (key == "seed") {
            cfg.fold_seed = parse_number<uint64_t>(key, value);
        } else if (key == "vp_epochs") {
            cfg.params.vp_epochs = parse_number<int>(key, value);
        } else if (key == "part_min_leaf") {
            cfg.params.part_min_leaf = parse_number<int>(key, value);
        } else if (key == "part_cf") {
            cfg.params.part_cf = parse_number<double>(key, value);
        } else if (key == "relief_neighbors") {
            cfg.params.relief_neighbors = parse_number<int>(key, value);
        } else if (key == "relief_sample") {
            cfg.params.relief_sample = value == "all" ? -1 : parse_number<long>(key, value);
        } else if (key == "sweep_min") {
            cfg.sweep_min = parse_number<int>(key, value);
        } else if (key == "sweep_max") {
            cfg.sweep_max = parse_number<int>(key, value);
        } else if (key == "subsets") {
            std::string err = parse_subset_list(value, cfg.subsets);
            if (!err.empty()) throw ArgumentError(origin + ": " + err);
        } else {
            throw ArgumentError(origin + ": unknown config key '" + key + "' (line " +
                                std::to_string(line_no) + ")");
        }
    }
    return cfg;
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file: " + path);
    return parse_config_keyvalues(in, path);
}

std::string config_to_json(const RunConfig& cfg) {
    ordered_json j;
    j["version"] = kVersion;
    j["input"] = cfg.input_path;
    j["synthetic"] = {{"rows", cfg.synth.n_rows},
                      {"informative", cfg.synth.n_informative},
                      {"signal", cfg.synth.signal},
                      {"pass_rate", cfg.synth.pass_rate},
                      {"seed", cfg.synth.seed}};
    j["class_attribute"] = cfg.class_attribute;
    j["positive_label"] = cfg.positive_label;
    ordered_json methods = ordered_json::array();
    for (Method m : cfg.methods) methods.push_back(method_name(m));
    j["methods"] = methods;
    j["folds"] = cfg.folds;
    j["fold_seed"] = cfg.fold_seed;
    j["classifier_params"] = {{"vp_epochs", cfg.params.vp_epochs},
                              {"part_min_leaf", cfg.params.part_min_leaf},
                              {"part_cf", cfg.params.part_cf},
                              {"relief_neighbors", cfg.params.relief_neighbors},
                              {"relief_sample", cfg.params.relief_sample}};
    j["sweep"] = {{"min", cfg.sweep_min}, {"max", cfg.sweep_max}};
    ordered_json subsets = ordered_json::array();
    for (const auto& [m, k] : cfg.subsets) {
        subsets.push_back(method_name(m) + ":" + std::to_string(k));
    }
    j["subsets"] = subsets;
    return j.dump(2) + "\n";
}

RunConfig config_from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file: " + path);
    ordered_json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
    RunConfig cfg;
    cfg.input_path = j.value("input", std::string());
    if (j.contains("synthetic")) {
        const auto& s = j["synthetic"];
        cfg.synth.n_rows = s.value("rows", cfg.synth.n_rows);
        cfg.synth.n_informative = s.value("informative", cfg.synth.n_informative);
        cfg.synth.signal = s.value("signal", cfg.synth.signal);
        cfg.synth.pass_rate = s.value("pass_rate", cfg.synth.pass_rate);
        cfg.synth.seed = s.value("seed", cfg.synth.seed);
    }
    cfg.class_attribute = j.value("class_attribute", std::string());
    cfg.positive_label = j.value("positive_label", std::string());
    if (j.contains("methods")) {
        cfg.methods.clear();
        for (const auto& name : j["methods"]) {
            cfg.methods.push_back(method_from_name(name.get<std::string>()));
        }
    }
    cfg.folds = j.value("folds", cfg.folds);
    cfg.fold_seed = j.value("fold_seed", cfg.fold_seed);
    if (j.contains("classifier_params")) {
        const auto& p = j["classifier_params"];
        cfg.params.vp_epochs = p.value("vp_epochs", cfg.params.vp_epochs);
        cfg.params.part_min_leaf = p.value("part_min_leaf", cfg.params.part_min_leaf);
        cfg.params.part_cf = p.value("part_cf", cfg.params.part_cf);
        cfg.params.relief_neighbors = p.value("relief_neighbors", cfg.params.relief_neighbors);
        cfg.params.relief_sample = p.value("relief_sample", cfg.params.relief_sample);
    }
    if (j.contains("sweep")) {
        cfg.sweep_min = j["sweep"].value("min", cfg.sweep_min);
        cfg.sweep_max = j["sweep"].value("max", cfg.sweep_max);
    }
    if (j.contains("subsets")) {
        for (const auto& item : j["subsets"]) {
            std::vector<std::pair<Method, int>> one;
            std::string err = parse_subset_list(item.get<std::string>(), one);
            if (!err.empty()) throw ArgumentError(path + ": " + err);
            cfg.subsets.push_back(one.front());
        }
    }
    return cfg;
}

RunConfig load_config(const std::string& path) {
    if (path.size() >= 5 && path.substr(path.size() - 5) == ".json") {
        return config_from_json_file(path);
    }
    return parse_config_file(path);
}

}  // namespace edmselect
