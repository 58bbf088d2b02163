#include "edmselect/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "edmselect/rng.hpp"

namespace edmselect {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            cells.push_back(trim(cur));
            cur.clear();
        } else {
            cur += ch;
        }
    }
    cells.push_back(trim(cur));
    return cells;
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

bool read_line(std::istream& in, std::string& line) {
    if (!std::getline(in, line)) return false;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
}

}  // namespace

int AttributeSchema::value_index(const std::string& label) const {
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (values[i] == label) return static_cast<int>(i);
    }
    return -1;
}

std::vector<int> Dataset::predictor_indices() const {
    std::vector<int> out;
    out.reserve(n_predictors());
    for (int i = 0; i < static_cast<int>(schema.size()); ++i) {
        if (i != class_index) out.push_back(i);
    }
    return out;
}

bool Dataset::has_missing(int attr) const {
    for (const auto& row : rows) {
        if (row[static_cast<std::size_t>(attr)] == kMissing) return true;
    }
    return false;
}

int Dataset::category_count(int attr) const {
    return static_cast<int>(schema[static_cast<std::size_t>(attr)].values.size()) +
           (has_missing(attr) ? 1 : 0);
}

int32_t Dataset::category_of(std::size_t row, int attr) const {
    int32_t v = rows[row][static_cast<std::size_t>(attr)];
    if (v == kMissing) {
        return static_cast<int32_t>(schema[static_cast<std::size_t>(attr)].values.size());
    }
    return v;
}

int Dataset::attribute_index(const std::string& name) const {
    for (std::size_t i = 0; i < schema.size(); ++i) {
        if (schema[i].name == name) return static_cast<int>(i);
    }
    return -1;
}

std::vector<int64_t> Dataset::class_counts() const {
    std::vector<int64_t> counts(n_class_values(), 0);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        ++counts[static_cast<std::size_t>(class_of(r))];
    }
    return counts;
}

void Dataset::validate() const {
    if (schema.empty()) throw ArgumentError("dataset has no attributes");
    if (class_index < 0 || class_index >= static_cast<int>(schema.size())) {
        throw ArgumentError("class index out of range");
    }
    for (std::size_t a = 0; a < schema.size(); ++a) {
        if (schema[a].values.empty()) {
            throw ArgumentError("attribute '" + schema[a].name + "' has no values");
        }
        for (const auto& v : schema[a].values) {
            if (v == "?") throw ArgumentError("'?' cannot be a declared value");
        }
    }
    const auto& cls = class_attribute();
    if (cls.values.size() < 2) throw ArgumentError("class attribute needs at least 2 values");
    if (positive_class < 0 || positive_class >= static_cast<int>(cls.values.size())) {
        throw ArgumentError("positive class out of range");
    }
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != schema.size()) throw ArgumentError("row width mismatch");
        for (std::size_t a = 0; a < schema.size(); ++a) {
            int32_t v = rows[r][a];
            if (v == kMissing) {
                if (static_cast<int>(a) == class_index) {
                    throw ArgumentError("class cell missing at row " + std::to_string(r));
                }
                continue;
            }
            if (v < 0 || v >= static_cast<int32_t>(schema[a].values.size())) {
                throw ArgumentError("cell index out of range at row " + std::to_string(r));
            }
        }
    }
}

namespace {

Dataset parse_csv(std::istream& in) {
    Dataset d;
    std::string line;
    long line_no = 0;
    if (!read_line(in, line)) throw EmptyDatasetError("empty input");
    ++line_no;
    auto header = split_csv_line(line);
    if (header.size() == 1 && header[0].empty()) throw EmptyDatasetError("empty header");
    for (std::size_t i = 0; i < header.size(); ++i) {
        AttributeSchema a;
        a.name = header[i];
        a.index = static_cast<int>(i);
        d.schema.push_back(std::move(a));
    }
    std::vector<std::unordered_map<std::string, int>> value_ids(d.schema.size());
    while (read_line(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        auto cells = split_csv_line(line);
        if (cells.size() != d.schema.size()) {
            throw ParseError("expected " + std::to_string(d.schema.size()) + " fields, got " +
                                 std::to_string(cells.size()),
                             line_no);
        }
        std::vector<int32_t> row(cells.size());
        for (std::size_t a = 0; a < cells.size(); ++a) {
            if (cells[a] == "?") {
                row[a] = kMissing;
                continue;
            }
            auto [it, inserted] = value_ids[a].try_emplace(
                cells[a], static_cast<int>(d.schema[a].values.size()));
            if (inserted) d.schema[a].values.push_back(cells[a]);
            row[a] = it->second;
        }
        d.rows.push_back(std::move(row));
    }
    if (d.rows.empty()) throw EmptyDatasetError("no data rows");
    d.class_index = static_cast<int>(d.schema.size()) - 1;
    d.positive_class = 0;
    d.validate();
    return d;
}

Dataset parse_arff(std::istream& in) {
    Dataset d;
    std::string line;
    long line_no = 0;
    bool in_data = false;
    std::vector<std::unordered_map<std::string, int>> value_ids;
    bool saw_anything = false;
    while (read_line(in, line)) {
        ++line_no;
        std::string t = trim(line);
        if (t.empty() || t[0] == '%') continue;
        saw_anything = true;
        if (!in_data && t[0] == '@') {
            std::string low = lower(t);
            if (low.rfind("@relation", 0) == 0) continue;
            if (low.rfind("@data", 0) == 0) {
                in_data = true;
                continue;
            }
            if (low.rfind("@attribute", 0) == 0) {
                std::string rest = trim(t.substr(10));
                auto brace = rest.find('{');
                if (brace == std::string::npos) {
                    throw UnsupportedFeatureError(
                        "only nominal @attribute declarations are supported (line " +
                        std::to_string(line_no) + ")");
                }
                std::string name = trim(rest.substr(0, brace));
                auto close = rest.find('}', brace);
                if (close == std::string::npos || name.empty()) {
                    throw ParseError("malformed @attribute declaration", line_no);
                }
                AttributeSchema a;
                a.name = name;
                a.index = static_cast<int>(d.schema.size());
                for (const auto& v : split_csv_line(rest.substr(brace + 1, close - brace - 1))) {
                    if (v.empty()) throw ParseError("empty value in @attribute", line_no);
                    a.values.push_back(v);
                }
                d.schema.push_back(std::move(a));
                continue;
            }
            throw UnsupportedFeatureError("unsupported ARFF section: " + t.substr(0, t.find(' ')));
        }
        if (!in_data) throw ParseError("data before @data section", line_no);
        auto cells = split_csv_line(t);
        if (cells.size() != d.schema.size()) {
            throw ParseError("expected " + std::to_string(d.schema.size()) + " fields, got " +
                                 std::to_string(cells.size()),
                             line_no);
        }
        std::vector<int32_t> row(cells.size());
        for (std::size_t a = 0; a < cells.size(); ++a) {
            if (cells[a] == "?") {
                row[a] = kMissing;
                continue;
            }
            int idx = d.schema[a].value_index(cells[a]);
            if (idx < 0) {
                throw ParseError("value '" + cells[a] + "' not declared for attribute '" +
                                     d.schema[a].name + "'",
                                 line_no);
            }
            row[a] = idx;
        }
        d.rows.push_back(std::move(row));
    }
    if (!saw_anything) throw EmptyDatasetError("empty input");
    if (d.schema.empty()) throw EmptyDatasetError("no @attribute declarations");
    if (d.rows.empty()) throw EmptyDatasetError("no data rows");
    d.class_index = static_cast<int>(d.schema.size()) - 1;
    d.positive_class = 0;
    d.validate();
    return d;
}

}  // namespace

Dataset parse_table(std::istream& in, TableFormat format) {
    return format == TableFormat::Csv ? parse_csv(in) : parse_arff(in);
}

Dataset load_dataset(const std::string& path, const std::string& class_attribute,
                     const std::string& positive_label) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open dataset file: " + path);
    TableFormat fmt = TableFormat::Csv;
    if (path.size() >= 5 && lower(path.substr(path.size() - 5)) == ".arff") {
        fmt = TableFormat::ArffSubset;
    }
    Dataset d = parse_table(in, fmt);
    if (!class_attribute.empty()) set_class_attribute(d, class_attribute);
    if (!positive_label.empty()) set_positive_label(d, positive_label);
    return d;
}

void set_class_attribute(Dataset& d, const std::string& name) {
    int idx = d.attribute_index(name);
    if (idx < 0) throw ArgumentError("no attribute named '" + name + "'");
    d.class_index = idx;
    d.positive_class = 0;
    d.validate();
}

void set_positive_label(Dataset& d, const std::string& label) {
    int idx = d.class_attribute().value_index(label);
    if (idx < 0) {
        throw ArgumentError("class attribute '" + d.class_attribute().name +
                            "' has no value '" + label + "'");
    }
    d.positive_class = idx;
}

void write_csv(const Dataset& d, std::ostream& out) {
    for (std::size_t a = 0; a < d.schema.size(); ++a) {
        if (a) out << ',';
        out << d.schema[a].name;
    }
    out << '\n';
    for (const auto& row : d.rows) {
        for (std::size_t a = 0; a < row.size(); ++a) {
            if (a) out << ',';
            if (row[a] == kMissing) {
                out << '?';
            } else {
                out << d.schema[a].values[static_cast<std::size_t>(row[a])];
            }
        }
        out << '\n';
    }
}

void write_csv_file(const Dataset& d, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path);
    write_csv(d, out);
    if (!out) throw IoError("write failed: " + path);
}

Dataset project(const Dataset& d, const std::vector<int>& predictors) {
    std::vector<bool> seen(d.schema.size(), false);
    for (int p : predictors) {
        if (p < 0 || p >= static_cast<int>(d.schema.size())) {
            throw ArgumentError("predictor index out of range: " + std::to_string(p));
        }
        if (p == d.class_index) throw ArgumentError("class attribute cannot be projected as predictor");
        if (seen[static_cast<std::size_t>(p)]) {
            throw ArgumentError("duplicate predictor index: " + std::to_string(p));
        }
        seen[static_cast<std::size_t>(p)] = true;
    }
    Dataset out;
    out.schema.reserve(predictors.size() + 1);
    for (int p : predictors) {
        AttributeSchema a = d.schema[static_cast<std::size_t>(p)];
        a.index = static_cast<int>(out.schema.size());
        out.schema.push_back(std::move(a));
    }
    AttributeSchema cls = d.class_attribute();
    cls.index = static_cast<int>(out.schema.size());
    out.schema.push_back(std::move(cls));
    out.class_index = static_cast<int>(out.schema.size()) - 1;
    out.positive_class = d.positive_class;
    out.rows.reserve(d.rows.size());
    for (const auto& row : d.rows) {
        std::vector<int32_t> r;
        r.reserve(out.schema.size());
        for (int p : predictors) r.push_back(row[static_cast<std::size_t>(p)]);
        r.push_back(row[static_cast<std::size_t>(d.class_index)]);
        out.rows.push_back(std::move(r));
    }
    return out;
}

FoldAssignment stratified_folds(const Dataset& d, int n_folds, uint64_t seed) {
    if (n_folds < 2) throw ArgumentError("need at least 2 folds");
    if (static_cast<std::size_t>(n_folds) > d.n_rows()) {
        throw ArgumentError("more folds than rows");
    }
    auto counts = d.class_counts();
    for (std::size_t c = 0; c < counts.size(); ++c) {
        if (counts[c] == 0) {
            throw ArgumentError("class value '" + d.class_attribute().values[c] +
                                "' has no instances");
        }
    }
    std::vector<std::vector<int>> by_class(counts.size());
    for (std::size_t r = 0; r < d.n_rows(); ++r) {
        by_class[static_cast<std::size_t>(d.class_of(r))].push_back(static_cast<int>(r));
    }
    std::mt19937_64 gen(seed);
    FoldAssignment fa;
    fa.n_folds = n_folds;
    fa.labels.assign(d.n_rows(), 0);
    // One round-robin cursor across all classes keeps both the per-class
    // and the total fold sizes within one of proportional.
    int cursor = 0;
    for (auto& group : by_class) {
        shuffle_inplace(group, gen);
        for (int row : group) {
            fa.labels[static_cast<std::size_t>(row)] = cursor;
            cursor = (cursor + 1) % n_folds;
        }
    }
    return fa;
}

EncodedMatrix one_hot_encode(const Dataset& d) {
    if (d.n_class_values() != 2) {
        throw UnsupportedFeatureError("one-hot encoding requires a binary class attribute");
    }
    EncodedMatrix m;
    auto predictors = d.predictor_indices();
    m.block_offset.reserve(predictors.size());
    m.block_arity.reserve(predictors.size());
    std::size_t col = 0;
    for (int p : predictors) {
        m.block_offset.push_back(col);
        int arity = static_cast<int>(d.schema[static_cast<std::size_t>(p)].values.size());
        m.block_arity.push_back(arity);
        col += static_cast<std::size_t>(arity);
    }
    m.n_cols = col;
    m.rows.reserve(d.n_rows());
    m.labels.reserve(d.n_rows());
    for (std::size_t r = 0; r < d.n_rows(); ++r) {
        std::vector<double> x(m.n_cols, 0.0);
        for (std::size_t i = 0; i < predictors.size(); ++i) {
            int32_t v = d.rows[r][static_cast<std::size_t>(predictors[i])];
            if (v != kMissing) x[m.block_offset[i] + static_cast<std::size_t>(v)] = 1.0;
        }
        m.rows.push_back(std::move(x));
        m.labels.push_back(d.class_of(r) == d.positive_class ? 1 : -1);
    }
    return m;
}

}  // namespace edmselect
