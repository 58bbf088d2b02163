#include <algorithm>
#include <cmath>
#include <memory>
#include <ostream>

#include "edmselect/classifiers.hpp"
#include "edmselect/filters.hpp"

namespace edmselect {

namespace {

// Acklam's rational approximation to the standard normal quantile.
double probit(double p) {
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double e[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    const double plow = 0.02425;
    if (p < plow) {
        double q = std::sqrt(-2.0 * std::log(p));
        return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((e[0] * q + e[1]) * q + e[2]) * q + e[3]) * q + 1.0);
    }
    if (p > 1.0 - plow) {
        double q = std::sqrt(-2.0 * std::log(1.0 - p));
        return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((e[0] * q + e[1]) * q + e[2]) * q + e[3]) * q + 1.0);
    }
    double q = p - 0.5;
    double r = q * q;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

constexpr double kGainEps = 1e-10;

struct TreeNode {
    enum class State { Leaf, Internal, Unexpanded };
    State state = State::Leaf;
    std::vector<int64_t> counts;
    std::vector<std::size_t> rows;  // kept on leaves for extraction
    int split_attr = -1;
    std::vector<std::unique_ptr<TreeNode>> children;  // per category of split_attr
};

struct TreeBuilder {
    const Dataset& d;
    int min_leaf;
    double cf;
    int n_classes;

    std::vector<int64_t> class_counts(const std::vector<std::size_t>& rows) const {
        std::vector<int64_t> counts(static_cast<std::size_t>(n_classes), 0);
        for (std::size_t r : rows) ++counts[static_cast<std::size_t>(d.class_of(r))];
        return counts;
    }

    static double counts_entropy(const std::vector<int64_t>& counts) {
        return entropy(std::span<const int64_t>(counts.data(), counts.size()));
    }

    // Category of row r under attribute a, with the missing bucket at the
    // declared value count.
    std::size_t category(std::size_t r, int a) const {
        int32_t v = d.rows[r][static_cast<std::size_t>(a)];
        auto declared = d.schema[static_cast<std::size_t>(a)].values.size();
        return v == kMissing ? declared : static_cast<std::size_t>(v);
    }

    std::size_t category_space(int a) const {
        return d.schema[static_cast<std::size_t>(a)].values.size() + 1;
    }

    // Best gain-ratio split with positive gain; -1 when none exists.
    int choose_split(const std::vector<std::size_t>& rows, double parent_entropy) const {
        int best = -1;
        double best_ratio = 0.0;
        double n = static_cast<double>(rows.size());
        for (int a : d.predictor_indices()) {
            std::size_t cats = category_space(a);
            std::vector<std::vector<int64_t>> child(cats,
                                                    std::vector<int64_t>(n_classes, 0));
            std::vector<int64_t> sizes(cats, 0);
            for (std::size_t r : rows) {
                std::size_t v = category(r, a);
                ++child[v][static_cast<std::size_t>(d.class_of(r))];
                ++sizes[v];
            }
            double cond = 0.0;
            for (std::size_t v = 0; v < cats; ++v) {
                if (sizes[v] == 0) continue;
                cond += static_cast<double>(sizes[v]) / n * counts_entropy(child[v]);
            }
            double gain = parent_entropy - cond;
            if (gain <= kGainEps) continue;
            double split_info = entropy(std::span<const int64_t>(sizes.data(), sizes.size()));
            if (split_info <= 0.0) continue;
            double ratio = gain / split_info;
            if (best < 0 || ratio > best_ratio) {
                best = a;
                best_ratio = ratio;
            }
        }
        return best;
    }

    std::unique_ptr<TreeNode> expand(std::vector<std::size_t> rows) {
        auto node = std::make_unique<TreeNode>();
        node->counts = class_counts(rows);
        int64_t max_count = *std::max_element(node->counts.begin(), node->counts.end());
        bool pure = max_count == static_cast<int64_t>(rows.size());
        if (pure || rows.size() < static_cast<std::size_t>(min_leaf)) {
            node->rows = std::move(rows);
            return node;
        }
        double parent_entropy = counts_entropy(node->counts);
        int attr = choose_split(rows, parent_entropy);
        if (attr < 0) {
            node->rows = std::move(rows);
            return node;
        }

        std::size_t cats = category_space(attr);
        std::vector<std::vector<std::size_t>> partition(cats);
        for (std::size_t r : rows) partition[category(r, attr)].push_back(r);

        node->state = TreeNode::State::Internal;
        node->split_attr = attr;
        node->children.resize(cats);
        for (std::size_t v = 0; v < cats; ++v) {
            node->children[v] = std::make_unique<TreeNode>();
            node->children[v]->state = TreeNode::State::Unexpanded;
            node->children[v]->counts = class_counts(partition[v]);
            node->children[v]->rows = partition[v];
        }

        // Children are expanded in ascending-entropy order; expansion stops
        // once an expanded child stays internal (the partial-tree rule).
        std::vector<std::size_t> order(cats);
        for (std::size_t v = 0; v < cats; ++v) order[v] = v;
        std::vector<double> child_entropy(cats);
        for (std::size_t v = 0; v < cats; ++v) {
            child_entropy[v] = counts_entropy(node->children[v]->counts);
        }
        std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
            return child_entropy[x] < child_entropy[y];
        });

        bool all_leaves = true;
        for (std::size_t v : order) {
            auto expanded = expand(std::move(partition[v]));
            bool is_leaf = expanded->state == TreeNode::State::Leaf;
            node->children[v] = std::move(expanded);
            if (!is_leaf) {
                all_leaves = false;
                break;
            }
        }
        if (!all_leaves) return node;

        // Pessimistic leaf-vs-subtree comparison (one level; deeper levels
        // were already settled inside the recursive calls).
        double subtree_err = 0.0;
        for (const auto& ch : node->children) {
            int64_t n_i = 0;
            for (int64_t cnt : ch->counts) n_i += cnt;
            if (n_i == 0) continue;
            int64_t e_i = n_i - *std::max_element(ch->counts.begin(), ch->counts.end());
            subtree_err += pessimistic_errors(static_cast<double>(n_i),
                                              static_cast<double>(e_i), cf);
        }
        double leaf_err = pessimistic_errors(static_cast<double>(rows.size()),
                                             static_cast<double>(rows.size() - max_count), cf);
        if (leaf_err <= subtree_err + 1e-9) {
            node->state = TreeNode::State::Leaf;
            node->split_attr = -1;
            node->children.clear();
            node->rows = std::move(rows);
        }
        return node;
    }
};

struct LeafRef {
    const TreeNode* node;
    std::vector<PartRule::Test> path;
};

void collect_leaves(const TreeNode* node, std::vector<PartRule::Test>& path,
                    std::vector<LeafRef>& out) {
    if (node->state == TreeNode::State::Leaf) {
        out.push_back({node, path});
        return;
    }
    if (node->state == TreeNode::State::Unexpanded) return;
    for (std::size_t v = 0; v < node->children.size(); ++v) {
        path.push_back({node->split_attr, static_cast<int>(v)});
        collect_leaves(node->children[v].get(), path, out);
        path.pop_back();
    }
}

}  // namespace

double pessimistic_errors(double n, double e, double cf) {
    if (n <= 0.0) return 0.0;
    if (e < 0.0) e = 0.0;
    if (e > n) e = n;
    if (cf >= 1.0) return e;
    if (e == 0.0) return n * (1.0 - std::pow(cf, 1.0 / n));
    double z = probit(1.0 - cf);
    double z2 = z * z;
    double f = e / n;
    double pr = (f + z2 / (2.0 * n) +
                 z * std::sqrt(f / n - f * f / n + z2 / (4.0 * n * n))) /
                (1.0 + z2 / n);
    if (pr > 1.0) pr = 1.0;
    return pr * n;
}

PartModel part_train(const Dataset& d, const PartParams& params) {
    if (d.n_rows() < 1) throw ArgumentError("part_train needs at least 1 instance");
    if (params.min_leaf < 1) throw ArgumentError("min_leaf must be positive");
    if (!(params.cf > 0.0 && params.cf <= 1.0)) throw ArgumentError("cf must be in (0, 1]");
    PartModel m;
    m.n_classes = static_cast<int>(d.n_class_values());
    m.schema_size = d.n_attributes();
    m.declared_counts.reserve(d.schema.size());
    for (const auto& attr : d.schema) {
        m.declared_counts.push_back(static_cast<int>(attr.values.size()));
    }

    TreeBuilder builder{d, params.min_leaf, params.cf, m.n_classes};
    std::vector<std::size_t> residual(d.n_rows());
    for (std::size_t r = 0; r < d.n_rows(); ++r) residual[r] = r;

    while (!residual.empty()) {
        auto tree = builder.expand(residual);
        if (tree->state == TreeNode::State::Leaf) break;  // no usable split left

        std::vector<LeafRef> leaves;
        std::vector<PartRule::Test> path;
        collect_leaves(tree.get(), path, leaves);
        const LeafRef* best = nullptr;
        std::size_t best_cover = 0;
        for (const auto& leaf : leaves) {
            if (!best || leaf.node->rows.size() > best_cover) {
                best = &leaf;
                best_cover = leaf.node->rows.size();
            }
        }

        PartRule rule;
        rule.conditions = best->path;
        rule.class_counts = best->node->counts;
        m.rules.push_back(std::move(rule));

        std::vector<bool> covered(d.n_rows(), false);
        for (std::size_t r : best->node->rows) covered[r] = true;
        std::vector<std::size_t> rest;
        rest.reserve(residual.size() - best->node->rows.size());
        for (std::size_t r : residual) {
            if (!covered[r]) rest.push_back(r);
        }
        residual = std::move(rest);
    }

    PartRule fallback;
    fallback.class_counts = builder.class_counts(residual);
    m.rules.push_back(std::move(fallback));
    return m;
}

PredictionDistribution part_predict(const PartModel& m, std::span<const int32_t> row) {
    if (row.size() != m.schema_size) {
        throw ArgumentError("part_predict: row does not match the training schema");
    }
    for (const auto& rule : m.rules) {
        bool match = true;
        for (const auto& test : rule.conditions) {
            int32_t v = row[static_cast<std::size_t>(test.attribute)];
            int cat = v == kMissing ? m.declared_counts[static_cast<std::size_t>(test.attribute)]
                                    : v;
            if (cat != test.category) {
                match = false;
                break;
            }
        }
        if (match) {
            PredictionDistribution dist;
            dist.probs.resize(rule.class_counts.size());
            int64_t total = 0;
            for (int64_t c : rule.class_counts) total += c;
            for (std::size_t c = 0; c < rule.class_counts.size(); ++c) {
                dist.probs[c] = (static_cast<double>(rule.class_counts[c]) + 1.0) /
                                (static_cast<double>(total) +
                                 static_cast<double>(rule.class_counts.size()));
            }
            return dist;
        }
    }
    throw std::logic_error("part_predict: default rule did not match");
}

void dump_part(const PartModel& m, const Dataset& d, std::ostream& out) {
    out << "PART decision list (" << m.rules.size() << " rules)\n";
    for (const auto& rule : m.rules) {
        if (rule.conditions.empty()) {
            out << "  otherwise";
        } else {
            out << "  if ";
            for (std::size_t t = 0; t < rule.conditions.size(); ++t) {
                const auto& test = rule.conditions[t];
                const auto& attr = d.schema[static_cast<std::size_t>(test.attribute)];
                if (t) out << " and ";
                out << attr.name << '=';
                if (test.category < static_cast<int>(attr.values.size())) {
                    out << attr.values[static_cast<std::size_t>(test.category)];
                } else {
                    out << '?';
                }
            }
        }
        out << " -> [";
        for (std::size_t c = 0; c < rule.class_counts.size(); ++c) {
            if (c) out << ' ';
            out << rule.class_counts[c];
        }
        out << "]\n";
    }
}

}  // namespace edmselect
