#include "edmselect/synthetic.hpp"

#include "edmselect/rng.hpp"

namespace edmselect {

void SyntheticConfig::validate() const {
    if (n_rows < 1) throw ArgumentError("n_rows must be positive");
    if (n_informative < 0 || n_informative > 32) {
        throw ArgumentError("n_informative must be in [0, 32]");
    }
    if (signal < 0.0 || signal > 1.0) throw ArgumentError("signal must be in [0, 1]");
    if (!(pass_rate > 0.0 && pass_rate < 1.0)) {
        throw ArgumentError("pass_rate must be strictly between 0 and 1");
    }
}

std::vector<AttributeSchema> student_schema() {
    // 32 nominal predictors plus the pass/fail response, with plausible
    // category counts for a close-end questionnaire.
    static const std::pair<const char*, int> kAttrs[] = {
        {"SEX", 2},         {"ESight", 2},      {"Comm", 4},       {"PHD", 2},
        {"FHBT", 2},        {"FAM-Size", 3},    {"LArea", 3},      {"No-EB", 4},
        {"No-ES", 4},       {"No-YB", 4},       {"No-YS", 4},      {"JIFamily", 2},
        {"TransSchool", 3}, {"Veh-Home", 2},    {"PSEdu", 2},      {"ESEdu", 3},
        {"StMe", 3},        {"XMark-Grade", 5}, {"TYP-SCH", 3},    {"LOC-SCH", 3},
        {"MED", 2},         {"PTution", 3},     {"SPerson", 2},    {"SpIndoor", 3},
        {"SpOutdoor", 3},   {"Cstudy", 3},      {"FEDU", 5},       {"FOCC", 4},
        {"FSAL", 4},        {"MEDU", 5},        {"MOCC", 4},       {"MSAL", 4},
    };
    std::vector<AttributeSchema> schema;
    schema.reserve(33);
    for (const auto& [name, arity] : kAttrs) {
        AttributeSchema a;
        a.name = name;
        a.index = static_cast<int>(schema.size());
        for (int v = 0; v < arity; ++v) a.values.push_back("v" + std::to_string(v + 1));
        schema.push_back(std::move(a));
    }
    AttributeSchema cls;
    cls.name = "HSCGrade";
    cls.index = 32;
    cls.values = {"pass", "fail"};
    schema.push_back(std::move(cls));
    return schema;
}

Dataset generate_synthetic(const SyntheticConfig& cfg) {
    cfg.validate();
    Dataset d;
    d.schema = student_schema();
    d.class_index = 32;
    d.positive_class = 0;  // "pass"

    // Per-class conditionals for the informative predictors: mode v1 for
    // pass, v2 for fail, everything else shared, so TV distance = signal.
    std::vector<std::vector<double>> cond_pass(32), cond_fail(32);
    for (int a = 0; a < 32; ++a) {
        auto m = d.schema[static_cast<std::size_t>(a)].values.size();
        std::vector<double> uniform(m, 1.0 / static_cast<double>(m));
        if (a < cfg.n_informative) {
            auto skew = [&](std::size_t mode) {
                std::vector<double> p(m);
                for (std::size_t v = 0; v < m; ++v) {
                    p[v] = (1.0 - cfg.signal) * uniform[v] + (v == mode ? cfg.signal : 0.0);
                }
                return p;
            };
            cond_pass[static_cast<std::size_t>(a)] = skew(0);
            cond_fail[static_cast<std::size_t>(a)] = skew(1);
        } else {
            cond_pass[static_cast<std::size_t>(a)] = uniform;
            cond_fail[static_cast<std::size_t>(a)] = uniform;
        }
    }

    std::mt19937_64 gen(cfg.seed);
    d.rows.reserve(static_cast<std::size_t>(cfg.n_rows));
    for (int r = 0; r < cfg.n_rows; ++r) {
        std::vector<int32_t> row(33);
        bool pass = uniform01(gen) < cfg.pass_rate;
        row[32] = pass ? 0 : 1;
        for (int a = 0; a < 32; ++a) {
            const auto& p = pass ? cond_pass[static_cast<std::size_t>(a)]
                                 : cond_fail[static_cast<std::size_t>(a)];
            row[static_cast<std::size_t>(a)] = draw_categorical(gen, p);
        }
        d.rows.push_back(std::move(row));
    }
    return d;
}

}  // namespace edmselect
