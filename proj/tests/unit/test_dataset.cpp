#include <doctest.h>

#include <set>
#include <sstream>

#include "edmselect/contingency.hpp"
#include "edmselect/dataset.hpp"
#include "edmselect/filters.hpp"
#include "edmselect/synthetic.hpp"
#include "support/oracles.hpp"
#include "support/test_util.hpp"

using namespace edmselect;

TEST_SUITE_BEGIN("dataset");

TEST_CASE("csv parse: plain 3-column table") {
    auto d = testutil::parse_csv_string("a,b,c\nx,1,p\ny,2,q\nx,2,p\ny,1,q\n");
    CHECK(d.n_attributes() == 3);
    CHECK(d.n_rows() == 4);
    CHECK(d.class_index == 2);
    CHECK(d.schema[0].values == std::vector<std::string>{"x", "y"});
    CHECK(d.rows[2][0] == 0);
    CHECK(d.rows[2][1] == 1);
}

TEST_CASE("csv parse: '?' is a missing cell, not a value") {
    auto d = testutil::parse_csv_string("a,b\nx,p\n?,q\n");
    CHECK(d.rows[1][0] == kMissing);
    CHECK(d.schema[0].values == std::vector<std::string>{"x"});
}

TEST_CASE("csv parse: errors") {
    std::istringstream empty("");
    CHECK_THROWS_AS(parse_table(empty, TableFormat::Csv), EmptyDatasetError);
    CHECK_THROWS_AS(testutil::parse_csv_string("a,b\nx\n"), ParseError);
    CHECK_THROWS_AS(testutil::parse_csv_string("a,b\nx,?\n"), ArgumentError);  // missing class
    try {
        testutil::parse_csv_string("a,b\nx,p\ny,q,z\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 3);
    }
}

TEST_CASE("arff parse: declared value order is kept") {
    auto d = testutil::load_fixture("weather.arff");
    CHECK(d.schema[0].name == "outlook");
    CHECK(d.schema[0].values == std::vector<std::string>{"sunny", "overcast", "rainy"});
    CHECK(d.n_rows() == 14);
    // same content as the csv fixture up to value numbering
    auto csv = testutil::load_fixture("weather.csv");
    CHECK(csv.n_rows() == d.n_rows());
    for (std::size_t r = 0; r < d.n_rows(); ++r) {
        for (std::size_t a = 0; a < d.schema.size(); ++a) {
            CHECK(d.schema[a].values[static_cast<std::size_t>(d.rows[r][a])] ==
                  csv.schema[a].values[static_cast<std::size_t>(csv.rows[r][a])]);
        }
    }
}

TEST_CASE("arff parse: unsupported sections and declarations") {
    std::istringstream numeric("@relation r\n@attribute x numeric\n@data\n1\n");
    CHECK_THROWS_AS(parse_table(numeric, TableFormat::ArffSubset), UnsupportedFeatureError);
    std::istringstream weird("@relation r\n@bogus x\n@data\n");
    CHECK_THROWS_AS(parse_table(weird, TableFormat::ArffSubset), UnsupportedFeatureError);
}

TEST_CASE("project: identity, empty, and error cases") {
    auto d = testutil::load_fixture("weather.csv");
    auto all = d.predictor_indices();
    auto same = project(d, all);
    CHECK(same.n_predictors() == d.n_predictors());
    CHECK(same.rows == d.rows);  // class already last in the fixture

    auto none = project(d, {});
    CHECK(none.n_attributes() == 1);
    CHECK(none.schema[0].name == "play");

    CHECK_THROWS_AS(project(d, {0, 4}), ArgumentError);   // class included
    CHECK_THROWS_AS(project(d, {0, 9}), ArgumentError);   // out of range
    CHECK_THROWS_AS(project(d, {0, 0}), ArgumentError);   // duplicate
}

TEST_CASE("project: the published CB-9 subset maps onto the survey schema") {
    SyntheticConfig cfg;
    cfg.n_rows = 10;
    auto d = generate_synthetic(cfg);
    // attribute numbers 17,1,21,18,20,32,13,7,28 in 1-based schema order
    std::vector<int> one_based = {17, 1, 21, 18, 20, 32, 13, 7, 28};
    std::vector<int> predictors;
    for (int n : one_based) predictors.push_back(n - 1);
    auto p = project(d, predictors);
    CHECK(p.n_predictors() == 9);
    CHECK(p.schema[0].name == "StMe");
    CHECK(p.schema[1].name == "SEX");
    CHECK(p.schema[2].name == "MED");
    CHECK(p.schema[3].name == "XMark-Grade");
    CHECK(p.schema[4].name == "LOC-SCH");
    CHECK(p.schema[5].name == "MSAL");
    CHECK(p.schema[6].name == "TransSchool");
    CHECK(p.schema[7].name == "LArea");
    CHECK(p.schema[8].name == "FOCC");
    CHECK(p.class_attribute().name == "HSCGrade");
}

TEST_CASE("project twice with the surviving set is idempotent") {
    std::mt19937_64 gen(7);
    for (int trial = 0; trial < 20; ++trial) {
        auto d = testutil::random_dataset(gen);
        std::vector<int> keep;
        for (int p : d.predictor_indices()) {
            if (uniform01(gen) < 0.6) keep.push_back(p);
        }
        auto once = project(d, keep);
        auto again = project(once, once.predictor_indices());
        CHECK(again.rows == once.rows);
        for (std::size_t a = 0; a < once.schema.size(); ++a) {
            CHECK(again.schema[a].name == once.schema[a].name);
        }
    }
}

TEST_CASE("stratified folds: balanced toy case") {
    std::vector<std::vector<int32_t>> rows;
    for (int i = 0; i < 10; ++i) rows.push_back({0, i < 5 ? 0 : 1});
    auto d = testutil::make_dataset({1, 2}, rows);
    auto fa = stratified_folds(d, 5, 3);
    for (int f = 0; f < 5; ++f) {
        int pass = 0, fail = 0;
        for (std::size_t r = 0; r < 10; ++r) {
            if (fa.labels[r] != f) continue;
            (d.class_of(r) == 0 ? pass : fail) += 1;
        }
        CHECK(pass == 1);
        CHECK(fail == 1);
    }
    auto fa2 = stratified_folds(d, 5, 3);
    CHECK(fa.labels == fa2.labels);
    CHECK_THROWS_AS(stratified_folds(d, 11, 3), ArgumentError);
}

TEST_CASE("stratified folds: 1969 rows over 10 folds") {
    SyntheticConfig cfg;
    auto d = generate_synthetic(cfg);
    auto fa = stratified_folds(d, 10, 7);
    std::vector<int> sizes(10, 0);
    for (int f : fa.labels) ++sizes[static_cast<std::size_t>(f)];
    for (int s : sizes) CHECK((s == 196 || s == 197));
}

TEST_CASE("stratified folds: partition and per-class balance on random data") {
    std::mt19937_64 gen(11);
    for (int trial = 0; trial < 30; ++trial) {
        auto d = testutil::random_dataset(gen, 40, 3, 3, 3);
        auto counts = d.class_counts();
        bool all_present = true;
        for (int64_t c : counts) {
            if (c == 0) all_present = false;
        }
        if (!all_present || d.n_rows() < 2) continue;
        int n_folds = 2 + static_cast<int>(uniform_index(gen, 3));
        if (static_cast<std::size_t>(n_folds) > d.n_rows()) continue;
        auto fa = stratified_folds(d, n_folds, trial);
        REQUIRE(fa.labels.size() == d.n_rows());
        for (std::size_t c = 0; c < counts.size(); ++c) {
            std::vector<int64_t> per_fold(static_cast<std::size_t>(n_folds), 0);
            for (std::size_t r = 0; r < d.n_rows(); ++r) {
                if (d.class_of(r) == static_cast<int32_t>(c)) {
                    ++per_fold[static_cast<std::size_t>(fa.labels[r])];
                }
            }
            double ideal = static_cast<double>(counts[c]) / n_folds;
            for (int64_t got : per_fold) {
                CHECK(std::abs(static_cast<double>(got) - ideal) <= 1.0 + 1e-9);
            }
        }
        std::vector<int64_t> sizes(static_cast<std::size_t>(n_folds), 0);
        for (int f : fa.labels) ++sizes[static_cast<std::size_t>(f)];
        auto [mn, mx] = std::minmax_element(sizes.begin(), sizes.end());
        CHECK(*mx - *mn <= 1);
    }
}

TEST_CASE("one-hot encoding") {
    auto d = testutil::make_dataset({3, 2, 2}, {{1, 0, 0}, {kMissing, 1, 1}});
    auto m = one_hot_encode(d);
    CHECK(m.n_cols == 5);
    CHECK(m.rows[0] == std::vector<double>{0, 1, 0, 1, 0});
    CHECK(m.rows[1] == std::vector<double>{0, 0, 0, 0, 1});
    CHECK(m.labels == std::vector<int>{1, -1});

    auto multi = testutil::make_dataset({2, 3}, {{0, 0}, {0, 1}, {1, 2}});
    CHECK_THROWS_AS(one_hot_encode(multi), UnsupportedFeatureError);
}

TEST_CASE("one-hot: per-attribute block sums are 0 or 1") {
    std::mt19937_64 gen(23);
    for (int trial = 0; trial < 20; ++trial) {
        auto d = testutil::random_dataset(gen, 15, 4, 4, 2);
        if (d.n_class_values() != 2) continue;
        auto m = one_hot_encode(d);
        for (const auto& row : m.rows) {
            for (std::size_t b = 0; b < m.block_offset.size(); ++b) {
                double sum = 0.0;
                for (int v = 0; v < m.block_arity[b]; ++v) {
                    sum += row[m.block_offset[b] + static_cast<std::size_t>(v)];
                }
                CHECK((sum == 0.0 || sum == 1.0));
            }
        }
    }
}

TEST_CASE("synthetic generator: determinism and schema") {
    SyntheticConfig cfg;
    cfg.n_rows = 50;
    auto a = generate_synthetic(cfg);
    auto b = generate_synthetic(cfg);
    std::ostringstream sa, sb;
    write_csv(a, sa);
    write_csv(b, sb);
    CHECK(sa.str() == sb.str());
    CHECK(a.n_attributes() == 33);
    CHECK(a.class_attribute().name == "HSCGrade");
    CHECK(a.class_attribute().values == std::vector<std::string>{"pass", "fail"});
}

TEST_CASE("synthetic generator: signal=1 with one informative predictor is deterministic") {
    SyntheticConfig cfg;
    cfg.n_rows = 200;
    cfg.n_informative = 1;
    cfg.signal = 1.0;
    auto d = generate_synthetic(cfg);
    for (std::size_t r = 0; r < d.n_rows(); ++r) {
        CHECK(d.rows[r][0] == (d.class_of(r) == 0 ? 0 : 1));
    }
}

TEST_CASE("synthetic generator: signal=0 leaves no dependence") {
    SyntheticConfig cfg;
    cfg.n_rows = 10000;
    cfg.signal = 0.0;
    auto d = generate_synthetic(cfg);
    for (int a = 0; a < 8; ++a) {  // spot-check the would-be informative block
        CHECK(symmetrical_uncertainty(contingency(d, a)) < 0.01);
    }
}

TEST_CASE("synthetic generator: config validation") {
    SyntheticConfig cfg;
    cfg.n_rows = 0;
    CHECK_THROWS_AS(generate_synthetic(cfg), ArgumentError);
    cfg = {};
    cfg.signal = 1.5;
    CHECK_THROWS_AS(generate_synthetic(cfg), ArgumentError);
    cfg = {};
    cfg.pass_rate = 1.0;
    CHECK_THROWS_AS(generate_synthetic(cfg), ArgumentError);
    cfg = {};
    cfg.n_informative = 40;
    CHECK_THROWS_AS(generate_synthetic(cfg), ArgumentError);
}

TEST_CASE("contingency: weather outlook hand count") {
    auto d = testutil::load_fixture("weather.csv");
    auto t = contingency(d, 0);
    REQUIRE(t.n_rows == 3);
    REQUIRE(t.n_cols == 2);
    CHECK(t.total == 14);
    // value order sunny, overcast, rainy; class order no, yes
    CHECK(t.at(0, 0) == 3);
    CHECK(t.at(0, 1) == 2);
    CHECK(t.at(1, 0) == 0);
    CHECK(t.at(1, 1) == 4);
    CHECK(t.at(2, 0) == 2);
    CHECK(t.at(2, 1) == 3);
    CHECK(t.row_sums == std::vector<int64_t>{5, 4, 5});
    CHECK(t.col_sums == std::vector<int64_t>{5, 9});
}

TEST_CASE("contingency: single-valued attribute and unused schema values") {
    auto one = testutil::make_dataset({1, 2}, {{0, 0}, {0, 1}, {0, 0}});
    auto t = contingency(one, 0);
    CHECK(t.n_rows == 1);
    CHECK(t.row_sums[0] == 3);

    // value v2 declared via arff-style schema but absent from the rows
    std::istringstream arff(
        "@relation r\n@attribute a {x,y,z}\n@attribute c {p,q}\n@data\nx,p\ny,q\n");
    auto d = parse_table(arff, TableFormat::ArffSubset);
    auto t2 = contingency(d, 0);
    CHECK(t2.n_rows == 3);
    CHECK(t2.row_sums[2] == 0);

    CHECK_THROWS_AS(contingency(d, 1), ArgumentError);  // class attribute
}

TEST_CASE("contingency: missing cells get their own trailing bucket") {
    auto d = testutil::make_dataset({2, 2}, {{0, 0}, {kMissing, 1}, {1, 1}});
    auto t = contingency(d, 0);
    REQUIRE(t.n_rows == 3);
    CHECK(t.at(2, 1) == 1);
    CHECK(t.row_sums[2] == 1);
}

TEST_CASE("contingency marginals on random data") {
    std::mt19937_64 gen(31);
    for (int trial = 0; trial < 30; ++trial) {
        auto d = testutil::random_dataset(gen);
        for (int a : d.predictor_indices()) {
            auto t = contingency(d, a);
            CHECK(t.total == static_cast<int64_t>(d.n_rows()));
            std::vector<int64_t> freq(t.n_rows, 0);
            for (std::size_t r = 0; r < d.n_rows(); ++r) {
                ++freq[static_cast<std::size_t>(d.category_of(r, a))];
            }
            CHECK(freq == t.row_sums);
        }
    }
}

TEST_SUITE_END();
