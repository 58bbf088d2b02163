#pragma once

#include <cstdint>

#include "edmselect/dataset.hpp"

namespace edmselect {

// Default class-conditional skew for generated data. Chosen by a pilot
// sweep so that rankings of the planted predictors are informative but
// the task does not saturate.
inline constexpr double kDefaultSignal = 0.55;

struct SyntheticConfig {
    int n_rows = 1969;
    int n_informative = 7;         // class-correlated predictors, planted at indices 0..n-1
    double signal = kDefaultSignal;  // total-variation distance between class-conditional modes
    double pass_rate = 0.6;        // prior probability of the positive class
    uint64_t seed = 42;

    void validate() const;
};

// The 33-attribute student-survey schema (32 nominal predictors plus the
// pass/fail response "HSCGrade" as the last attribute).
std::vector<AttributeSchema> student_schema();

// Draws a dataset over student_schema(). The class is Bernoulli(pass_rate);
// each informative predictor is drawn from a class-conditional categorical
// built as (1-signal)*uniform + signal*point-mass, with a different mode
// per class, so the two conditionals differ by total-variation = signal.
// Non-informative predictors are uniform regardless of class.
Dataset generate_synthetic(const SyntheticConfig& cfg);

}  // namespace edmselect
