#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace edmselect {

// All randomized operations draw through these helpers instead of the
// std <random> distributions, whose output is implementation-defined.
// Given the same seed the byte stream is identical on every platform.

inline double uniform01(std::mt19937_64& gen) {
    return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

// Uniform index in [0, n). n must be > 0.
inline std::size_t uniform_index(std::mt19937_64& gen, std::size_t n) {
    return static_cast<std::size_t>(
        (static_cast<unsigned __int128>(gen()) * n) >> 64);
}

template <typename T>
void shuffle_inplace(std::vector<T>& v, std::mt19937_64& gen) {
    for (std::size_t i = v.size(); i > 1; --i) {
        std::swap(v[i - 1], v[uniform_index(gen, i)]);
    }
}

// Index into cumulative-weight-free categorical: probs sums to 1.
inline int draw_categorical(std::mt19937_64& gen, const std::vector<double>& probs) {
    double u = uniform01(gen);
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < probs.size(); ++i) {
        acc += probs[i];
        if (u < acc) return static_cast<int>(i);
    }
    return static_cast<int>(probs.size()) - 1;
}

}  // namespace edmselect
