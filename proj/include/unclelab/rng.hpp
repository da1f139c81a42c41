#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "unclelab/linalg.hpp"

namespace unclelab {

// Deterministic Gaussian sampler. std::normal_distribution is
// implementation-defined, so Box-Muller over the fully specified
// mt19937_64 stream keeps outputs bitwise stable everywhere.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    double uniform() {
        // 53-bit mantissa in (0,1]; never returns 0 so log() is safe.
        std::uint64_t bits = gen_() >> 11;
        return (static_cast<double>(bits) + 1.0) * 0x1.0p-53;
    }

    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        double u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double theta = 2.0 * M_PI * u2;
        spare_ = r * std::sin(theta);
        have_spare_ = true;
        return r * std::cos(theta);
    }

    cd complex_gaussian() {
        double re = gaussian();
        double im = gaussian();
        return cd(re, im);
    }

    std::uint64_t raw() { return gen_(); }

private:
    std::mt19937_64 gen_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

inline Matrix random_matrix(Rng& rng, Eigen::Index rows, Eigen::Index cols) {
    Matrix m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r)
        for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = rng.complex_gaussian();
    return m;
}

}  // namespace unclelab
