#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "unclelab/linalg.hpp"

namespace unclelab {

using LinOp = std::function<void(const Vector&, Vector&)>;

struct LanczosOptions {
    int max_iter = 300;
    double tol = 1e-9;        // residual threshold for convergence reporting
    std::uint64_t seed = 7;
    int restarts = 3;         // random restarts after happy breakdown
};

struct LanczosResult {
    std::vector<double> values;     // converged Ritz values, ascending
    std::vector<double> residuals;  // matching residual estimates
    Matrix vectors;                 // matching Ritz vectors as columns
    int iterations = 0;
};

// Hermitian Lanczos with full reorthogonalization; random restarts after
// invariant-subspace breakdowns let degenerate clusters surface. `deflate`
// holds orthonormal columns to project out (known kernel, etc.).
LanczosResult lanczos_lowest(const LinOp& op, std::int64_t dim, int want,
                             const Matrix* deflate = nullptr,
                             const LanczosOptions& opts = LanczosOptions());

}  // namespace unclelab
