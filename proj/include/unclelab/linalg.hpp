#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <vector>

#include "unclelab/errors.hpp"
#include "unclelab/limits.hpp"

namespace unclelab {

using cd = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline std::int64_t int_pow(std::int64_t base, int exp) {
    std::int64_t r = 1;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

inline Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

inline Matrix hermitize(const Matrix& m) { return 0.5 * (m + m.adjoint()); }

// Column-major vec, matching Eigen's internal layout.
inline Vector vec(const Matrix& m) {
    return Eigen::Map<const Vector>(m.data(), m.size());
}

inline Matrix unvec(const Vector& v, Eigen::Index rows, Eigen::Index cols) {
    return Eigen::Map<const Matrix>(v.data(), rows, cols);
}

double operator_norm(const Matrix& m);

// Orthonormal basis of the column space, singular values above rel_tol * sigma_max.
Matrix orthonormal_columns(const Matrix& g, double rel_tol = limits::rank_rel_tol);

int numerical_rank(const Matrix& g, double rel_tol = limits::rank_rel_tol);

// Cosines of principal angles between two orthonormal-column subspaces, descending.
RealVector principal_cosines(const Matrix& u, const Matrix& v);

// Orthonormal basis for the intersection of two subspaces (orthonormal columns each).
Matrix subspace_intersection(const Matrix& u, const Matrix& v,
                             double cos_threshold = limits::cos_threshold);

// Largest sine distance between equal-dimension subspaces; throws on dim mismatch.
double subspace_distance(const Matrix& u, const Matrix& v);

// Least-squares slope/intercept of y against x.
struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double max_residual = 0.0;
};
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace unclelab
