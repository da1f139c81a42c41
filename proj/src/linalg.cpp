#include "unclelab/linalg.hpp"

#include <Eigen/SVD>
#include <cmath>

namespace unclelab {


double operator_norm(const Matrix& m) {
    if (m.size() == 0) return 0.0;
    Eigen::BDCSVD<Matrix> svd(m);
    return svd.singularValues()(0);
}

Matrix orthonormal_columns(const Matrix& g, double rel_tol) {
    if (g.cols() == 0 || g.rows() == 0) return Matrix(g.rows(), 0);
    Eigen::BDCSVD<Matrix> svd(g, Eigen::ComputeThinU);
    const auto& sv = svd.singularValues();
    double smax = sv(0);
    if (smax < 1e-300) return Matrix(g.rows(), 0);
    int rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) > rel_tol * smax) ++rank;
    return svd.matrixU().leftCols(rank);
}

int numerical_rank(const Matrix& g, double rel_tol) {
    if (g.cols() == 0 || g.rows() == 0) return 0;
    Eigen::BDCSVD<Matrix> svd(g);
    const auto& sv = svd.singularValues();
    double smax = sv(0);
    if (smax < 1e-300) return 0;
    int rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) > rel_tol * smax) ++rank;
    return rank;
}

RealVector principal_cosines(const Matrix& u, const Matrix& v) {
    if (u.cols() == 0 || v.cols() == 0) return RealVector(0);
    Matrix qu = orthonormal_columns(u, 1e-12);
    Matrix qv = orthonormal_columns(v, 1e-12);
    Matrix overlap = qu.adjoint() * qv;
    Eigen::JacobiSVD<Matrix> svd(overlap);
    RealVector cos = svd.singularValues();
    for (Eigen::Index i = 0; i < cos.size(); ++i) cos(i) = std::min(cos(i), 1.0);
    return cos;
}

Matrix subspace_intersection(const Matrix& u, const Matrix& v, double cos_threshold) {
    if (u.cols() == 0 || v.cols() == 0) return Matrix(u.rows(), 0);
    Matrix qu = orthonormal_columns(u, 1e-12);
    Matrix qv = orthonormal_columns(v, 1e-12);
    Matrix overlap = qu.adjoint() * qv;
    Eigen::JacobiSVD<Matrix> svd(overlap, Eigen::ComputeFullU);
    const auto& sv = svd.singularValues();
    int dim = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) >= cos_threshold) ++dim;
    return qu * svd.matrixU().leftCols(dim);
}

double subspace_distance(const Matrix& u, const Matrix& v) {
    if (u.cols() != v.cols())
        throw DimensionError("subspace_distance: dimension mismatch");
    if (u.cols() == 0) return 0.0;
    Matrix qu = orthonormal_columns(u, 1e-12);
    Matrix qv = orthonormal_columns(v, 1e-12);
    if (qu.cols() != qv.cols()) return 1.0;
    if (qv.cols() == 0) return 0.0;
    // Largest singular value of (1 - P_u) qv is the sine of the largest
    // principal angle; going through the cosine instead would floor near
    // sqrt(eps) for close spans.
    Matrix res = qv - qu * (qu.adjoint() * qv).eval();
    Eigen::JacobiSVD<Matrix> svd(res);
    return svd.singularValues()(0);
}

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw DimensionError("fit_line: need at least two points");
    double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    LineFit fit;
    double denom = n * sxx - sx * sx;
    fit.slope = (n * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / n;
    for (size_t i = 0; i < x.size(); ++i)
        fit.max_residual = std::max(fit.max_residual,
                                    std::abs(y[i] - fit.slope * x[i] - fit.intercept));
    return fit;
}

}  // namespace unclelab
