#include "unclelab/lanczos.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "unclelab/rng.hpp"

namespace unclelab {

namespace {

Vector random_start(Rng& rng, std::int64_t dim) {
    Vector v(dim);
    for (std::int64_t i = 0; i < dim; ++i) v(i) = rng.complex_gaussian();
    return v;
}

void project_out(Vector& w, const std::vector<Vector>& basis, const Matrix* deflate) {
    for (int pass = 0; pass < 2; ++pass) {
        if (deflate && deflate->cols() > 0)
            w -= (*deflate) * (deflate->adjoint() * w);
        for (const auto& v : basis) w -= v * v.dot(w);
    }
}

}  // namespace

LanczosResult lanczos_lowest(const LinOp& op, std::int64_t dim, int want,
                             const Matrix* deflate, const LanczosOptions& opts) {
    if (dim < 1) throw DimensionError("lanczos_lowest: empty space");
    std::int64_t deflated = deflate ? deflate->cols() : 0;
    int max_basis = static_cast<int>(std::min<std::int64_t>(opts.max_iter, dim - deflated));
    if (max_basis < 1) throw DimensionError("lanczos_lowest: nothing left after deflation");

    Rng rng(opts.seed);
    std::vector<Vector> basis;
    std::vector<double> alpha, beta;  // beta[j] couples basis[j] and basis[j+1]
    int restarts_left = opts.restarts;

    Vector v = random_start(rng, dim);
    project_out(v, basis, deflate);
    double nv = v.norm();
    if (nv < 1e-14) throw ConvergenceError("lanczos_lowest: degenerate start vector");
    v /= nv;

    Vector w(dim);
    while (static_cast<int>(basis.size()) < max_basis) {
        basis.push_back(v);
        op(basis.back(), w);
        double a = std::real(basis.back().dot(w));
        alpha.push_back(a);
        if (static_cast<int>(basis.size()) == max_basis) break;
        project_out(w, basis, deflate);
        double b = w.norm();
        if (b < 1e-12) {
            // Invariant subspace found; restart to expose further multiplicity.
            if (restarts_left-- <= 0) break;
            Vector fresh = random_start(rng, dim);
            project_out(fresh, basis, deflate);
            double nf = fresh.norm();
            if (nf < 1e-12) break;
            beta.push_back(0.0);
            v = fresh / nf;
            continue;
        }
        beta.push_back(b);
        v = w / b;
    }

    int m = static_cast<int>(basis.size());
    Matrix tri = Matrix::Zero(m, m);
    for (int i = 0; i < m; ++i) {
        tri(i, i) = alpha[static_cast<size_t>(i)];
        if (i + 1 < m) {
            tri(i, i + 1) = beta[static_cast<size_t>(i)];
            tri(i + 1, i) = beta[static_cast<size_t>(i)];
        }
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(tri);
    if (es.info() != Eigen::Success)
        throw ConvergenceError("lanczos_lowest: tridiagonal solve failed");

    int take = std::min(want, m);
    LanczosResult out;
    out.iterations = m;
    out.vectors = Matrix(dim, take);
    Vector y(dim), hy(dim);
    for (int i = 0; i < take; ++i) {
        y.setZero();
        for (int j = 0; j < m; ++j) y += es.eigenvectors()(j, i) * basis[static_cast<size_t>(j)];
        double ny = y.norm();
        y /= ny;
        op(y, hy);
        double theta = es.eigenvalues()(i);
        out.values.push_back(theta);
        out.residuals.push_back((hy - theta * y).norm());
        out.vectors.col(i) = y;
    }
    return out;
}

}  // namespace unclelab
