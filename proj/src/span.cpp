#include "unclelab/span.hpp"

#include <cmath>

namespace unclelab {

namespace {

int integer_root(int value, int k) {
    int r = static_cast<int>(std::llround(std::pow(static_cast<double>(value),
                                                   1.0 / static_cast<double>(k))));
    for (int cand = std::max(1, r - 1); cand <= r + 1; ++cand) {
        if (int_pow(cand, k) == value) return cand;
    }
    throw DimensionError("physical dimension is not a perfect power of the site count");
}

}  // namespace

SpanBasis span_basis(const MpsTensor& t, double tol, int sites) {
    // Column for X = E_{ab} carries amplitudes tr[T_i E_{ab}] = (T_i)_{ba},
    // which is row i of tensor_matrix up to index reshuffling; the column
    // space is identical, so reuse the vec layout directly.
    Matrix g(t.d(), t.rows() * t.cols());
    for (int i = 0; i < t.d(); ++i) g.row(i) = vec(t.mat(i)).transpose();
    SpanBasis basis;
    basis.vectors = orthonormal_columns(g, tol);
    basis.phys_dim = t.d();
    basis.sites = sites;
    basis.bond_rows = t.rows();
    basis.bond_cols = t.cols();
    return basis;
}

ProjectorTerm projector_complement(const MpsTensor& t, int support, double tol) {
    SpanBasis basis = span_basis(t, tol, support);
    ProjectorTerm term;
    term.support = support;
    term.local_dim = integer_root(t.d(), support);
    Matrix v = basis.vectors;
    term.matrix = Matrix::Identity(t.d(), t.d()) - v * v.adjoint();
    term.matrix = hermitize(term.matrix);
    return term;
}

Vector state_from_site_tensors(const std::vector<const MpsTensor*>& site_tensors,
                               const Boundary& boundary) {
    if (site_tensors.empty())
        throw DimensionError("state_from_site_tensors: empty chain");
    int n = static_cast<int>(site_tensors.size());
    int d = site_tensors[0]->d();
    std::int64_t dim = 1;
    for (int s = 0; s < n; ++s) {
        if (site_tensors[static_cast<size_t>(s)]->d() != d)
            throw DimensionError("state_from_site_tensors: physical dims differ");
        dim *= d;
        if (dim > limits::max_state_dim)
            throw SizeCapError("state_from_site_tensors: d^n exceeds state cap");
    }
    for (int s = 0; s + 1 < n; ++s)
        if (site_tensors[static_cast<size_t>(s)]->cols() !=
            site_tensors[static_cast<size_t>(s + 1)]->rows())
            throw DimensionError("state_from_site_tensors: bond mismatch");
    Eigen::Index first = site_tensors[0]->rows();
    Eigen::Index last = site_tensors[static_cast<size_t>(n - 1)]->cols();
    if (boundary.kind == Boundary::Open) {
        if (boundary.x.rows() != last || boundary.x.cols() != first)
            throw DimensionError("state_from_site_tensors: boundary insertion shape");
    } else if (first != last) {
        throw DimensionError("state_from_site_tensors: chain does not close");
    }

    Vector out(dim);
    // Depth-first partial products; prefix[s] = T_{i1} ... T_{is}.
    std::vector<Matrix> prefix(static_cast<size_t>(n));
    std::vector<int> digit(static_cast<size_t>(n), 0);
    int s = 0;
    std::int64_t idx = 0;
    while (true) {
        const Matrix& m = site_tensors[static_cast<size_t>(s)]->mat(digit[static_cast<size_t>(s)]);
        prefix[static_cast<size_t>(s)] = (s == 0) ? m : Matrix(prefix[static_cast<size_t>(s - 1)] * m);
        if (s == n - 1) {
            const Matrix& p = prefix[static_cast<size_t>(s)];
            out(idx) = (boundary.kind == Boundary::Open) ? (p * boundary.x).trace()
                                                         : p.trace();
            ++idx;
            while (s >= 0 && digit[static_cast<size_t>(s)] == d - 1) {
                digit[static_cast<size_t>(s)] = 0;
                --s;
            }
            if (s < 0) break;
            ++digit[static_cast<size_t>(s)];
        } else {
            ++s;
        }
    }
    return out;
}

Vector mps_state(const MpsTensor& t, int n, const Boundary& boundary) {
    std::vector<const MpsTensor*> sites(static_cast<size_t>(n), &t);
    return state_from_site_tensors(sites, boundary);
}

Vector mps_state(const BlockMps& c, int n, const Boundary& boundary) {
    MpsTensor full = c.full_tensor();
    return mps_state(full, n, boundary);
}

namespace {

// Generator matrix: one column per closure matrix unit; tensors holds the
// per-position site layouts to sum over.
Matrix family_generator(const std::vector<std::vector<const MpsTensor*>>& layouts,
                        Eigen::Index x_rows, Eigen::Index x_cols) {
    std::int64_t dim = 1;
    for (size_t s = 0; s < layouts[0].size(); ++s) dim *= layouts[0][s]->d();
    Matrix g = Matrix::Zero(dim, x_rows * x_cols);
    for (Eigen::Index a = 0; a < x_rows; ++a) {
        for (Eigen::Index b = 0; b < x_cols; ++b) {
            Matrix unit = Matrix::Zero(x_rows, x_cols);
            unit(a, b) = 1.0;
            Vector col = Vector::Zero(dim);
            for (const auto& layout : layouts)
                col += state_from_site_tensors(layout, Boundary::open(unit));
            g.col(b * x_rows + a) = col;
        }
    }
    return g;
}

}  // namespace

DomainWallSpan domain_wall_span(const MpsTensor& a, const MpsTensor& b,
                                const MpsTensor& r, const MpsTensor& l, int n,
                                double tol) {
    if (n < 1) throw DimensionError("domain_wall_span: n must be positive");
    Eigen::Index la = a.D(), mb = b.D();
    if (r.rows() != la || r.cols() != mb || l.rows() != mb || l.cols() != la)
        throw DimensionError("domain_wall_span: wall shapes incompatible");

    std::vector<std::vector<const MpsTensor*>> pure_a{
        std::vector<const MpsTensor*>(static_cast<size_t>(n), &a)};
    std::vector<std::vector<const MpsTensor*>> pure_b{
        std::vector<const MpsTensor*>(static_cast<size_t>(n), &b)};
    std::vector<std::vector<const MpsTensor*>> wall_r, wall_l;
    for (int p = 0; p < n; ++p) {
        std::vector<const MpsTensor*> lay_r, lay_l;
        for (int s = 0; s < n; ++s) {
            if (s < p) lay_r.push_back(&a);
            else if (s == p) lay_r.push_back(&r);
            else lay_r.push_back(&b);
            if (s < p) lay_l.push_back(&b);
            else if (s == p) lay_l.push_back(&l);
            else lay_l.push_back(&a);
        }
        wall_r.push_back(std::move(lay_r));
        wall_l.push_back(std::move(lay_l));
    }

    Matrix ga = family_generator(pure_a, la, la);
    Matrix gb = family_generator(pure_b, mb, mb);
    Matrix gr = family_generator(wall_r, mb, la);  // closure X: cols(b) -> rows(a)
    Matrix gl = family_generator(wall_l, la, mb);

    DomainWallSpan out;
    out.basis_a = orthonormal_columns(ga, tol);
    out.basis_b = orthonormal_columns(gb, tol);
    out.basis_r = orthonormal_columns(gr, tol);
    out.basis_l = orthonormal_columns(gl, tol);
    Matrix joint(ga.rows(), ga.cols() + gb.cols() + gr.cols() + gl.cols());
    joint << ga, gb, gr, gl;
    out.joint = orthonormal_columns(joint, tol);
    out.predicted_dim = static_cast<int>(la * la + mb * mb + 2 * la * mb);
    return out;
}

}  // namespace unclelab
