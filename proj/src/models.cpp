#include "unclelab/models.hpp"

#include <cmath>

#include "unclelab/injectivity.hpp"
#include "unclelab/pauli.hpp"
#include "unclelab/spectra.hpp"

namespace unclelab {

namespace {

MpsTensor scalar_block(double v0, double v1) {
    Matrix m0(1, 1), m1(1, 1);
    m0 << v0;
    m1 << v1;
    return MpsTensor({m0, m1});
}

Matrix unit_vector(int dim, std::initializer_list<int> support) {
    Matrix v = Matrix::Zero(dim, 1);
    for (int i : support) v(i, 0) = 1.0;
    v /= v.norm();
    return v;
}

ProjectorTerm complement_of(int dim, int support_sites,
                            const std::vector<Matrix>& states) {
    Matrix m = Matrix::Identity(dim, dim);
    for (const Matrix& v : states) m -= v * v.adjoint();
    return ProjectorTerm{std::move(m), support_sites, 2};
}

RealVector dense_spectrum(const ProjectorTerm& term, int n) {
    ChainOperator h = assemble(term, n, BoundaryKind::Periodic);
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(h.dense()), Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
        throw ConvergenceError("dense chain eigensolver failed");
    return es.eigenvalues();
}

double min_eigenvalue(const Matrix& m) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(m), Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw ConvergenceError("eigensolver failed");
    return es.eigenvalues()[0];
}

// The k-site wall windows [ A..A | sum_j A..R..A ] must separate all boundary
// insertions for some k; defects that telescope into the base (R proportional
// to A, say) never do.
bool wall_window_injective(const MpsTensor& a, const MpsTensor& r, double tol) {
    Eigen::Index dd = a.rows();
    MpsTensor upper = arrange_blocks(a, r, zero_tensor(a.d(), dd, dd), a);
    std::int64_t dk = 1;
    for (int k = 1; k <= 6; ++k) {
        dk *= a.d();
        if (dk > limits::max_blocked_dim) break;
        MpsTensor blocked = block_sites(upper, k);
        std::vector<Matrix> top;
        top.reserve(static_cast<size_t>(blocked.d()));
        for (int i = 0; i < blocked.d(); ++i) top.push_back(blocked.mat(i).topRows(dd));
        if (is_injective(MpsTensor(std::move(top)), tol)) return true;
    }
    return false;
}

}  // namespace

BlockMps ghz_tensor() {
    return BlockMps({scalar_block(1.0, 0.0), scalar_block(0.0, 1.0)});
}

MpsTensor zero_scalar_tensor() { return scalar_block(1.0, 0.0); }

BlockMps zero_doubled_tensor() {
    return BlockMps({zero_scalar_tensor(), zero_scalar_tensor()});
}

ProjectorTerm ghz_parent_term() {
    return complement_of(4, 2, {unit_vector(4, {0}), unit_vector(4, {3})});
}

ProjectorTerm ghz_uncle_term() {
    return complement_of(8, 3,
                         {unit_vector(8, {0}), unit_vector(8, {7}),
                          unit_vector(8, {1, 3}), unit_vector(8, {4, 6})});
}

ProjectorTerm zero_uncle_term2() {
    return complement_of(4, 2, {unit_vector(4, {0}), unit_vector(4, {1, 2})});
}

ProjectorTerm zero_uncle_term3() {
    return complement_of(8, 3, {unit_vector(8, {0}), unit_vector(8, {1, 2, 4})});
}

ProjectorTerm defect_uncle_term(const MpsTensor& a, const MpsTensor& r, int sites,
                                double tol) {
    if (!a.is_square())
        throw DimensionError("defect_uncle_term: base tensor must be square");
    if (r.d() != a.d() || r.rows() != a.rows() || r.cols() != a.cols())
        throw DimensionError("defect_uncle_term: defect shape must match the base");
    if (!is_injective(a, tol))
        throw InjectivityError("defect_uncle_term: base tensor must be injective");
    double rnorm = 0.0;
    for (int i = 0; i < r.d(); ++i) rnorm += r.mat(i).squaredNorm();
    if (rnorm == 0.0) return parent_local_term(a, sites, tol);
    if (!wall_window_injective(a, r, tol))
        throw InjectivityError("defect_uncle_term: (base, defect) wall windows never separate");
    BlockMps c({a, a});
    Perturbation p;
    p.pa = zero_tensor(a.d(), a.rows(), a.cols());
    p.pb = p.pa;
    p.r = r;
    p.l = r;
    UncleTensor u = uncle_tensor(c, p, sites);
    int span_dim = span_basis(u.tensor, tol, sites).dim();
    std::int64_t full = int_pow(a.d(), sites);
    if (span_dim >= full)
        throw UncleUndefinedError(
            "defect_uncle_term: limit-tensor span fills the local space, the term "
            "would vanish; block more sites");
    return projector_complement(u.tensor, sites, tol);
}

double xy_identity_check() {
    std::vector<PauliString> terms = {{cd(-0.25, 0), "IZZ"}, {cd(-0.25, 0), "ZZI"},
                                      {cd(-0.25, 0), "IXI"}, {cd(0.25, 0), "ZXZ"},
                                      {cd(0.5, 0), "III"}};
    return operator_norm(pauli_dense(terms) - ghz_uncle_term().matrix);
}

SandwichReport sandwich_check(int n) {
    if (n < 3) throw GeometryError("sandwich_check: need at least three sites");
    SandwichReport rep;
    rep.sites = n;
    ProjectorTerm h3 = zero_uncle_term3();
    ProjectorTerm h2 = zero_uncle_term2();
    Matrix id2 = Matrix::Identity(2, 2);
    Matrix left = kron(h2.matrix, id2);
    Matrix right = kron(id2, h2.matrix);

    // Each two-site window vanishes on the three-site kernel, so it is
    // dominated by the projector h3 directly.
    rep.local_upper_min = std::min(min_eigenvalue(h3.matrix - left),
                                   min_eigenvalue(h3.matrix - right));

    // The two-window sum is gapped above the same kernel; its gap gives the
    // constant for the reverse direction. Summed around the ring the two
    // windows cover every bond twice, hence the factor two.
    Matrix pair_sum = left + right;
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(pair_sum), Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw ConvergenceError("eigensolver failed");
    double gap = 0.0;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
        if (es.eigenvalues()[i] > limits::kernel_tol) {
            gap = es.eigenvalues()[i];
            break;
        }
    if (gap <= 0.0) throw ConvergenceError("sandwich_check: two-window sum has no gap");
    rep.lower_constant = 2.0 / gap;
    rep.local_lower_min = min_eigenvalue((1.0 / gap) * pair_sum - h3.matrix);

    RealVector lam = dense_spectrum(h3, n);
    RealVector lam2 = dense_spectrum(h2, n);
    rep.worst_lower = 0.0;
    rep.worst_upper = 0.0;
    rep.worst_half = 0.0;
    for (Eigen::Index i = 0; i < lam.size(); ++i) {
        rep.worst_lower = std::max(rep.worst_lower, lam[i] - rep.lower_constant * lam2[i]);
        rep.worst_upper = std::max(rep.worst_upper, lam2[i] - lam[i]);
        rep.worst_half = std::max(rep.worst_half, 0.5 * lam[i] - lam2[i]);
    }
    rep.holds = rep.local_lower_min > -1e-12 && rep.local_upper_min > -1e-12 &&
                rep.worst_lower <= 1e-9 && rep.worst_upper <= 1e-9;
    return rep;
}

DualityReport duality_sector_check(int n) {
    if (n < 2 || n % 2 != 0)
        throw GeometryError("duality_sector_check: n must be even and at least 2");
    std::int64_t dim = int_pow(2, n);
    if (dim > limits::max_dense_dim)
        throw SizeCapError("duality_sector_check: 2^n exceeds dense cap");
    DualityReport rep;
    rep.sites = n;

    Matrix huncle = assemble(ghz_uncle_term(), n, BoundaryKind::Periodic).dense();

    std::vector<PauliString> terms;
    for (int i = 0; i < n; ++i) {
        int j = (i + 1) % n;
        std::string xx(static_cast<size_t>(n), 'I'), yy(static_cast<size_t>(n), 'I'),
            z(static_cast<size_t>(n), 'I');
        xx[static_cast<size_t>(i)] = 'X';
        xx[static_cast<size_t>(j)] = 'X';
        yy[static_cast<size_t>(i)] = 'Y';
        yy[static_cast<size_t>(j)] = 'Y';
        z[static_cast<size_t>(i)] = 'Z';
        terms.push_back({cd(-0.25, 0), xx});
        terms.push_back({cd(-0.25, 0), yy});
        terms.push_back({cd(-0.5, 0), z});
    }
    terms.push_back({cd(0.5 * n, 0), std::string(static_cast<size_t>(n), 'I')});
    Matrix hxy = pauli_dense(terms);

    // Global-flip +1 sector: one column per complement pair {x, ~x}.
    const std::uint64_t mask = (std::uint64_t{1} << n) - 1;
    auto rotl = [&](std::uint64_t x) {
        return ((x << 1) | (x >> (n - 1))) & mask;
    };
    std::int64_t half = dim / 2;
    Matrix pairs = Matrix::Zero(dim, half);
    Matrix image = Matrix::Zero(dim, half);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    std::int64_t col = 0;
    for (std::uint64_t x = 0; x < static_cast<std::uint64_t>(dim); ++x) {
        std::uint64_t xb = x ^ mask;
        if (x > xb) continue;
        pairs(static_cast<Eigen::Index>(x), col) = inv_sqrt2;
        pairs(static_cast<Eigen::Index>(xb), col) = inv_sqrt2;
        image(static_cast<Eigen::Index>(x ^ rotl(x)), col) = 1.0;
        ++col;
    }
    rep.isometry_defect = operator_norm(image.adjoint() * image -
                                        Matrix::Identity(half, half));

    Matrix m1 = pairs.adjoint() * huncle * pairs;
    Matrix m2 = image.adjoint() * hxy * image;
    rep.intertwine_defect = operator_norm(m1 - m2);

    Eigen::SelfAdjointEigenSolver<Matrix> e1(hermitize(m1), Eigen::EigenvaluesOnly);
    Eigen::SelfAdjointEigenSolver<Matrix> e2(hermitize(m2), Eigen::EigenvaluesOnly);
    Eigen::SelfAdjointEigenSolver<Matrix> f1(hermitize(huncle), Eigen::EigenvaluesOnly);
    Eigen::SelfAdjointEigenSolver<Matrix> f2(hermitize(hxy), Eigen::EigenvaluesOnly);
    if (e1.info() != Eigen::Success || e2.info() != Eigen::Success ||
        f1.info() != Eigen::Success || f2.info() != Eigen::Success)
        throw ConvergenceError("duality_sector_check: eigensolver failed");
    rep.sector_mismatch =
        (e1.eigenvalues() - e2.eigenvalues()).cwiseAbs().maxCoeff();
    rep.full_mismatch = (f1.eigenvalues() - f2.eigenvalues()).cwiseAbs().maxCoeff();
    return rep;
}

GroundSpaceReport injective_uncle_check(const MpsTensor& a, const MpsTensor& r, int n,
                                        double tol) {
    GroundSpaceReport rep;
    rep.sites = n;
    ProjectorTerm term = defect_uncle_term(a, r, 3, tol);
    ChainOperator h = assemble(term, n, BoundaryKind::Periodic);
    Matrix kernel = kernel_basis(h);
    rep.kernel_dim = static_cast<int>(kernel.cols());

    std::vector<Vector> predicted;
    predicted.push_back(mps_state(a, n, Boundary::periodic()));
    double rnorm = 0.0;
    for (int i = 0; i < r.d(); ++i) rnorm += r.mat(i).squaredNorm();
    if (rnorm > 0.0) {
        Vector defect_sum = Vector::Zero(h.dim());
        for (int j = 1; j <= n; ++j) {
            std::vector<const MpsTensor*> layout(static_cast<size_t>(n), &a);
            layout[static_cast<size_t>(j - 1)] = &r;
            defect_sum += state_from_site_tensors(layout, Boundary::periodic());
        }
        predicted.push_back(std::move(defect_sum));
    }
    rep.predicted_dim = static_cast<int>(predicted.size());

    rep.overlap = 1.0;
    for (Vector& v : predicted) {
        double nv = v.norm();
        if (nv < 1e-12)
            throw ConvergenceError("injective_uncle_check: predicted state vanished");
        v /= nv;
        double proj = kernel.cols() > 0 ? (kernel.adjoint() * v).squaredNorm() : 0.0;
        rep.overlap = std::min(rep.overlap, proj);
    }
    return rep;
}

}  // namespace unclelab
