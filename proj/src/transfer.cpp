#include "unclelab/transfer.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

#include "unclelab/injectivity.hpp"

namespace unclelab {

Matrix TransferOperator::apply(const Matrix& x) const {
    if (x.size() != matrix.cols())
        throw DimensionError("TransferOperator::apply: argument size mismatch");
    Vector out = matrix * vec(x);
    return unvec(out, dim_a, dim_b);
}

TransferOperator transfer_operator(const MpsTensor& a, const MpsTensor& b) {
    if (a.d() != b.d())
        throw DimensionError("transfer_operator: physical dimension mismatch");
    TransferOperator e;
    e.dim_a = a.rows();
    e.dim_b = b.rows();
    Matrix m = Matrix::Zero(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.d(); ++i) m += kron(b.mat(i).conjugate(), a.mat(i));
    e.matrix = std::move(m);
    return e;
}

double spectral_radius(const TransferOperator& e) {
    if (e.matrix.rows() != e.matrix.cols())
        throw DimensionError("spectral_radius: transfer operator not square");
    Eigen::ComplexEigenSolver<Matrix> ces(e.matrix, false);
    double rho = 0.0;
    for (Eigen::Index i = 0; i < ces.eigenvalues().size(); ++i)
        rho = std::max(rho, std::abs(ces.eigenvalues()(i)));
    return rho;
}

namespace {

struct LeadingPair {
    cd value;
    Vector right;
    Vector left;
};

// Leading eigenvalue with right and left eigenvectors; throws when the
// modulus-largest eigenvalue is not unique within tol.
LeadingPair leading_eigen(const Matrix& e, double tol) {
    Eigen::ComplexEigenSolver<Matrix> ces(e, true);
    const auto& vals = ces.eigenvalues();
    Eigen::Index best = 0;
    for (Eigen::Index i = 1; i < vals.size(); ++i)
        if (std::abs(vals(i)) > std::abs(vals(best))) best = i;
    double top = std::abs(vals(best));
    for (Eigen::Index i = 0; i < vals.size(); ++i) {
        if (i == best) continue;
        if (std::abs(vals(i)) > top * (1.0 - tol))
            throw NotStandardFormError("degenerate leading transfer eigenvalue");
    }
    LeadingPair out;
    out.value = vals(best);
    out.right = ces.eigenvectors().col(best);
    Eigen::ComplexEigenSolver<Matrix> adj(e.adjoint(), true);
    const auto& avals = adj.eigenvalues();
    Eigen::Index abest = 0;
    for (Eigen::Index i = 1; i < avals.size(); ++i)
        if (std::abs(avals(i)) > std::abs(avals(abest))) abest = i;
    out.left = adj.eigenvectors().col(abest);
    return out;
}

// Hermitian, phase-fixed, trace-one matrix from an eigenvector of a CP map.
Matrix normalize_fixed_point(const Vector& v, Eigen::Index dim, double tol,
                             const char* what) {
    Matrix m = unvec(v, dim, dim);
    cd tr = m.trace();
    if (std::abs(tr) < 1e-12 * m.norm())
        throw NotStandardFormError(std::string(what) + ": traceless fixed point");
    m *= std::conj(tr) / std::abs(tr);
    m = hermitize(m);
    m /= m.trace().real();
    Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
    double min_eig = es.eigenvalues().minCoeff();
    if (min_eig < -tol)
        throw NotStandardFormError(std::string(what) + ": fixed point not PSD");
    return m;
}

}  // namespace

CanonicalData fixed_points(const MpsTensor& t, double tol) {
    if (!t.is_square()) throw DimensionError("fixed_points: tensor must be square");
    if (!injectivity_index(t).has_value())
        throw InjectivityError("fixed_points: tensor is not injective at any blocking");
    TransferOperator e = transfer_operator(t, t);
    LeadingPair lead = leading_eigen(e.matrix, tol);
    CanonicalData data;
    data.leading_eigenvalue = lead.value;
    data.lambda = normalize_fixed_point(lead.left, t.D(), tol, "fixed_points");
    data.trace_lambda = data.lambda.trace().real();
    return data;
}

CanonicalizeResult canonicalize(const MpsTensor& t, double tol) {
    if (!t.is_square()) throw DimensionError("canonicalize: tensor must be square");
    if (!injectivity_index(t).has_value())
        throw InjectivityError("canonicalize: tensor is not injective at any blocking");
    Eigen::Index dim = t.D();
    TransferOperator e = transfer_operator(t, t);
    LeadingPair lead = leading_eigen(e.matrix, tol);
    double mod = std::abs(lead.value);
    if (mod < 1e-300)
        throw NotStandardFormError("canonicalize: zero spectral radius");
    // The transfer map is completely positive, so its spectral radius is an
    // eigenvalue with non-negative imaginary defect only from rounding.
    if (std::abs(lead.value.imag()) > 1e-8 * mod || lead.value.real() < 0)
        throw NotStandardFormError("canonicalize: leading eigenvalue not positive");
    cd scale = 1.0 / std::sqrt(lead.value.real());
    MpsTensor t1 = t.scaled(scale);

    Matrix rho = normalize_fixed_point(lead.right, dim, tol, "canonicalize");
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho);
    double min_eig = es.eigenvalues().minCoeff();
    if (min_eig <= tol * es.eigenvalues().maxCoeff())
        throw NotStandardFormError("canonicalize: right fixed point not full rank");
    Matrix sqrt_rho = es.operatorSqrt();
    Matrix sqrt_rho_inv = es.operatorInverseSqrt();

    GaugeRecord rec;
    rec.gauge = sqrt_rho_inv;
    rec.gauge_inv = sqrt_rho;
    rec.scale = scale;

    CanonicalizeResult out;
    out.tensor = t1.gauged(rec.gauge, rec.gauge_inv);
    out.record = rec;
    out.data = fixed_points(out.tensor, tol);
    return out;
}

bool is_standard_form(const MpsTensor& t, double tol) {
    if (!t.is_square()) return false;
    TransferOperator e = transfer_operator(t, t);
    Matrix id = Matrix::Identity(t.D(), t.D());
    if ((e.apply(id) - id).norm() > tol * std::sqrt(static_cast<double>(t.D())))
        return false;
    // A unital completely positive map has spectral radius one and a
    // trace-one PSD fixed point of its adjoint; the radius check below
    // only guards the numerics. Block-diagonal tensors pass with a
    // degenerate leading eigenvalue, as they should.
    return std::abs(spectral_radius(e) - 1.0) <= tol;
}

}  // namespace unclelab
