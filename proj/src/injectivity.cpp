#include "unclelab/injectivity.hpp"

#include <Eigen/SVD>

namespace unclelab {

Matrix tensor_matrix(const MpsTensor& t) {
    Matrix m(t.d(), t.rows() * t.cols());
    for (int i = 0; i < t.d(); ++i)
        m.row(i) = vec(t.mat(i)).transpose();
    return m;
}

bool is_injective(const MpsTensor& t, double tol) {
    Eigen::Index need = t.rows() * t.cols();
    if (t.d() < need) return false;
    return numerical_rank(tensor_matrix(t), tol) == need;
}

std::optional<int> injectivity_index(const MpsTensor& t, int k_max, double tol) {
    if (!t.is_square())
        throw DimensionError("injectivity_index: tensor must be square");
    if (k_max <= 0) k_max = static_cast<int>(2 * t.D() * t.D());
    for (int k = 1; k <= k_max; ++k) {
        std::int64_t dk = 1;
        bool capped = false;
        for (int i = 0; i < k; ++i) {
            dk *= t.d();
            if (dk > limits::max_blocked_dim) { capped = true; break; }
        }
        if (capped) break;
        if (is_injective(block_sites(t, k), tol)) return k;
    }
    return std::nullopt;
}

namespace {

// Moore-Penrose solution X of M^T X = I, i.e. X = pinv(M^T).
Matrix contraction_inverse(const Matrix& m, Eigen::Index need, double tol) {
    Eigen::BDCSVD<Matrix> svd(m.transpose(), Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    double smax = sv.size() ? sv(0) : 0.0;
    Eigen::Index rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) > tol * smax) ++rank;
    if (rank < need)
        throw InjectivityError("left inverse requires an injective tensor");
    Matrix inv_s = Matrix::Zero(sv.size(), sv.size());
    for (Eigen::Index i = 0; i < rank; ++i) inv_s(i, i) = 1.0 / sv(i);
    // pinv(M^T) = V S^{-1} U^H applied from the right-hand identity.
    return svd.matrixV() * inv_s * svd.matrixU().adjoint();
}

}  // namespace

MpsTensor left_inverse_tensor(const MpsTensor& t, double tol) {
    Eigen::Index need = t.rows() * t.cols();
    if (t.d() < need)
        throw InjectivityError("left inverse requires d >= rows*cols");
    // pinv(M^T) is the least-norm d x (rows*cols) solution of M^T X = I.
    Matrix x = contraction_inverse(tensor_matrix(t), need, tol);
    std::vector<Matrix> mats;
    mats.reserve(static_cast<size_t>(t.d()));
    for (int i = 0; i < t.d(); ++i)
        mats.push_back(unvec(x.row(i).transpose(), t.rows(), t.cols()));
    return MpsTensor(std::move(mats));
}

BlockInverses block_left_inverse(const MpsTensor& a, const MpsTensor& r,
                                 const MpsTensor& l, const MpsTensor& b,
                                 double tol) {
    MpsTensor arranged = arrange_blocks(a, r, l, b);
    MpsTensor inv = left_inverse_tensor(arranged, tol);
    Eigen::Index la = a.rows(), mb = b.rows();
    std::vector<Matrix> ia, ir, il, ib;
    for (int i = 0; i < inv.d(); ++i) {
        ia.push_back(inv.mat(i).topLeftCorner(la, la));
        ir.push_back(inv.mat(i).topRightCorner(la, mb));
        il.push_back(inv.mat(i).bottomLeftCorner(mb, la));
        ib.push_back(inv.mat(i).bottomRightCorner(mb, mb));
    }
    return BlockInverses{MpsTensor(std::move(ia)), MpsTensor(std::move(ir)),
                         MpsTensor(std::move(il)), MpsTensor(std::move(ib))};
}

}  // namespace unclelab
