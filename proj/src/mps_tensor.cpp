#include "unclelab/mps_tensor.hpp"

#include <cmath>
#include <string>

namespace unclelab {

MpsTensor::MpsTensor(std::vector<Matrix> mats) : mats_(std::move(mats)) {
    if (mats_.empty()) throw DimensionError("MpsTensor: needs at least one matrix");
    rows_ = mats_[0].rows();
    cols_ = mats_[0].cols();
    if (rows_ < 1 || cols_ < 1)
        throw DimensionError("MpsTensor: matrices must be non-empty");
    for (const auto& m : mats_) {
        if (m.rows() != rows_ || m.cols() != cols_)
            throw DimensionError("MpsTensor: inconsistent matrix shapes");
        if (!m.allFinite())
            throw DimensionError("MpsTensor: non-finite entry");
    }
}

Eigen::Index MpsTensor::D() const {
    if (!is_square())
        throw DimensionError("MpsTensor: bond dimension undefined for rectangular tensor");
    return rows_;
}

MpsTensor MpsTensor::scaled(cd factor) const {
    std::vector<Matrix> out;
    out.reserve(mats_.size());
    for (const auto& m : mats_) out.push_back(factor * m);
    return MpsTensor(std::move(out));
}

MpsTensor MpsTensor::gauged(const Matrix& g, const Matrix& g_inv) const {
    std::vector<Matrix> out;
    out.reserve(mats_.size());
    for (const auto& m : mats_) out.push_back(g * m * g_inv);
    return MpsTensor(std::move(out));
}

MpsTensor operator+(const MpsTensor& a, const MpsTensor& b) {
    if (a.d() != b.d() || a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionError("MpsTensor: shape mismatch in sum");
    std::vector<Matrix> out;
    out.reserve(a.mats().size());
    for (int i = 0; i < a.d(); ++i) out.push_back(a.mat(i) + b.mat(i));
    return MpsTensor(std::move(out));
}

MpsTensor zero_tensor(int d, Eigen::Index rows, Eigen::Index cols) {
    std::vector<Matrix> mats(static_cast<size_t>(d), Matrix::Zero(rows, cols));
    return MpsTensor(std::move(mats));
}

MpsTensor block_sites(const MpsTensor& t, int k) {
    if (k < 1) throw DimensionError("block_sites: k must be >= 1");
    if (!t.is_square()) throw DimensionError("block_sites: tensor must be square");
    std::int64_t dk = 1;
    for (int i = 0; i < k; ++i) {
        dk *= t.d();
        if (dk > limits::max_blocked_dim)
            throw SizeCapError("block_sites: d^k exceeds blocked-dimension cap");
    }
    std::vector<Matrix> mats;
    mats.reserve(static_cast<size_t>(dk));
    // Lexicographic order makes block(block(t, j), k) == block(t, j*k).
    std::vector<int> digits(static_cast<size_t>(k), 0);
    for (std::int64_t idx = 0; idx < dk; ++idx) {
        std::int64_t rem = idx;
        for (int s = k - 1; s >= 0; --s) {
            digits[static_cast<size_t>(s)] = static_cast<int>(rem % t.d());
            rem /= t.d();
        }
        Matrix prod = t.mat(digits[0]);
        for (int s = 1; s < k; ++s) prod = prod * t.mat(digits[static_cast<size_t>(s)]);
        mats.push_back(std::move(prod));
    }
    return MpsTensor(std::move(mats));
}

BlockMps::BlockMps(std::vector<MpsTensor> blocks) : blocks_(std::move(blocks)) {
    if (blocks_.empty()) throw DimensionError("BlockMps: needs at least one block");
    int d = blocks_[0].d();
    offsets_.reserve(blocks_.size());
    for (const auto& b : blocks_) {
        if (b.d() != d) throw DimensionError("BlockMps: blocks disagree on physical dim");
        if (!b.is_square()) throw DimensionError("BlockMps: blocks must be square");
        offsets_.push_back(total_);
        total_ += b.D();
    }
}

MpsTensor BlockMps::full_tensor() const {
    std::vector<Matrix> mats;
    mats.reserve(static_cast<size_t>(d()));
    for (int i = 0; i < d(); ++i) {
        Matrix m = Matrix::Zero(total_, total_);
        for (int j = 0; j < block_count(); ++j) {
            Eigen::Index off = offsets_[static_cast<size_t>(j)];
            Eigen::Index dim = blocks_[static_cast<size_t>(j)].D();
            m.block(off, off, dim, dim) = blocks_[static_cast<size_t>(j)].mat(i);
        }
        mats.push_back(std::move(m));
    }
    return MpsTensor(std::move(mats));
}

MpsTensor arrange_blocks(const MpsTensor& a, const MpsTensor& r,
                         const MpsTensor& l, const MpsTensor& b) {
    int d = a.d();
    if (r.d() != d || l.d() != d || b.d() != d)
        throw DimensionError("arrange_blocks: physical dimension mismatch");
    Eigen::Index la = a.rows(), mb = b.rows();
    if (!a.is_square() || !b.is_square() || r.rows() != la || r.cols() != mb ||
        l.rows() != mb || l.cols() != la)
        throw DimensionError("arrange_blocks: incompatible block shapes");
    std::vector<Matrix> mats;
    mats.reserve(static_cast<size_t>(d));
    for (int i = 0; i < d; ++i) {
        Matrix m(la + mb, la + mb);
        m.topLeftCorner(la, la) = a.mat(i);
        m.topRightCorner(la, mb) = r.mat(i);
        m.bottomLeftCorner(mb, la) = l.mat(i);
        m.bottomRightCorner(mb, mb) = b.mat(i);
        mats.push_back(std::move(m));
    }
    return MpsTensor(std::move(mats));
}

MpsTensor arrange_row(const MpsTensor& a, const MpsTensor& r) {
    int d = a.d();
    if (r.d() != d) throw DimensionError("arrange_row: physical dimension mismatch");
    if (a.rows() != r.rows()) throw DimensionError("arrange_row: row mismatch");
    std::vector<Matrix> mats;
    mats.reserve(static_cast<size_t>(d));
    for (int i = 0; i < d; ++i) {
        Matrix m(a.rows(), a.cols() + r.cols());
        m.leftCols(a.cols()) = a.mat(i);
        m.rightCols(r.cols()) = r.mat(i);
        mats.push_back(std::move(m));
    }
    return MpsTensor(std::move(mats));
}

}  // namespace unclelab
