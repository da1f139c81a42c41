#pragma once

#include <vector>

#include "unclelab/linalg.hpp"

namespace unclelab {

// A site tensor: one matrix per physical index. Square (rows == cols) for
// genuine MPS site tensors; rectangular families appear as domain-wall
// insertions between blocks of different bond dimension.
class MpsTensor {
public:
    MpsTensor() = default;
    explicit MpsTensor(std::vector<Matrix> mats);

    int d() const { return static_cast<int>(mats_.size()); }
    Eigen::Index rows() const { return rows_; }
    Eigen::Index cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }
    // Bond dimension; only meaningful for square tensors.
    Eigen::Index D() const;

    const Matrix& mat(int i) const { return mats_[static_cast<size_t>(i)]; }
    Matrix& mat(int i) { return mats_[static_cast<size_t>(i)]; }
    const std::vector<Matrix>& mats() const { return mats_; }

    MpsTensor scaled(cd factor) const;
    // Gauge action g * A_i * g_inv per physical index.
    MpsTensor gauged(const Matrix& g, const Matrix& g_inv) const;

    friend MpsTensor operator+(const MpsTensor& a, const MpsTensor& b);

private:
    std::vector<Matrix> mats_;
    Eigen::Index rows_ = 0;
    Eigen::Index cols_ = 0;
};

MpsTensor zero_tensor(int d, Eigen::Index rows, Eigen::Index cols);

// Blocked tensor on k sites: matrices A_{i1} ... A_{ik}, physical index
// i1*d^(k-1) + ... + ik (site 1 owns the most significant digit).
MpsTensor block_sites(const MpsTensor& t, int k);

// Two or more square blocks sharing a physical dimension; represents a
// block-diagonal site tensor. Every block multiplicity is one.
class BlockMps {
public:
    BlockMps() = default;
    explicit BlockMps(std::vector<MpsTensor> blocks);

    int d() const { return blocks_.empty() ? 0 : blocks_[0].d(); }
    int block_count() const { return static_cast<int>(blocks_.size()); }
    const MpsTensor& block(int j) const { return blocks_[static_cast<size_t>(j)]; }
    const std::vector<MpsTensor>& blocks() const { return blocks_; }
    Eigen::Index offset(int j) const { return offsets_[static_cast<size_t>(j)]; }
    Eigen::Index total_dim() const { return total_; }

    // Direct-sum site tensor with blocks on the diagonal.
    MpsTensor full_tensor() const;

private:
    std::vector<MpsTensor> blocks_;
    std::vector<Eigen::Index> offsets_;
    Eigen::Index total_ = 0;
};

// Square 2x2 block arrangement (a r; l b); dimensions must be compatible.
MpsTensor arrange_blocks(const MpsTensor& a, const MpsTensor& r,
                         const MpsTensor& l, const MpsTensor& b);

// Horizontal arrangement (a r): d matrices of size rows(a) x (cols(a)+cols(r)).
MpsTensor arrange_row(const MpsTensor& a, const MpsTensor& r);

}  // namespace unclelab
