#pragma once

#include <optional>

#include "unclelab/mps_tensor.hpp"

namespace unclelab {

// d x (rows*cols) matrix whose row i is vec(T_i)^T; its rank decides
// injectivity and its pseudoinverse yields left-inverse tensors.
Matrix tensor_matrix(const MpsTensor& t);

// The T_i span the full rows x cols matrix space.
bool is_injective(const MpsTensor& t, double tol = limits::rank_rel_tol);

// Smallest k <= k_max with block_sites(t, k) injective; k_max defaults to 2*D^2.
std::optional<int> injectivity_index(const MpsTensor& t, int k_max = 0,
                                     double tol = limits::rank_rel_tol);

// Tensor T^{-1} with sum_i (T_i)_{ab} (T^{-1}_i)_{a'b'} = delta_{aa'} delta_{bb'}.
MpsTensor left_inverse_tensor(const MpsTensor& t, double tol = limits::rank_rel_tol);

struct BlockInverses {
    MpsTensor inv_a;
    MpsTensor inv_r;
    MpsTensor inv_l;
    MpsTensor inv_b;
};

// Left inverses of each block of an injective (a r; l b) arrangement. Each
// piece annihilates the other three blocks, all sixteen contraction
// identities following from the pseudoinverse of the arranged tensor.
BlockInverses block_left_inverse(const MpsTensor& a, const MpsTensor& r,
                                 const MpsTensor& l, const MpsTensor& b,
                                 double tol = limits::rank_rel_tol);

}  // namespace unclelab
