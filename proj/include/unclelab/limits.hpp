#pragma once

#include <cstdint>

namespace unclelab::limits {

// Largest physical dimension d^k a blocked tensor may carry.
inline constexpr std::int64_t max_blocked_dim = 1 << 16;

// Largest Hilbert-space dimension for dense matrices / full diagonalization.
inline constexpr std::int64_t max_dense_dim = 4096;

// Largest Hilbert-space dimension for explicit state vectors and matvec work.
inline constexpr std::int64_t max_state_dim = 1 << 22;

// Default relative singular-value cutoff for numerical ranks.
inline constexpr double rank_rel_tol = 1e-10;

// Absolute eigenvalue threshold below which a chain eigenvector counts as kernel.
inline constexpr double kernel_tol = 1e-8;

// Cosine threshold for principal-angle subspace membership.
inline constexpr double cos_threshold = 1.0 - 1e-9;

}  // namespace unclelab::limits
