#pragma once

#include <optional>
#include <vector>

#include "unclelab/mps_tensor.hpp"

namespace unclelab {

// Orthonormal basis of span{ sum_i tr[T_i X] |i> : X } inside C^{d}.
struct SpanBasis {
    Matrix vectors;       // d^n x r, orthonormal columns
    int phys_dim = 0;     // ambient physical dimension (d^n)
    int sites = 1;        // number of sites the tensor represents
    Eigen::Index bond_rows = 0;
    Eigen::Index bond_cols = 0;
    int dim() const { return static_cast<int>(vectors.cols()); }
};

SpanBasis span_basis(const MpsTensor& t, double tol = limits::rank_rel_tol,
                     int sites = 1);

// Hermitian idempotent local term acting on `support` sites of dimension
// local_dim each; matrix size local_dim^support.
struct ProjectorTerm {
    Matrix matrix;
    int support = 1;
    int local_dim = 2;
};

// Projector onto the orthogonal complement of span{t}; support tells how many
// sites the (possibly blocked) tensor represents, the local dimension is
// recovered as the support-th root of t.d().
ProjectorTerm projector_complement(const MpsTensor& t, int support = 1,
                                   double tol = limits::rank_rel_tol);

struct Boundary {
    enum Kind { Periodic, Open } kind = Periodic;
    Matrix x;  // boundary insertion for open chains

    static Boundary periodic() { return Boundary{Periodic, Matrix()}; }
    static Boundary open(Matrix m) { return Boundary{Open, std::move(m)}; }
};

// Amplitudes tr[T^{(1)}_{i1} ... T^{(n)}_{in} X] over all physical indices;
// site 1 owns the most significant base-d digit.
Vector state_from_site_tensors(const std::vector<const MpsTensor*>& site_tensors,
                               const Boundary& boundary);

Vector mps_state(const MpsTensor& t, int n, const Boundary& boundary);
Vector mps_state(const BlockMps& c, int n, const Boundary& boundary);

// The four domain-wall families on n sites: pure-a, pure-b, single r wall
// (a-padding left, b-padding right), single l wall, plus their joint span.
struct DomainWallSpan {
    Matrix basis_a;
    Matrix basis_b;
    Matrix basis_r;
    Matrix basis_l;
    Matrix joint;  // orthonormal basis of S_n
    int predicted_dim = 0;  // l^2 + m^2 + 2 l m
};

DomainWallSpan domain_wall_span(const MpsTensor& a, const MpsTensor& b,
                                const MpsTensor& r, const MpsTensor& l, int n,
                                double tol = limits::rank_rel_tol);

}  // namespace unclelab
