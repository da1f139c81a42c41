#pragma once

#include <cstdint>
#include <vector>

#include "unclelab/span.hpp"

namespace unclelab {

// Perturbation of a two-block tensor: diagonal parts pa (on block a) and pb
// (on block b), off-diagonal walls r (a-side rows) and l (b-side rows).
struct Perturbation {
    MpsTensor pa;
    MpsTensor pb;
    MpsTensor r;
    MpsTensor l;
};

void validate_perturbation(const BlockMps& c, const Perturbation& p);

// The arranged tensor (a+pa r; l b+pb) at unit strength; injectivity of the
// arrangement (a r; l b) decides whether the perturbed tensor is injective
// for small nonzero strengths.
MpsTensor arranged_perturbation(const BlockMps& c, const Perturbation& p);

bool is_injective_perturbation(const BlockMps& c, const Perturbation& p,
                               double tol = limits::rank_rel_tol);

// Limit tensor of the rescaled perturbed blocking. For two sites the blocks
// are [aa, ar+rb; bl+la, bb]; three sites chain the walls through all
// positions. Physical dimension d^sites, bond dimension l+m.
struct UncleTensor {
    MpsTensor tensor;
    int sites = 2;
    int base_dim = 2;      // physical dimension of one site
    Eigen::Index dim_a = 0;
    Eigen::Index dim_b = 0;
};

UncleTensor uncle_tensor(const BlockMps& c, const Perturbation& p, int sites);

// Projector onto span{U}^perp. The limit is certified by injectivity of the
// two-site uncle tensor; use limit_convergence_probe for per-instance evidence.
ProjectorTerm uncle_local_term(const BlockMps& c, const Perturbation& p, int sites,
                               double tol = limits::rank_rel_tol);

ProjectorTerm parent_local_term(const BlockMps& c, int sites,
                                double tol = limits::rank_rel_tol);
ProjectorTerm parent_local_term(const MpsTensor& t, int sites,
                                double tol = limits::rank_rel_tol);

struct ProbeRow {
    double eps;
    double distance;  // operator norm between perturbed parent and uncle term
};

// Distances || Pi[(C+eps P)^(blocked sites)] - Pi[U] || for each strength.
std::vector<ProbeRow> limit_convergence_probe(const BlockMps& c, const Perturbation& p,
                                              int sites, const std::vector<double>& eps_list,
                                              double tol = limits::rank_rel_tol);

// Seeded draw, retried until the route-appropriate certificate holds: the
// arranged tensor injective when d allows it, otherwise an injective two-site
// uncle tensor with wall sums bounded away from zero for scalar blocks.
Perturbation random_injective_perturbation(const BlockMps& c, std::uint64_t seed);

}  // namespace unclelab
