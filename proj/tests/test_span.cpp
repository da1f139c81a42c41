#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "oracles.hpp"
#include "unclelab/models.hpp"
#include "unclelab/span.hpp"

using namespace unclelab;

namespace {

Vector basis_state(std::int64_t dim, std::int64_t idx) {
    Vector v = Vector::Zero(dim);
    v(idx) = 1.0;
    return v;
}

double distance_to_span(const Matrix& q, const Vector& v) {
    Vector w = v / v.norm();
    return (w - q * (q.adjoint() * w)).norm();
}

}  // namespace

TEST_CASE("span of the blocked two-level tensor") {
    MpsTensor g = block_sites(ghz_tensor().full_tensor(), 2);
    SpanBasis span2 = span_basis(g, limits::rank_rel_tol, 2);
    REQUIRE(span2.dim() == 2);
    CHECK(span2.phys_dim == 4);
    CHECK((span2.vectors.adjoint() * span2.vectors - Matrix::Identity(2, 2)).norm() < 1e-12);
    // |00> and |11> span it.
    CHECK(distance_to_span(span2.vectors, basis_state(4, 0)) < 1e-12);
    CHECK(distance_to_span(span2.vectors, basis_state(4, 3)) < 1e-12);
}

TEST_CASE("projector_complement annihilates the span") {
    MpsTensor two = block_sites(oracle::random_canonical(3, 2, 51), 2);
    SpanBasis span2 = span_basis(two, limits::rank_rel_tol, 2);
    REQUIRE(span2.dim() == 4);  // injective: full bond square reached
    ProjectorTerm term = projector_complement(two, 2);
    REQUIRE(term.support == 2);
    REQUIRE(term.local_dim == 3);
    const Matrix& p = term.matrix;
    CHECK((p - p.adjoint()).norm() < 1e-12);
    CHECK((p * p - p).norm() < 1e-12);
    CHECK(p.trace().real() == doctest::Approx(9.0 - 4.0).epsilon(1e-12));
    CHECK((p * span2.vectors).norm() < 1e-10);
}

TEST_CASE("mps_state matches direct contraction") {
    MpsTensor t = oracle::random_canonical(4, 2, 53);
    std::vector<const MpsTensor*> sites(3, &t);
    Vector lib = mps_state(t, 3, Boundary::periodic());
    Vector ref = oracle::state_dense(sites, Matrix());
    CHECK((lib - ref).norm() < 1e-12);

    Rng rng(59);
    Matrix x = random_matrix(rng, 2, 2);
    Vector lib_open = mps_state(t, 3, Boundary::open(x));
    Vector ref_open = oracle::state_dense(sites, x);
    CHECK((lib_open - ref_open).norm() < 1e-12);
}

TEST_CASE("ring state of the two-block tensor") {
    BlockMps c = ghz_tensor();
    Vector v = mps_state(c, 4, Boundary::periodic());
    Vector want = basis_state(16, 0) + basis_state(16, 15);
    CHECK((v - want).norm() < 1e-12);
}

TEST_CASE("mixed site tensors") {
    MpsTensor a = oracle::random_canonical(2, 1, 61);
    Rng rng(67);
    MpsTensor r({random_matrix(rng, 1, 1), random_matrix(rng, 1, 1)});
    std::vector<const MpsTensor*> sites{&a, &r, &a};
    Vector lib = state_from_site_tensors(sites, Boundary::periodic());
    Vector ref = oracle::state_dense(sites, Matrix());
    CHECK((lib - ref).norm() < 1e-12);
}

TEST_CASE("domain wall families for scalar blocks") {
    BlockMps c = ghz_tensor();
    Rng rng(71);
    MpsTensor r({random_matrix(rng, 1, 1), random_matrix(rng, 1, 1)});
    MpsTensor l({random_matrix(rng, 1, 1), random_matrix(rng, 1, 1)});
    int n = 4;
    DomainWallSpan dw = domain_wall_span(c.block(0), c.block(1), r, l, n, limits::rank_rel_tol);
    CHECK(dw.predicted_dim == 4);
    REQUIRE(dw.joint.cols() == 4);
    CHECK((dw.joint.adjoint() * dw.joint - Matrix::Identity(4, 4)).norm() < 1e-10);
    CHECK(distance_to_span(dw.joint, basis_state(16, 0)) < 1e-10);
    CHECK(distance_to_span(dw.joint, basis_state(16, 15)) < 1e-10);

    // The r family is the telescoped wall sum: r0|0..0> + r1|1..1> +
    // (r0+r1) * sum of falling-wall strings.
    cd r0 = r.mat(0)(0, 0), r1 = r.mat(1)(0, 0);
    Vector wall = Vector::Zero(16);
    wall(0) += r0;
    wall(15) += r1;
    for (int a_len = 1; a_len < n; ++a_len) {
        std::int64_t idx = (std::int64_t{1} << (n - a_len)) - 1;  // 0^a 1^(n-a)
        wall(idx) += r0 + r1;
    }
    CHECK(distance_to_span(dw.joint, wall) < 1e-10);
    CHECK(distance_to_span(dw.basis_r, wall) < 1e-10);
}
