#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "oracles.hpp"
#include "unclelab/chain.hpp"
#include "unclelab/models.hpp"
#include "unclelab/spectra.hpp"

using namespace unclelab;

TEST_CASE("assembled ring matches the entrywise oracle") {
    ProjectorTerm parent = ghz_parent_term();
    for (int n : {3, 4, 5}) {
        ChainOperator h = assemble(parent, n, BoundaryKind::Periodic);
        Matrix ref = oracle::chain_dense(parent.matrix, 2, 2, n, true);
        CHECK((h.dense() - ref).norm() < 1e-12);
    }
    ProjectorTerm uncle = ghz_uncle_term();
    ChainOperator h3 = assemble(uncle, 5, BoundaryKind::Periodic);
    Matrix ref3 = oracle::chain_dense(uncle.matrix, 3, 2, 5, true);
    CHECK((h3.dense() - ref3).norm() < 1e-12);
}

TEST_CASE("open chains drop the wrapping windows") {
    ProjectorTerm uncle = ghz_uncle_term();
    ChainOperator h = assemble(uncle, 6, BoundaryKind::Open);
    CHECK(h.position_count() == 4);
    Matrix ref = oracle::chain_dense(uncle.matrix, 3, 2, 6, false);
    CHECK((h.dense() - ref).norm() < 1e-12);
    ChainOperator ring = assemble(uncle, 6, BoundaryKind::Periodic);
    CHECK(ring.position_count() == 6);
}

TEST_CASE("position windows cover each start site once") {
    ProjectorTerm uncle = ghz_uncle_term();
    ChainOperator ring = assemble(uncle, 5, BoundaryKind::Periodic);
    std::vector<int> starts;
    for (int p = 0; p < ring.position_count(); ++p) {
        std::vector<int> sites = ring.position_sites(p);
        REQUIRE(sites.size() == 3);
        // Consecutive mod n in window order.
        CHECK(sites[1] == sites[0] % 5 + 1);
        CHECK(sites[2] == sites[1] % 5 + 1);
        starts.push_back(sites[0]);
    }
    std::sort(starts.begin(), starts.end());
    for (int p = 0; p < 5; ++p) CHECK(starts[static_cast<size_t>(p)] == p + 1);
}

TEST_CASE("apply agrees with the dense matrix") {
    ProjectorTerm uncle = ghz_uncle_term();
    ChainOperator h = assemble(uncle, 6, BoundaryKind::Periodic);
    Rng rng(81);
    Vector v(h.dim());
    for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = rng.complex_gaussian();
    CHECK((h.apply(v) - h.dense() * v).norm() < 1e-10);

    SparseState s;
    for (Eigen::Index i = 0; i < v.size(); i += 7) s[static_cast<std::uint64_t>(i)] = v(i);
    SparseState hs = h.apply_sparse(s);
    Vector dense_in = sparse_to_dense(s, h.dim());
    CHECK((sparse_to_dense(hs, h.dim()) - h.dense() * dense_in).norm() < 1e-10);
}

TEST_CASE("expectation is normalized") {
    ProjectorTerm uncle = ghz_uncle_term();
    ChainOperator h = assemble(uncle, 5, BoundaryKind::Periodic);
    Rng rng(83);
    Vector v(h.dim());
    for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = rng.complex_gaussian();
    double want = ((v.adjoint() * (h.dense() * v)).value().real() / v.squaredNorm());
    CHECK(h.expectation(v) == doctest::Approx(want).epsilon(1e-10));
    CHECK(h.expectation(2.5 * v) == doctest::Approx(want).epsilon(1e-10));

    SparseState s;
    for (Eigen::Index i = 0; i < v.size(); ++i) s[static_cast<std::uint64_t>(i)] = v(i);
    CHECK(h.expectation_sparse(s) == doctest::Approx(want).epsilon(1e-10));
}

TEST_CASE("sparse helpers") {
    SparseState a{{0, cd(1, 0)}, {3, cd(0, 2)}};
    CHECK(sparse_norm2(a) == doctest::Approx(5.0).epsilon(1e-15));
    SparseState b{{3, cd(1, 0)}};
    // <a|b> conjugates the first argument.
    CHECK(std::abs(sparse_dot(a, b) - cd(0, -2)) < 1e-15);
}

TEST_CASE("rotate_state shifts site labels cyclically") {
    // |i1 i2 i3> -> |i2 i3 i1> on 3 qubits: basis index 4 = |100> -> |001> = 1.
    Vector v = Vector::Zero(8);
    v(4) = 1.0;
    Vector w = rotate_state(v, 3, 2);
    CHECK(std::abs(w(1) - cd(1, 0)) < 1e-15);
    // Rotating three times is the identity.
    Vector x = rotate_state(rotate_state(w, 3, 2), 3, 2);
    CHECK((x - v).norm() < 1e-15);
}

TEST_CASE("size caps trip on oversized requests") {
    ProjectorTerm parent = ghz_parent_term();
    ChainOperator big = assemble(parent, 23, BoundaryKind::Periodic);
    CHECK(big.dim() == (std::int64_t{1} << 23));
    Vector v;
    CHECK_THROWS_AS((void)big.apply(v), SizeCapError);
    ChainOperator mid = assemble(parent, 13, BoundaryKind::Periodic);
    CHECK_THROWS_AS((void)mid.dense(), SizeCapError);
    // Sparse application still works out there.
    SparseState s{{0, cd(1, 0)}};
    SparseState hs = big.apply_sparse(s);
    CHECK(sparse_norm2(hs) == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("the diagonal ring spectrum is the wall count enumeration") {
    ProjectorTerm parent = ghz_parent_term();
    ChainOperator h = assemble(parent, 6, BoundaryKind::Periodic);
    RealVector diag = diagonal_spectrum(h);
    // Walls on a ring come in pairs: {0, 2, 4, 6}.
    REQUIRE(diag.size() == 4);
    for (int i = 0; i < 4; ++i) CHECK(diag(i) == doctest::Approx(2.0 * i).epsilon(1e-12));

    // Cross-check against the dense eigenvalues.
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(h.dense()));
    std::vector<double> uniq;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        double v = es.eigenvalues()(i);
        if (uniq.empty() || v - uniq.back() > 1e-9) uniq.push_back(v);
    }
    REQUIRE(static_cast<Eigen::Index>(uniq.size()) == diag.size());
    for (size_t i = 0; i < uniq.size(); ++i)
        CHECK(diag(static_cast<Eigen::Index>(i)) == doctest::Approx(uniq[i]).epsilon(1e-9));
}
