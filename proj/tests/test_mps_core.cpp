#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "oracles.hpp"
#include "unclelab/injectivity.hpp"
#include "unclelab/linalg.hpp"
#include "unclelab/models.hpp"
#include "unclelab/mps_tensor.hpp"
#include "unclelab/rng.hpp"
#include "unclelab/transfer.hpp"

using namespace unclelab;

TEST_CASE("kron matches entry formula") {
    Rng rng(5);
    Matrix a = random_matrix(rng, 2, 3), b = random_matrix(rng, 3, 2);
    Matrix k = kron(a, b);
    REQUIRE(k.rows() == 6);
    REQUIRE(k.cols() == 6);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 3; ++j)
            for (int p = 0; p < 3; ++p)
                for (int q = 0; q < 2; ++q)
                    CHECK(std::abs(k(3 * i + p, 2 * j + q) - a(i, j) * b(p, q)) < 1e-15);
}

TEST_CASE("vec and unvec are column-major inverses") {
    Rng rng(7);
    Matrix m = random_matrix(rng, 3, 2);
    Vector v = vec(m);
    CHECK(v(0) == m(0, 0));
    CHECK(v(1) == m(1, 0));
    CHECK(v(3) == m(0, 1));
    CHECK((unvec(v, 3, 2) - m).norm() == 0.0);
}

TEST_CASE("int_pow") {
    CHECK(int_pow(2, 10) == 1024);
    CHECK(int_pow(3, 0) == 1);
    CHECK(int_pow(5, 3) == 125);
}

TEST_CASE("operator_norm is the largest singular value") {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 0) = 3.0;
    m(1, 1) = -5.0;
    CHECK(operator_norm(m) == doctest::Approx(5.0).epsilon(1e-12));
}

TEST_CASE("orthonormal_columns preserves the span") {
    Rng rng(11);
    Matrix g = random_matrix(rng, 6, 3);
    Matrix q = orthonormal_columns(g, 1e-10);
    REQUIRE(q.cols() == 3);
    CHECK((q.adjoint() * q - Matrix::Identity(3, 3)).norm() < 1e-12);
    // Same projector, same span.
    Matrix pg = g * (g.adjoint() * g).inverse() * g.adjoint();
    CHECK((q * q.adjoint() - pg).norm() < 1e-9);
}

TEST_CASE("numerical_rank agrees with pivoted QR") {
    Rng rng(13);
    Matrix a = random_matrix(rng, 6, 2), b = random_matrix(rng, 2, 5);
    Matrix low = a * b;
    CHECK(numerical_rank(low, 1e-10) == 2);
    CHECK(numerical_rank(low, 1e-10) == oracle::qr_rank(low));
    Matrix full = random_matrix(rng, 5, 5);
    CHECK(numerical_rank(full, 1e-10) == oracle::qr_rank(full));
}

TEST_CASE("principal cosines and subspace distance") {
    Rng rng(17);
    Matrix u = random_matrix(rng, 8, 3);
    Matrix w = random_matrix(rng, 3, 3);  // same span, different basis
    RealVector cos_same = principal_cosines(u, u * w);
    for (Eigen::Index i = 0; i < cos_same.size(); ++i)
        CHECK(cos_same(i) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(subspace_distance(u, u * w) < 1e-9);

    Matrix v = random_matrix(rng, 8, 3);
    RealVector lib = principal_cosines(u, v);
    RealVector ref = oracle::principal_cosines_ref(u, v);
    REQUIRE(lib.size() == ref.size());
    std::sort(lib.data(), lib.data() + lib.size());
    std::sort(ref.data(), ref.data() + ref.size());
    for (Eigen::Index i = 0; i < lib.size(); ++i)
        CHECK(lib(i) == doctest::Approx(ref(i)).epsilon(1e-9));
}

TEST_CASE("subspace_intersection finds the common directions") {
    // span{e1, e2} meets span{e2, e3} in span{e2}.
    Matrix u = Matrix::Zero(4, 2), v = Matrix::Zero(4, 2);
    u(0, 0) = 1;
    u(1, 1) = 1;
    v(1, 0) = 1;
    v(2, 1) = 1;
    Matrix inter = subspace_intersection(u, v);
    REQUIRE(inter.cols() == 1);
    CHECK(std::abs(std::abs(inter(1, 0)) - 1.0) < 1e-12);
}

TEST_CASE("fit_line recovers exact lines") {
    std::vector<double> x{1.0, 2.0, 3.0, 4.0};
    std::vector<double> y;
    for (double xi : x) y.push_back(-2.5 * xi + 0.75);
    LineFit fit = fit_line(x, y);
    CHECK(fit.slope == doctest::Approx(-2.5).epsilon(1e-12));
    CHECK(fit.intercept == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(fit.max_residual < 1e-12);
}

TEST_CASE("rng is deterministic and in range") {
    Rng a(42), b(42);
    for (int i = 0; i < 100; ++i) {
        double u = a.uniform();
        CHECK(u == b.uniform());
        CHECK(u > 0.0);
        CHECK(u <= 1.0);
    }
    Rng c(42);
    cd g = c.complex_gaussian();
    Rng d(42);
    CHECK(g == d.complex_gaussian());
}

TEST_CASE("block_sites multiplies site matrices lexicographically") {
    MpsTensor g = ghz_tensor().full_tensor();
    MpsTensor g2 = block_sites(g, 2);
    REQUIRE(g2.d() == 4);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            CHECK((g2.mat(2 * i + j) - g.mat(i) * g.mat(j)).norm() == 0.0);
}

TEST_CASE("BlockMps layout and full tensor") {
    BlockMps c = ghz_tensor();
    REQUIRE(c.block_count() == 2);
    CHECK(c.offset(0) == 0);
    CHECK(c.offset(1) == 1);
    CHECK(c.total_dim() == 2);
    MpsTensor full = c.full_tensor();
    CHECK(full.mat(0)(0, 0) == cd(1, 0));
    CHECK(full.mat(0)(1, 1) == cd(0, 0));
    CHECK(full.mat(1)(1, 1) == cd(1, 0));
    CHECK(full.mat(1)(0, 0) == cd(0, 0));
    CHECK(full.mat(0)(0, 1) == cd(0, 0));
}

TEST_CASE("arrange_blocks places walls off the diagonal") {
    BlockMps c = ghz_tensor();
    Rng rng(3);
    MpsTensor r({random_matrix(rng, 1, 1), random_matrix(rng, 1, 1)});
    MpsTensor l({random_matrix(rng, 1, 1), random_matrix(rng, 1, 1)});
    MpsTensor m = arrange_blocks(c.block(0), r, l, c.block(1));
    for (int i = 0; i < 2; ++i) {
        CHECK(m.mat(i)(0, 0) == c.block(0).mat(i)(0, 0));
        CHECK(m.mat(i)(0, 1) == r.mat(i)(0, 0));
        CHECK(m.mat(i)(1, 0) == l.mat(i)(0, 0));
        CHECK(m.mat(i)(1, 1) == c.block(1).mat(i)(0, 0));
    }
    MpsTensor row = arrange_row(c.block(0), r);
    CHECK(row.rows() == 1);
    CHECK(row.cols() == 2);
    CHECK(row.mat(0)(0, 0) == c.block(0).mat(0)(0, 0));
    CHECK(row.mat(1)(0, 1) == r.mat(1)(0, 0));
}

TEST_CASE("transfer operator matches the direct action") {
    MpsTensor t = oracle::random_canonical(4, 2, 23);
    TransferOperator e = transfer_operator(t, t);
    Rng rng(29);
    Matrix x = random_matrix(rng, 2, 2);
    CHECK((e.apply(x) - oracle::transfer_apply(t, t, x)).norm() < 1e-12);
    CHECK((unvec(e.matrix * vec(x), 2, 2) - oracle::transfer_apply(t, t, x)).norm() < 1e-12);
}

TEST_CASE("standard form fixed points") {
    MpsTensor t = oracle::random_canonical(4, 2, 31);
    CHECK(is_standard_form(t));
    CanonicalData data = fixed_points(t);
    CHECK(std::abs(data.leading_eigenvalue - cd(1, 0)) < 1e-8);
    CHECK(data.trace_lambda == doctest::Approx(1.0).epsilon(1e-8));
    // E(1) = 1 directly.
    CHECK((oracle::transfer_apply(t, t, Matrix::Identity(2, 2)) - Matrix::Identity(2, 2))
              .norm() < 1e-8);

    MpsTensor g = ghz_tensor().full_tensor();
    CHECK(is_standard_form(g));
    CHECK(spectral_radius(transfer_operator(g, g)) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("canonicalize produces standard form") {
    Rng rng(37);
    std::vector<Matrix> mats;
    for (int i = 0; i < 4; ++i) mats.push_back(random_matrix(rng, 2, 2));
    MpsTensor raw(std::move(mats));
    REQUIRE(is_injective(raw));
    CanonicalizeResult res = canonicalize(raw);
    CHECK(is_standard_form(res.tensor));
    // The gauge record reproduces the canonical tensor from the raw one.
    for (int i = 0; i < 4; ++i) {
        Matrix back = res.record.gauge * raw.mat(i) * res.record.gauge_inv * res.record.scale;
        CHECK((back - res.tensor.mat(i)).norm() < 1e-9);
    }
}

TEST_CASE("injectivity calls") {
    BlockMps c = ghz_tensor();
    CHECK(is_injective(c.block(0)));
    CHECK(is_injective(c.block(1)));
    MpsTensor full = c.full_tensor();
    CHECK(!is_injective(full));
    CHECK(!injectivity_index(full).has_value());

    MpsTensor t = oracle::random_canonical(4, 2, 41);
    CHECK(is_injective(t));
    auto idx = injectivity_index(t);
    REQUIRE(idx.has_value());
    CHECK(*idx == 1);
    CHECK(numerical_rank(tensor_matrix(t), 1e-10) == oracle::qr_rank(tensor_matrix(t)));
}

TEST_CASE("left inverse inverts the contraction") {
    MpsTensor t = oracle::random_canonical(4, 2, 43);
    MpsTensor inv = left_inverse_tensor(t);
    Matrix prod = tensor_matrix(t).transpose() * tensor_matrix(inv);
    CHECK((prod - Matrix::Identity(4, 4)).norm() < 1e-9);
}
