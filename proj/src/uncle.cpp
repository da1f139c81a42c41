#include "unclelab/uncle.hpp"

#include <cmath>

#include "unclelab/injectivity.hpp"
#include "unclelab/rng.hpp"

namespace unclelab {

namespace {

void require_two_blocks(const BlockMps& c, const char* what) {
    if (c.block_count() != 2)
        throw DimensionError(std::string(what) + ": exactly two blocks required");
}

}  // namespace

void validate_perturbation(const BlockMps& c, const Perturbation& p) {
    require_two_blocks(c, "validate_perturbation");
    Eigen::Index la = c.block(0).D(), mb = c.block(1).D();
    int d = c.d();
    if (p.pa.d() != d || p.pb.d() != d || p.r.d() != d || p.l.d() != d)
        throw DimensionError("perturbation: physical dimension mismatch");
    if (p.pa.rows() != la || p.pa.cols() != la || p.pb.rows() != mb || p.pb.cols() != mb)
        throw DimensionError("perturbation: diagonal block shapes");
    if (p.r.rows() != la || p.r.cols() != mb || p.l.rows() != mb || p.l.cols() != la)
        throw DimensionError("perturbation: wall shapes");
}

MpsTensor arranged_perturbation(const BlockMps& c, const Perturbation& p) {
    validate_perturbation(c, p);
    return arrange_blocks(c.block(0) + p.pa, p.r, p.l, c.block(1) + p.pb);
}

bool is_injective_perturbation(const BlockMps& c, const Perturbation& p, double tol) {
    return is_injective(arranged_perturbation(c, p), tol);
}

namespace {

// Product family (T^1 T^2 ... T^k)_{i1..ik} with lexicographic multi-index.
std::vector<Matrix> chain_products(const std::vector<const MpsTensor*>& chain) {
    int k = static_cast<int>(chain.size());
    int d = chain[0]->d();
    std::int64_t dk = int_pow(d, k);
    std::vector<Matrix> out;
    out.reserve(static_cast<size_t>(dk));
    for (std::int64_t idx = 0; idx < dk; ++idx) {
        std::int64_t rem = idx;
        std::vector<int> digits(static_cast<size_t>(k));
        for (int s = k - 1; s >= 0; --s) {
            digits[static_cast<size_t>(s)] = static_cast<int>(rem % d);
            rem /= d;
        }
        Matrix prod = chain[0]->mat(digits[0]);
        for (int s = 1; s < k; ++s)
            prod = prod * chain[static_cast<size_t>(s)]->mat(digits[static_cast<size_t>(s)]);
        out.push_back(std::move(prod));
    }
    return out;
}

void accumulate(std::vector<Matrix>& acc, const std::vector<Matrix>& term) {
    for (size_t i = 0; i < acc.size(); ++i) acc[i] += term[i];
}

}  // namespace

UncleTensor uncle_tensor(const BlockMps& c, const Perturbation& p, int sites) {
    require_two_blocks(c, "uncle_tensor");
    validate_perturbation(c, p);
    if (sites != 2 && sites != 3)
        throw DimensionError("uncle_tensor: sites must be 2 or 3");
    const MpsTensor& a = c.block(0);
    const MpsTensor& b = c.block(1);
    const MpsTensor& r = p.r;
    const MpsTensor& l = p.l;
    int d = c.d();
    std::int64_t dk = int_pow(d, sites);
    Eigen::Index la = a.D(), mb = b.D();

    std::vector<Matrix> diag_a, diag_b, off_r, off_l;
    if (sites == 2) {
        diag_a = chain_products({&a, &a});
        diag_b = chain_products({&b, &b});
        off_r = chain_products({&a, &r});
        accumulate(off_r, chain_products({&r, &b}));
        off_l = chain_products({&b, &l});
        accumulate(off_l, chain_products({&l, &a}));
    } else {
        diag_a = chain_products({&a, &a, &a});
        diag_b = chain_products({&b, &b, &b});
        off_r = chain_products({&a, &a, &r});
        accumulate(off_r, chain_products({&a, &r, &b}));
        accumulate(off_r, chain_products({&r, &b, &b}));
        off_l = chain_products({&b, &b, &l});
        accumulate(off_l, chain_products({&b, &l, &a}));
        accumulate(off_l, chain_products({&l, &a, &a}));
    }

    std::vector<Matrix> mats;
    mats.reserve(static_cast<size_t>(dk));
    for (std::int64_t i = 0; i < dk; ++i) {
        Matrix m = Matrix::Zero(la + mb, la + mb);
        m.topLeftCorner(la, la) = diag_a[static_cast<size_t>(i)];
        m.topRightCorner(la, mb) = off_r[static_cast<size_t>(i)];
        m.bottomLeftCorner(mb, la) = off_l[static_cast<size_t>(i)];
        m.bottomRightCorner(mb, mb) = diag_b[static_cast<size_t>(i)];
        mats.push_back(std::move(m));
    }
    UncleTensor u;
    u.tensor = MpsTensor(std::move(mats));
    u.sites = sites;
    u.base_dim = d;
    u.dim_a = la;
    u.dim_b = mb;
    return u;
}

ProjectorTerm uncle_local_term(const BlockMps& c, const Perturbation& p, int sites,
                               double tol) {
    UncleTensor two = uncle_tensor(c, p, 2);
    if (!is_injective(two.tensor, tol))
        throw UncleUndefinedError(
            "uncle_local_term: two-site uncle tensor not injective, limit uncertified");
    UncleTensor u = (sites == 2) ? std::move(two) : uncle_tensor(c, p, sites);
    int span_dim = span_basis(u.tensor, tol, sites).dim();
    std::int64_t full = int_pow(c.d(), sites);
    if (span_dim >= full)
        throw UncleUndefinedError(
            "uncle_local_term: limit-tensor span fills the local space (dim " +
            std::to_string(span_dim) + " of " + std::to_string(full) +
            "), the term would vanish; block more sites");
    return projector_complement(u.tensor, sites, tol);
}

ProjectorTerm parent_local_term(const BlockMps& c, int sites, double tol) {
    return parent_local_term(c.full_tensor(), sites, tol);
}

ProjectorTerm parent_local_term(const MpsTensor& t, int sites, double tol) {
    MpsTensor blocked = block_sites(t, sites);
    return projector_complement(blocked, sites, tol);
}

std::vector<ProbeRow> limit_convergence_probe(const BlockMps& c, const Perturbation& p,
                                              int sites, const std::vector<double>& eps_list,
                                              double tol) {
    for (size_t i = 0; i + 1 < eps_list.size(); ++i)
        if (!(eps_list[i] > eps_list[i + 1]))
            throw DimensionError("limit_convergence_probe: eps_list must decrease");
    for (double e : eps_list)
        if (e < 0.0) throw DimensionError("limit_convergence_probe: eps must be >= 0");
    ProjectorTerm uncle = uncle_local_term(c, p, sites, tol);
    MpsTensor base = c.full_tensor();
    MpsTensor pert = arrange_blocks(p.pa, p.r, p.l, p.pb);
    std::vector<ProbeRow> rows;
    rows.reserve(eps_list.size());
    for (double e : eps_list) {
        MpsTensor t_eps = base + pert.scaled(e);
        ProjectorTerm pt = projector_complement(block_sites(t_eps, sites), sites, tol);
        rows.push_back(ProbeRow{e, operator_norm(pt.matrix - uncle.matrix)});
    }
    return rows;
}

Perturbation random_injective_perturbation(const BlockMps& c, std::uint64_t seed) {
    require_two_blocks(c, "random_injective_perturbation");
    Eigen::Index la = c.block(0).D(), mb = c.block(1).D();
    int d = c.d();
    Rng rng(seed);
    const int max_draws = 64;
    bool full_route = d >= static_cast<int>((la + mb) * (la + mb));
    for (int attempt = 0; attempt < max_draws; ++attempt) {
        Perturbation p;
        // Fixed draw order keeps results bitwise stable for a given seed.
        std::vector<Matrix> pa, pb, r, l;
        for (int i = 0; i < d; ++i) pa.push_back(random_matrix(rng, la, la));
        for (int i = 0; i < d; ++i) pb.push_back(random_matrix(rng, mb, mb));
        for (int i = 0; i < d; ++i) r.push_back(random_matrix(rng, la, mb));
        for (int i = 0; i < d; ++i) l.push_back(random_matrix(rng, mb, la));
        p.pa = MpsTensor(std::move(pa));
        p.pb = MpsTensor(std::move(pb));
        p.r = MpsTensor(std::move(r));
        p.l = MpsTensor(std::move(l));
        if (full_route) {
            if (is_injective_perturbation(c, p)) return p;
            continue;
        }
        if (!is_injective(uncle_tensor(c, p, 2).tensor)) continue;
        if (la == 1 && mb == 1) {
            cd sum_r = 0.0, sum_l = 0.0;
            for (int i = 0; i < d; ++i) {
                sum_r += p.r.mat(i)(0, 0);
                sum_l += p.l.mat(i)(0, 0);
            }
            if (std::abs(sum_r) <= 1e-3 || std::abs(sum_l) <= 1e-3) continue;
        }
        return p;
    }
    throw ConvergenceError("random_injective_perturbation: no admissible draw found");
}

}  // namespace unclelab
