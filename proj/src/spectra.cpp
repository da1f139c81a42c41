#include "unclelab/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace unclelab {

namespace {

constexpr double kPi = 3.14159265358979323846;

RealVector dense_eigenvalues(const ChainOperator& h) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(h.dense()), Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
        throw ConvergenceError("dense eigensolver failed");
    return es.eigenvalues();
}

// Basis index with 1s on sites a..b (1-based, site 1 most significant).
std::uint64_t run_index(int n, int a, int b) {
    std::uint64_t mask = 0;
    for (int s = a; s <= b; ++s) mask |= std::uint64_t{1} << (n - s);
    return mask;
}

void fill_sparse_diagnostics(TrialState& t, const ChainOperator& h) {
    t.norm2 = sparse_norm2(t.state);
    t.ratio = h.expectation_sparse(t.state);
    t.energy = t.ratio * t.norm2;
    double scale = std::sqrt(t.norm2);
    auto amp_at = [&](std::uint64_t idx) {
        auto it = t.state.find(idx);
        return it == t.state.end() ? 0.0 : std::abs(it->second);
    };
    t.overlap_a = amp_at(0) / scale;
    t.overlap_b = amp_at(run_index(t.sites, 1, t.sites)) / scale;
}

void check_qubit_chain(const ChainOperator& h, int n, const char* who) {
    if (h.sites() != n || h.local_dim() != 2)
        throw GeometryError(std::string(who) + ": operator does not match the trial chain");
}

}  // namespace

SpectrumReport low_spectrum(const ChainOperator& h, int count, const Matrix* deflate,
                            const LanczosOptions& opts) {
    if (count <= 0) throw DimensionError("low_spectrum: count must be positive");
    SpectrumReport rep;
    rep.sites = h.sites();
    rep.boundary = h.boundary();
    rep.tol = limits::kernel_tol;
    if (h.dim() <= limits::max_dense_dim) {
        RealVector all = dense_eigenvalues(h);
        Eigen::Index take = std::min<Eigen::Index>(count, all.size());
        rep.method = "dense";
        rep.values = all.head(take);
        rep.residuals = RealVector::Zero(take);
        for (Eigen::Index i = 0; i < all.size(); ++i) {
            if (std::abs(all[i]) < rep.tol) {
                ++rep.kernel_dim;
            } else if (all[i] > 0.0) {
                rep.gap = all[i];
                break;
            }
        }
        return rep;
    }
    LinOp op = [&h](const Vector& x, Vector& y) { y = h.apply(x); };
    LanczosResult lr = lanczos_lowest(op, h.dim(), count, deflate, opts);
    rep.method = "iterative";
    int take = static_cast<int>(lr.values.size());
    rep.values = RealVector(take);
    rep.residuals = RealVector(take);
    rep.kernel_dim = deflate ? static_cast<int>(deflate->cols()) : 0;
    for (int i = 0; i < take; ++i) {
        rep.values[i] = lr.values[static_cast<size_t>(i)];
        rep.residuals[i] = lr.residuals[static_cast<size_t>(i)];
        if (std::abs(rep.values[i]) < rep.tol)
            ++rep.kernel_dim;
        else if (rep.values[i] > 0.0 && rep.gap == 0.0)
            rep.gap = rep.values[i];
    }
    return rep;
}

Matrix kernel_basis(const ChainOperator& h, double tol) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(h.dense()));
    if (es.info() != Eigen::Success)
        throw ConvergenceError("kernel_basis: dense eigensolver failed");
    const RealVector& vals = es.eigenvalues();
    Eigen::Index k = 0;
    while (k < vals.size() && std::abs(vals[k]) < tol) ++k;
    return es.eigenvectors().leftCols(k);
}

double frustration_residual(const ChainOperator& h, const Vector& v) {
    double nv = v.norm();
    if (nv <= 0.0) throw DimensionError("frustration_residual: zero vector");
    double worst = 0.0;
    for (int p = 0; p < h.position_count(); ++p)
        worst = std::max(worst, h.apply_position(p, v).norm() / nv);
    return worst;
}

RealVector diagonal_spectrum(const ChainOperator& h) {
    const Matrix& m = h.term().matrix;
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            if (i != j && std::abs(m(i, j)) > 1e-12)
                throw DimensionError("diagonal_spectrum: local term is not diagonal");
    if (h.dim() > limits::max_state_dim)
        throw SizeCapError("diagonal_spectrum: d^n exceeds the matvec cap");
    int n = h.sites();
    int d = h.local_dim();
    std::vector<double> diag(static_cast<size_t>(m.rows()));
    for (Eigen::Index i = 0; i < m.rows(); ++i) diag[static_cast<size_t>(i)] = m(i, i).real();
    std::vector<std::int64_t> pow(static_cast<size_t>(n));
    pow[static_cast<size_t>(n - 1)] = 1;
    for (int s = n - 2; s >= 0; --s)
        pow[static_cast<size_t>(s)] = pow[static_cast<size_t>(s + 1)] * d;
    std::vector<int> digits(static_cast<size_t>(n));
    std::vector<double> vals;
    vals.reserve(static_cast<size_t>(h.dim()));
    for (std::int64_t x = 0; x < h.dim(); ++x) {
        for (int s = 0; s < n; ++s)
            digits[static_cast<size_t>(s)] =
                static_cast<int>((x / pow[static_cast<size_t>(s)]) % d);
        double e = 0.0;
        for (int p = 0; p < h.position_count(); ++p) {
            const std::vector<int>& sites = h.position_sites(p);
            std::int64_t local = 0;
            for (int s : sites) local = local * d + digits[static_cast<size_t>(s - 1)];
            e += diag[static_cast<size_t>(local)];
        }
        vals.push_back(e);
    }
    std::sort(vals.begin(), vals.end());
    std::vector<double> distinct;
    for (double v : vals)
        if (distinct.empty() || v - distinct.back() > 1e-9) distinct.push_back(v);
    RealVector out(static_cast<Eigen::Index>(distinct.size()));
    for (size_t i = 0; i < distinct.size(); ++i) out[static_cast<Eigen::Index>(i)] = distinct[i];
    return out;
}

SectorSpectra momentum_spectra(const ChainOperator& h) {
    if (h.boundary() != BoundaryKind::Periodic)
        throw GeometryError("momentum_spectra: needs a periodic chain");
    if (h.dim() > limits::max_state_dim)
        throw SizeCapError("momentum_spectra: d^n exceeds the matvec cap");
    const int n = h.sites();
    const int d = h.local_dim();
    const std::int64_t dim = h.dim();
    const std::int64_t top = dim / d;
    auto rot = [&](std::int64_t x) { return (x % top) * d + x / top; };

    // Orbits of the cyclic shift; each index remembers its representative and
    // how many shifts separate it from that representative.
    std::vector<std::int32_t> orbit_of(static_cast<size_t>(dim), -1);
    std::vector<std::int32_t> shift_of(static_cast<size_t>(dim), 0);
    std::vector<std::int64_t> reps;
    std::vector<int> orbit_len;
    for (std::int64_t x = 0; x < dim; ++x) {
        if (orbit_of[static_cast<size_t>(x)] >= 0) continue;
        auto id = static_cast<std::int32_t>(reps.size());
        reps.push_back(x);
        std::int64_t y = x;
        int t = 0;
        do {
            orbit_of[static_cast<size_t>(y)] = id;
            shift_of[static_cast<size_t>(y)] = t;
            y = rot(y);
            ++t;
        } while (y != x);
        orbit_len.push_back(t);
    }

    // One sparse application per representative serves every sector.
    std::vector<std::vector<std::pair<std::int64_t, cd>>> action(reps.size());
    for (size_t i = 0; i < reps.size(); ++i) {
        SparseState unit;
        unit[static_cast<std::uint64_t>(reps[i])] = cd(1.0, 0.0);
        SparseState image = h.apply_sparse(unit);
        action[i].reserve(image.size());
        for (const auto& [idx, amp] : image)
            action[i].emplace_back(static_cast<std::int64_t>(idx), amp);
        std::sort(action[i].begin(), action[i].end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
    }

    SectorSpectra out;
    out.sites = n;
    out.by_momentum.resize(static_cast<size_t>(n));
    std::vector<double> merged;
    merged.reserve(static_cast<size_t>(dim));
    std::vector<std::int32_t> row(reps.size());
    for (int k = 0; k < n; ++k) {
        std::int32_t nrows = 0;
        for (size_t i = 0; i < reps.size(); ++i) {
            bool compatible = (static_cast<std::int64_t>(k) * orbit_len[i]) % n == 0;
            row[i] = compatible ? nrows++ : -1;
        }
        if (nrows > limits::max_dense_dim)
            throw SizeCapError("momentum_spectra: sector exceeds dense cap");
        if (nrows == 0) {
            out.by_momentum[static_cast<size_t>(k)] = RealVector(0);
            continue;
        }
        Matrix hk = Matrix::Zero(nrows, nrows);
        for (size_t i = 0; i < reps.size(); ++i) {
            if (row[i] < 0) continue;
            double lx = orbit_len[i];
            for (const auto& [z, c] : action[i]) {
                std::int32_t oz = orbit_of[static_cast<size_t>(z)];
                if (row[static_cast<size_t>(oz)] < 0) continue;
                double lz = orbit_len[static_cast<size_t>(oz)];
                double ang = -2.0 * kPi * k * shift_of[static_cast<size_t>(z)] / n;
                hk(row[static_cast<size_t>(oz)], row[i]) +=
                    c * std::exp(cd(0.0, ang)) * std::sqrt(lx / lz);
            }
        }
        Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(hk), Eigen::EigenvaluesOnly);
        if (es.info() != Eigen::Success)
            throw ConvergenceError("momentum_spectra: sector eigensolver failed");
        out.by_momentum[static_cast<size_t>(k)] = es.eigenvalues();
        for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
            merged.push_back(es.eigenvalues()[i]);
    }
    std::sort(merged.begin(), merged.end());
    out.merged = Eigen::Map<const RealVector>(merged.data(),
                                              static_cast<Eigen::Index>(merged.size()));
    return out;
}

std::vector<IntersectionRow> intersection_scan(const BlockMps& c, const Perturbation& p,
                                               int n_max, double tol) {
    if (c.block_count() != 2)
        throw DimensionError("intersection_scan: expects exactly two blocks");
    validate_perturbation(c, p);
    if (n_max < 3) throw GeometryError("intersection_scan: n_max must be at least 3");
    const int d = c.d();
    if (int_pow(d, n_max) > limits::max_state_dim)
        throw SizeCapError("intersection_scan: d^n exceeds the matvec cap");
    UncleTensor u = uncle_tensor(c, p, 2);
    Matrix t = span_basis(u.tensor, tol, 2).vectors;
    Matrix id = Matrix::Identity(d, d);
    std::vector<IntersectionRow> rows;
    for (int n = 2; n < n_max; ++n) {
        Matrix inter = subspace_intersection(kron(t, id), kron(id, t));
        DomainWallSpan dw = domain_wall_span(c.block(0), c.block(1), p.r, p.l, n + 1, tol);
        IntersectionRow row;
        row.n = n;
        row.dim_n = static_cast<int>(t.cols());
        row.dim_intersect = static_cast<int>(inter.cols());
        row.dim_families = static_cast<int>(dw.joint.cols());
        row.dim_predicted = dw.predicted_dim;
        row.mismatch = (inter.cols() == dw.joint.cols() && inter.cols() > 0)
                           ? subspace_distance(inter, dw.joint)
                           : 1.0;
        rows.push_back(row);
        t = std::move(inter);
    }
    return rows;
}

ClosureReport closure_check(const BlockMps& c, const Perturbation& p, int n, double tol) {
    if (c.block_count() != 2)
        throw DimensionError("closure_check: expects exactly two blocks");
    validate_perturbation(c, p);
    DomainWallSpan dw = domain_wall_span(c.block(0), c.block(1), p.r, p.l, n, tol);
    const Matrix& s = dw.joint;
    Matrix shifted(s.rows(), s.cols());
    for (Eigen::Index j = 0; j < s.cols(); ++j)
        shifted.col(j) = rotate_state(s.col(j), n, c.d());
    Matrix inter = subspace_intersection(s, shifted);
    ClosureReport rep;
    rep.n = n;
    rep.dim = static_cast<int>(inter.cols());
    double worst = 0.0;
    for (int j = 0; j < 2; ++j) {
        Vector v = mps_state(c.block(j), n, Boundary::periodic());
        double nv = v.norm();
        if (nv < 1e-12)
            throw ConvergenceError("closure_check: block state vanished on this ring");
        v /= nv;
        if (inter.cols() > 0) v -= inter * (inter.adjoint() * v).eval();
        worst = std::max(worst, v.norm());
    }
    rep.containment = worst;
    return rep;
}

TrialState ghz_wall_state(int N, const ChainOperator& h) {
    if (N < 1) throw GeometryError("ghz_wall_state: N must be positive");
    int n = 2 * N + 3;
    check_qubit_chain(h, n, "ghz_wall_state");
    TrialState t;
    t.sites = n;
    auto site = [&](int pos) { return pos + N + 2; };
    for (int i = -N; i <= -1; ++i)
        for (int j = 1; j <= N; ++j)
            t.state[run_index(n, site(i + 1), site(j - 1))] += cd(1.0, 0.0);
    fill_sparse_diagnostics(t, h);
    return t;
}

TrialState ghz_momentum_state(int N, int k, const ChainOperator& h) {
    if (N < 4) throw GeometryError("ghz_momentum_state: N must be at least 4");
    int n = 2 * N + 3;
    check_qubit_chain(h, n, "ghz_momentum_state");
    TrialState t;
    t.sites = n;
    auto site = [&](int pos) { return pos + N + 2; };
    for (int m = -N + 1; m <= -2; ++m) {
        cd phase = std::exp(cd(0.0, 2.0 * kPi * m * k / N));
        for (int q = 2; q <= N - 1; ++q)
            t.state[run_index(n, site(m + 1), site(q - 1))] += phase;
    }
    fill_sparse_diagnostics(t, h);
    return t;
}

DenseTrial domain_wall_state(const BlockMps& c, const Perturbation& p, int N,
                             const ChainOperator& h) {
    if (c.block_count() != 2)
        throw DimensionError("domain_wall_state: expects exactly two blocks");
    validate_perturbation(c, p);
    if (N < 1) throw GeometryError("domain_wall_state: N must be positive");
    int n = 6 * N + 1;
    if (h.sites() != n || h.local_dim() != c.d())
        throw GeometryError("domain_wall_state: operator does not match the 6N+1 chain");
    const MpsTensor& a = c.block(0);
    const MpsTensor& b = c.block(1);
    DenseTrial t;
    t.sites = n;
    Vector acc = Vector::Zero(h.dim());
    auto site = [&](int pos) { return pos + 3 * N + 1; };
    for (int i = -2 * N; i <= -N; ++i)
        for (int j = N; j <= 2 * N; ++j) {
            std::vector<const MpsTensor*> layout(static_cast<size_t>(n), &a);
            layout[static_cast<size_t>(site(i) - 1)] = &p.r;
            for (int q = i + 1; q < j; ++q) layout[static_cast<size_t>(site(q) - 1)] = &b;
            layout[static_cast<size_t>(site(j) - 1)] = &p.l;
            acc += state_from_site_tensors(layout, Boundary::periodic());
        }
    t.state = std::move(acc);
    t.norm2 = t.state.squaredNorm();
    if (t.norm2 <= 0.0) throw ConvergenceError("domain_wall_state: trial state vanished");
    t.ratio = h.expectation(t.state);
    t.energy = t.ratio * t.norm2;
    double scale = std::sqrt(t.norm2);
    Vector ga = mps_state(a, n, Boundary::periodic());
    Vector gb = mps_state(b, n, Boundary::periodic());
    t.overlap_a = ga.norm() > 0 ? std::abs(ga.normalized().dot(t.state)) / scale : 0.0;
    t.overlap_b = gb.norm() > 0 ? std::abs(gb.normalized().dot(t.state)) / scale : 0.0;
    return t;
}

DenseTrial defect_momentum_state(const MpsTensor& a, const MpsTensor& r, int n, int k,
                                 const ChainOperator& h) {
    if (!a.is_square() || r.rows() != a.rows() || r.cols() != a.cols() || r.d() != a.d())
        throw DimensionError("defect_momentum_state: defect must match the base tensor");
    if (n < 2) throw GeometryError("defect_momentum_state: chain too short");
    if (k % n == 0)
        throw GeometryError("defect_momentum_state: momentum must be nonzero mod n");
    if (h.sites() != n || h.local_dim() != a.d())
        throw GeometryError("defect_momentum_state: operator does not match the chain");
    DenseTrial t;
    t.sites = n;
    Vector acc = Vector::Zero(h.dim());
    Vector acc0 = Vector::Zero(h.dim());
    for (int j = 1; j <= n; ++j) {
        std::vector<const MpsTensor*> layout(static_cast<size_t>(n), &a);
        layout[static_cast<size_t>(j - 1)] = &r;
        Vector z = state_from_site_tensors(layout, Boundary::periodic());
        acc += std::exp(cd(0.0, 2.0 * kPi * j * k / n)) * z;
        acc0 += z;
    }
    t.state = std::move(acc);
    t.norm2 = t.state.squaredNorm();
    if (t.norm2 <= 0.0) throw ConvergenceError("defect_momentum_state: trial state vanished");
    t.ratio = h.expectation(t.state);
    t.energy = t.ratio * t.norm2;
    double scale = std::sqrt(t.norm2);
    Vector ga = mps_state(a, n, Boundary::periodic());
    t.overlap_a = ga.norm() > 0 ? std::abs(ga.normalized().dot(t.state)) / scale : 0.0;
    t.overlap_b = acc0.norm() > 1e-12 ? std::abs(acc0.normalized().dot(t.state)) / scale : 0.0;
    return t;
}

ResidualReport residual_report(const ChainOperator& h, const SparseState& v) {
    ResidualReport r;
    r.norm2 = sparse_norm2(v);
    if (r.norm2 <= 0.0) throw DimensionError("residual_report: zero state");
    SparseState hv = h.apply_sparse(v);
    cd val = sparse_dot(v, hv);
    if (std::abs(val.imag()) > 1e-9 * std::max(1.0, std::abs(val)))
        throw ConvergenceError("residual_report: imaginary part too large");
    r.rayleigh = val.real() / r.norm2;
    for (const auto& [key, amp] : v) hv[key] -= r.rayleigh * amp;
    r.residual = std::sqrt(sparse_norm2(hv) / r.norm2);
    return r;
}

ConcatReport concat_approx_eigenvector(const ChainOperator& h, const PacketSpec& packet,
                                       int j, int separation, double drift_allowance) {
    if (h.local_dim() != 2)
        throw GeometryError("concat_approx_eigenvector: qubit chains only");
    if (h.boundary() != BoundaryKind::Periodic)
        throw GeometryError("concat_approx_eigenvector: needs a periodic chain");
    if (packet.range < 1 || packet.run < 1 || j < 1 || separation < 2)
        throw GeometryError(
            "concat_approx_eigenvector: need range >= 1, run >= 1, copies >= 1, separation >= 2");
    const int n = h.sites();
    if (n > 62) throw SizeCapError("concat_approx_eigenvector: chain exceeds 62 sites");
    const int extent = 2 * packet.range + packet.run - 1;
    const int period = extent + separation;
    if (static_cast<std::int64_t>(j) * period > n)
        throw GeometryError("concat_approx_eigenvector: copies do not fit on the ring");

    auto weight = [&](int u, int v) -> cd {
        double env = std::sin(kPi * (u + 1) / (packet.range + 1)) *
                     std::sin(kPi * (v + 1) / (packet.range + 1));
        double ang =
            packet.range > 1 ? 2.0 * kPi * packet.momentum * u / packet.range : 0.0;
        return env * std::exp(cd(0.0, ang));
    };
    auto build = [&](int copies) {
        SparseState st;
        st[0] = cd(1.0, 0.0);
        for (int cpy = 0; cpy < copies; ++cpy) {
            int q = 1 + cpy * period;
            SparseState next;
            for (const auto& [cfg, amp] : st)
                for (int u = 0; u < packet.range; ++u)
                    for (int v = 0; v < packet.range; ++v) {
                        int b = q + packet.range - 1 + packet.run + v;
                        next[cfg | run_index(n, q + u, b)] += amp * weight(u, v);
                    }
            st = std::move(next);
        }
        return st;
    };

    ConcatReport rep;
    rep.copies = j;
    ResidualReport base = residual_report(h, build(1));
    rep.base_energy = base.rayleigh;
    rep.base_residual = base.residual;
    rep.state = build(j);
    ResidualReport full = residual_report(h, rep.state);
    rep.norm2 = full.norm2;
    rep.rayleigh = full.rayleigh;
    rep.residual = full.residual;
    rep.bound = j * base.residual + drift_allowance;
    return rep;
}

std::vector<WindowHit> window_hits(const RealVector& spectrum,
                                   const std::vector<Window>& windows) {
    std::vector<WindowHit> hits;
    hits.reserve(windows.size());
    for (size_t w = 0; w < windows.size(); ++w) {
        WindowHit hit;
        hit.window = static_cast<int>(w);
        double best = -1.0;
        for (Eigen::Index i = 0; i < spectrum.size(); ++i) {
            double dist = std::abs(spectrum[i] - windows[w].center);
            if (best < 0.0 || dist < best) {
                best = dist;
                hit.value = spectrum[i];
            }
        }
        hit.hit = best >= 0.0 && best <= windows[w].halfwidth;
        if (!hit.hit) hit.value = 0.0;
        hits.push_back(hit);
    }
    return hits;
}

WindowScanRow dense_window_scan(const ChainOperator& h, const std::vector<Window>& windows) {
    WindowScanRow row;
    row.n = h.sites();
    if (h.dim() <= limits::max_dense_dim) {
        row.method = "dense";
        row.hits = window_hits(dense_eigenvalues(h), windows);
    } else {
        row.method = "sectors";
        row.hits = window_hits(momentum_spectra(h).merged, windows);
    }
    return row;
}

}  // namespace unclelab
