#include "unclelab/chain.hpp"

#include <cmath>

namespace unclelab {

double sparse_norm2(const SparseState& v) {
    double s = 0.0;
    for (const auto& [idx, amp] : v) s += std::norm(amp);
    return s;
}

cd sparse_dot(const SparseState& a, const SparseState& b) {
    const SparseState& small = a.size() <= b.size() ? a : b;
    const SparseState& large = a.size() <= b.size() ? b : a;
    cd s = 0.0;
    for (const auto& [idx, amp] : small) {
        auto it = large.find(idx);
        if (it == large.end()) continue;
        if (&small == &a) s += std::conj(amp) * it->second;
        else s += std::conj(it->second) * amp;
    }
    return s;
}

Vector sparse_to_dense(const SparseState& v, std::int64_t dim) {
    Vector out = Vector::Zero(dim);
    for (const auto& [idx, amp] : v) out(static_cast<Eigen::Index>(idx)) = amp;
    return out;
}

ChainOperator::ChainOperator(ProjectorTerm term, int sites, BoundaryKind boundary)
    : term_(std::move(term)), sites_(sites), boundary_(boundary) {
    int k = term_.support;
    int d = term_.local_dim;
    if (sites_ < k)
        throw DimensionError("ChainOperator: chain shorter than the term support");
    std::int64_t dk = int_pow(d, k);
    if (term_.matrix.rows() != dk || term_.matrix.cols() != dk)
        throw DimensionError("ChainOperator: term matrix size != d^support");
    if ((term_.matrix - term_.matrix.adjoint()).norm() >
        1e-10 * std::max(1.0, term_.matrix.norm()))
        throw DimensionError("ChainOperator: term must be Hermitian");
    // Sparse application works on any chain the index arithmetic can address;
    // the matvec cap is enforced only by the dense-vector entry points.
    dim_ = 1;
    for (int s = 0; s < sites_; ++s) {
        if (dim_ > (std::int64_t{1} << 62) / d)
            throw SizeCapError("ChainOperator: d^n overflows the index space");
        dim_ *= d;
    }

    int npos = (boundary_ == BoundaryKind::Periodic) ? sites_ : sites_ - k + 1;
    auto site_stride = [&](int site) {  // 1-based site
        return int_pow(d, sites_ - site);
    };
    for (int p = 0; p < npos; ++p) {
        std::vector<int> sites_list;
        for (int j = 0; j < k; ++j) sites_list.push_back((p + j) % sites_ + 1);
        std::vector<std::int64_t> lo(static_cast<size_t>(dk), 0);
        for (std::int64_t lc = 0; lc < dk; ++lc) {
            std::int64_t rem = lc;
            for (int j = k - 1; j >= 0; --j) {
                int digit = static_cast<int>(rem % d);
                rem /= d;
                lo[static_cast<size_t>(lc)] +=
                    digit * site_stride(sites_list[static_cast<size_t>(j)]);
            }
        }
        std::vector<std::int64_t> env;
        for (int s = 1; s <= sites_; ++s) {
            bool in_term = false;
            for (int j = 0; j < k; ++j)
                if (sites_list[static_cast<size_t>(j)] == s) in_term = true;
            if (!in_term) env.push_back(site_stride(s));
        }
        positions_.push_back(std::move(sites_list));
        local_offsets_.push_back(std::move(lo));
        env_strides_.push_back(std::move(env));
    }
}

ChainOperator assemble(const ProjectorTerm& term, int n, BoundaryKind boundary) {
    return ChainOperator(term, n, boundary);
}

template <typename Sink>
void ChainOperator::scan_position(int p, const Vector& v, Sink&& sink) const {
    const auto& strides = env_strides_[static_cast<size_t>(p)];
    int ne = static_cast<int>(strides.size());
    int d = term_.local_dim;
    std::vector<int> digit(static_cast<size_t>(ne), 0);
    std::int64_t off = 0;
    while (true) {
        sink(off);
        int j = ne - 1;
        while (j >= 0) {
            if (digit[static_cast<size_t>(j)] + 1 < d) {
                ++digit[static_cast<size_t>(j)];
                off += strides[static_cast<size_t>(j)];
                break;
            }
            off -= (d - 1) * strides[static_cast<size_t>(j)];
            digit[static_cast<size_t>(j)] = 0;
            --j;
        }
        if (j < 0) break;
    }
    (void)v;
}

Vector ChainOperator::apply(const Vector& v) const {
    if (dim_ > limits::max_state_dim)
        throw SizeCapError("ChainOperator::apply: d^n exceeds the matvec cap");
    if (v.size() != dim_) throw DimensionError("ChainOperator::apply: vector size");
    Vector out = Vector::Zero(dim_);
    std::int64_t dk = term_.matrix.rows();
    Vector loc(dk), res(dk);
    for (int p = 0; p < position_count(); ++p) {
        const auto& lo = local_offsets_[static_cast<size_t>(p)];
        scan_position(p, v, [&](std::int64_t base) {
            for (std::int64_t i = 0; i < dk; ++i)
                loc(i) = v(base + lo[static_cast<size_t>(i)]);
            res.noalias() = term_.matrix * loc;
            for (std::int64_t i = 0; i < dk; ++i)
                out(base + lo[static_cast<size_t>(i)]) += res(i);
        });
    }
    return out;
}

Vector ChainOperator::apply_position(int p, const Vector& v) const {
    if (dim_ > limits::max_state_dim)
        throw SizeCapError("ChainOperator::apply_position: d^n exceeds the matvec cap");
    if (v.size() != dim_) throw DimensionError("ChainOperator::apply_position: size");
    Vector out = Vector::Zero(dim_);
    std::int64_t dk = term_.matrix.rows();
    Vector loc(dk), res(dk);
    const auto& lo = local_offsets_[static_cast<size_t>(p)];
    scan_position(p, v, [&](std::int64_t base) {
        for (std::int64_t i = 0; i < dk; ++i)
            loc(i) = v(base + lo[static_cast<size_t>(i)]);
        res.noalias() = term_.matrix * loc;
        for (std::int64_t i = 0; i < dk; ++i)
            out(base + lo[static_cast<size_t>(i)]) += res(i);
    });
    return out;
}

double ChainOperator::expectation(const Vector& v) const {
    double n2 = v.squaredNorm();
    if (n2 <= 0.0) throw DimensionError("ChainOperator::expectation: zero vector");
    cd val = v.dot(apply(v));
    if (std::abs(val.imag()) > 1e-9 * std::max(1.0, std::abs(val)))
        throw ConvergenceError("ChainOperator::expectation: imaginary part too large");
    return val.real() / n2;
}

Matrix ChainOperator::dense() const {
    if (dim_ > limits::max_dense_dim)
        throw SizeCapError("ChainOperator::dense: dimension exceeds dense cap");
    Matrix out = Matrix::Zero(dim_, dim_);
    std::int64_t dk = term_.matrix.rows();
    Vector dummy;
    for (int p = 0; p < position_count(); ++p) {
        const auto& lo = local_offsets_[static_cast<size_t>(p)];
        scan_position(p, dummy, [&](std::int64_t base) {
            for (std::int64_t i = 0; i < dk; ++i)
                for (std::int64_t j = 0; j < dk; ++j)
                    out(base + lo[static_cast<size_t>(i)], base + lo[static_cast<size_t>(j)]) +=
                        term_.matrix(i, j);
        });
    }
    return out;
}

SparseState ChainOperator::apply_sparse(const SparseState& v) const {
    SparseState out;
    int k = term_.support;
    int d = term_.local_dim;
    std::int64_t dk = term_.matrix.rows();
    for (int p = 0; p < position_count(); ++p) {
        const auto& sites_list = positions_[static_cast<size_t>(p)];
        const auto& lo = local_offsets_[static_cast<size_t>(p)];
        for (const auto& [idx, amp] : v) {
            std::int64_t lc = 0;
            for (int j = 0; j < k; ++j) {
                std::int64_t stride = int_pow(d, sites_ - sites_list[static_cast<size_t>(j)]);
                int digit = static_cast<int>((static_cast<std::int64_t>(idx) / stride) % d);
                lc = lc * d + digit;
            }
            std::int64_t base = static_cast<std::int64_t>(idx) - lo[static_cast<size_t>(lc)];
            for (std::int64_t r = 0; r < dk; ++r) {
                cd h = term_.matrix(r, lc);
                if (std::abs(h) < 1e-300) continue;
                out[static_cast<std::uint64_t>(base + lo[static_cast<size_t>(r)])] += h * amp;
            }
        }
    }
    return out;
}

double ChainOperator::expectation_sparse(const SparseState& v) const {
    double n2 = sparse_norm2(v);
    if (n2 <= 0.0) throw DimensionError("expectation_sparse: zero vector");
    SparseState hv = apply_sparse(v);
    cd val = sparse_dot(v, hv);
    return val.real() / n2;
}

Vector rotate_state(const Vector& v, int n, int d) {
    std::int64_t dim = int_pow(d, n);
    if (v.size() != dim) throw DimensionError("rotate_state: size mismatch");
    std::int64_t top = int_pow(d, n - 1);
    Vector out(dim);
    for (std::int64_t idx = 0; idx < dim; ++idx) {
        std::int64_t first = idx / top;
        std::int64_t rest = idx % top;
        out(rest * d + first) = v(idx);
    }
    return out;
}

}  // namespace unclelab
