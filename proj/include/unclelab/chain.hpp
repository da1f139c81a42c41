#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "unclelab/span.hpp"

namespace unclelab {

enum class BoundaryKind { Open, Periodic };

// Basis-state amplitudes keyed by the base-d index (site 1 most significant).
using SparseState = std::unordered_map<std::uint64_t, cd>;

double sparse_norm2(const SparseState& v);
cd sparse_dot(const SparseState& a, const SparseState& b);  // <a|b>
Vector sparse_to_dense(const SparseState& v, std::int64_t dim);

// Translation-invariant sum of one local term over a finite chain. Matvec
// never materializes the full operator; dense() is capped.
class ChainOperator {
public:
    ChainOperator() = default;
    ChainOperator(ProjectorTerm term, int sites, BoundaryKind boundary);

    int sites() const { return sites_; }
    int local_dim() const { return term_.local_dim; }
    std::int64_t dim() const { return dim_; }
    BoundaryKind boundary() const { return boundary_; }
    const ProjectorTerm& term() const { return term_; }
    int position_count() const { return static_cast<int>(positions_.size()); }
    const std::vector<int>& position_sites(int p) const {
        return positions_[static_cast<size_t>(p)];
    }

    Vector apply(const Vector& v) const;
    Vector apply_position(int p, const Vector& v) const;
    double expectation(const Vector& v) const;
    Matrix dense() const;

    SparseState apply_sparse(const SparseState& v) const;
    double expectation_sparse(const SparseState& v) const;

private:
    template <typename Sink>
    void scan_position(int p, const Vector& v, Sink&& sink) const;

    ProjectorTerm term_;
    int sites_ = 0;
    BoundaryKind boundary_ = BoundaryKind::Periodic;
    std::int64_t dim_ = 0;
    std::vector<std::vector<int>> positions_;       // 1-based site lists
    std::vector<std::vector<std::int64_t>> local_offsets_;  // per position
    std::vector<std::vector<std::int64_t>> env_strides_;    // per position, env sites ascending
};

ChainOperator assemble(const ProjectorTerm& term, int n, BoundaryKind boundary);

// Cyclic left rotation |i1 i2 ... in> -> |i2 ... in i1> on amplitudes.
Vector rotate_state(const Vector& v, int n, int d);

}  // namespace unclelab
