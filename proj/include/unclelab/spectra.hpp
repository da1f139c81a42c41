#pragma once

#include <string>
#include <vector>

#include "unclelab/chain.hpp"
#include "unclelab/lanczos.hpp"
#include "unclelab/uncle.hpp"

namespace unclelab {

struct SpectrumReport {
    int sites = 0;
    BoundaryKind boundary = BoundaryKind::Periodic;
    std::string method;      // "dense" or "iterative"
    RealVector values;       // ascending
    RealVector residuals;    // per value; zero on the dense path
    int kernel_dim = 0;      // values below tol, plus deflated columns
    double gap = 0.0;        // smallest value at or above tol, 0 if none seen
    double tol = limits::kernel_tol;
};

// Lowest `count` eigenvalues. Dense solver under the dense cap, Lanczos above
// it. `deflate` holds known kernel columns to project out on the iterative
// path; they are counted into kernel_dim.
SpectrumReport low_spectrum(const ChainOperator& h, int count,
                            const Matrix* deflate = nullptr,
                            const LanczosOptions& opts = LanczosOptions());

// Orthonormal basis of the eigenvalue-0 space (dense path only).
Matrix kernel_basis(const ChainOperator& h, double tol = limits::kernel_tol);

// Worst per-position residual ||h_p v|| / ||v||: frustration-freeness gauge.
double frustration_residual(const ChainOperator& h, const Vector& v);

// Exact spectrum of a chain whose local term is diagonal in the product
// basis: the sorted distinct diagonal values. Works above the dense cap.
RealVector diagonal_spectrum(const ChainOperator& h);

// Exact full spectrum of a periodic chain split over the n cyclic-translation
// sectors; every sector block must fit under the dense cap, which reaches
// chains a few sites past the plain dense limit.
struct SectorSpectra {
    int sites = 0;
    std::vector<RealVector> by_momentum;  // index k = 0..n-1
    RealVector merged;                    // ascending, with multiplicities
};
SectorSpectra momentum_spectra(const ChainOperator& h);

// --- open-boundary kernel growth and its closure under cyclic shift ---

struct IntersectionRow {
    int n = 0;              // transition tested: n -> n+1
    int dim_n = 0;          // dim of the iterated space on n sites
    int dim_intersect = 0;  // dim (S_n (x) C^d) cap (C^d (x) S_n)
    int dim_families = 0;   // dim of the wall-family span on n+1 sites
    int dim_predicted = 0;  // l^2 + m^2 + 2lm
    double mismatch = 1.0;  // subspace distance, intersection vs families
};

// Starts from the span of the two-site uncle tensor and grows it one site at
// a time by intersecting the two embeddings, comparing against the explicit
// wall-family parametrization at each step.
std::vector<IntersectionRow> intersection_scan(const BlockMps& c, const Perturbation& p,
                                               int n_max,
                                               double tol = limits::rank_rel_tol);

struct ClosureReport {
    int n = 0;
    int dim = 0;               // dim of S_n cap (S_n shifted by one site)
    double containment = 1.0;  // worst residual of the two block states against it
};

ClosureReport closure_check(const BlockMps& c, const Perturbation& p, int n,
                            double tol = limits::rank_rel_tol);

// --- trial-state families ---

struct TrialState {
    int sites = 0;
    SparseState state;
    double norm2 = 0.0;
    double energy = 0.0;  // <v|H|v>, unnormalized
    double ratio = 0.0;   // energy / norm2
    double overlap_a = 0.0, overlap_b = 0.0;  // vs the two normalized ground states
};

struct DenseTrial {
    int sites = 0;
    Vector state;
    double norm2 = 0.0;
    double energy = 0.0;
    double ratio = 0.0;
    double overlap_a = 0.0, overlap_b = 0.0;
};

// Boundary-wall sum for the two-scalar-block chain of 2N+3 qubits: one run of
// 1s through the center, both endpoints summed over N positions.
TrialState ghz_wall_state(int N, const ChainOperator& h);

// Interior-range variant with phases e^{2 pi i m k / N} on the left wall.
TrialState ghz_momentum_state(int N, int k, const ChainOperator& h);

// Wall-pair family on a 6N+1-site periodic chain for a generic two-block
// tensor: one R wall swept over [-2N,-N], one L wall over [N,2N], traced.
DenseTrial domain_wall_state(const BlockMps& c, const Perturbation& p, int N,
                             const ChainOperator& h);

// Momentum-k sum of single-defect states A..A R A..A on an n-site ring built
// from one injective block and a defect tensor. overlap_b reports the k=0
// sibling; k must be nonzero mod n.
DenseTrial defect_momentum_state(const MpsTensor& a, const MpsTensor& r, int n, int k,
                                 const ChainOperator& h);

// --- concatenated approximate eigenvectors ---

struct PacketSpec {
    int range = 3;     // wall positions summed per side
    int run = 3;       // shortest 1-run length
    int momentum = 0;  // integer phase winding across the left range
};

struct ConcatReport {
    int copies = 0;
    SparseState state;
    double norm2 = 0.0;
    double rayleigh = 0.0;       // measured center
    double residual = 0.0;       // ||(H - rayleigh) v|| / ||v||
    double base_energy = 0.0;    // single-copy Rayleigh quotient
    double base_residual = 0.0;  // single-copy residual
    double bound = 0.0;          // copies * base_residual + drift allowance
};

// Places j copies of the packet around the ring, `separation` zero sites
// apart (>= 2 keeps the three-site windows from straddling two copies).
ConcatReport concat_approx_eigenvector(const ChainOperator& h, const PacketSpec& packet,
                                       int j, int separation,
                                       double drift_allowance = 0.0);

// Rayleigh quotient and residual of an arbitrary sparse state.
struct ResidualReport {
    double norm2 = 0.0;
    double rayleigh = 0.0;
    double residual = 0.0;
};
ResidualReport residual_report(const ChainOperator& h, const SparseState& v);

// --- spectral window scans ---

struct Window {
    double center = 0.0;
    double halfwidth = 0.0;
};

struct WindowHit {
    int window = 0;
    bool hit = false;
    double value = 0.0;  // closest spectral point when hit
};

std::vector<WindowHit> window_hits(const RealVector& spectrum,
                                   const std::vector<Window>& windows);

struct WindowScanRow {
    int n = 0;
    std::string method;
    std::vector<WindowHit> hits;
};

// Exact-spectrum scan for one chain length: plain dense diagonalization under
// the dense cap, translation sectors past it.
WindowScanRow dense_window_scan(const ChainOperator& h, const std::vector<Window>& windows);

}  // namespace unclelab
