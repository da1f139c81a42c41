#pragma once

#include "unclelab/mps_tensor.hpp"

namespace unclelab {

// Matrix realization of X -> sum_i A_i X B_i^dagger on column-major vec(X),
// X of shape cols(A) x cols(B) mapping to rows(A) x rows(B).
struct TransferOperator {
    Matrix matrix;
    Eigen::Index dim_a = 0;  // bond dimension of the upper tensor
    Eigen::Index dim_b = 0;  // bond dimension of the lower tensor

    Matrix apply(const Matrix& x) const;
};

TransferOperator transfer_operator(const MpsTensor& a, const MpsTensor& b);

double spectral_radius(const TransferOperator& e);

// Fixed-point data of a transfer operator E_t^t for a single tensor in (or
// near) standard form: identity right fixed point and positive left fixed
// point Lambda with unit trace.
struct CanonicalData {
    cd leading_eigenvalue;
    Matrix lambda;        // Hermitian, PSD, trace one
    double trace_lambda;  // trace of the stored lambda (one up to rounding)
};

CanonicalData fixed_points(const MpsTensor& t, double tol = 1e-8);

struct GaugeRecord {
    Matrix gauge;      // g with A -> g A g^{-1}
    Matrix gauge_inv;
    cd scale;          // multiplier applied to the input tensor
};

struct CanonicalizeResult {
    MpsTensor tensor;
    GaugeRecord record;
    CanonicalData data;
};

// Rescale and gauge an injective tensor so that E(1) = 1 and the left fixed
// point is positive with unit trace. Fails on non-injective input or a
// degenerate leading transfer eigenvalue.
CanonicalizeResult canonicalize(const MpsTensor& t, double tol = 1e-8);

// True when E(1)=1, leading eigenvalue 1 and Lambda >= 0 within tol.
bool is_standard_form(const MpsTensor& t, double tol = 1e-8);

}  // namespace unclelab
