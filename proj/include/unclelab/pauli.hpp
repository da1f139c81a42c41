#pragma once

#include <string>
#include <vector>

#include "unclelab/linalg.hpp"

namespace unclelab {

// Tensor product of single-site operators from {I, X, Y, Z} with a complex
// coefficient, e.g. {0.5, "ZXZ"}.
struct PauliString {
    cd coeff{1.0, 0.0};
    std::string labels;
};

// 2x2 matrix of one label.
Matrix pauli_matrix(char label);

// Single-site product a * b = phase * c within the algebra.
struct PauliProduct {
    cd phase;
    char label;
};
PauliProduct pauli_product(char a, char b);

// Site-wise product of equal-length strings.
PauliString operator*(const PauliString& a, const PauliString& b);

// Dense 2^n matrix of one string (site 1 most significant).
Matrix pauli_dense(const PauliString& s);

// Dense matrix of a sum of strings; all strings must share one length.
Matrix pauli_dense(const std::vector<PauliString>& terms);

}  // namespace unclelab
