#include "unclelab/pauli.hpp"

namespace unclelab {

Matrix pauli_matrix(char label) {
    Matrix m(2, 2);
    switch (label) {
        case 'I':
            m << 1, 0, 0, 1;
            break;
        case 'X':
            m << 0, 1, 1, 0;
            break;
        case 'Y':
            m << 0, cd(0, -1), cd(0, 1), 0;
            break;
        case 'Z':
            m << 1, 0, 0, -1;
            break;
        default:
            throw DimensionError("pauli_matrix: label must be one of I, X, Y, Z");
    }
    return m;
}

PauliProduct pauli_product(char a, char b) {
    pauli_matrix(a);
    pauli_matrix(b);
    if (a == 'I') return {cd(1, 0), b};
    if (b == 'I') return {cd(1, 0), a};
    if (a == b) return {cd(1, 0), 'I'};
    // The remaining six cases cycle: XY = iZ, YZ = iX, ZX = iY, reversed with -i.
    auto next = [](char c) { return c == 'X' ? 'Y' : c == 'Y' ? 'Z' : 'X'; };
    if (next(a) == b) return {cd(0, 1), next(b)};
    return {cd(0, -1), next(a)};
}

PauliString operator*(const PauliString& a, const PauliString& b) {
    if (a.labels.size() != b.labels.size())
        throw DimensionError("PauliString product: length mismatch");
    PauliString out;
    out.coeff = a.coeff * b.coeff;
    out.labels.reserve(a.labels.size());
    for (size_t i = 0; i < a.labels.size(); ++i) {
        PauliProduct p = pauli_product(a.labels[i], b.labels[i]);
        out.coeff *= p.phase;
        out.labels.push_back(p.label);
    }
    return out;
}

Matrix pauli_dense(const PauliString& s) {
    if (s.labels.empty()) throw DimensionError("pauli_dense: empty string");
    Matrix m = pauli_matrix(s.labels[0]);
    for (size_t i = 1; i < s.labels.size(); ++i) m = kron(m, pauli_matrix(s.labels[i]));
    return s.coeff * m;
}

Matrix pauli_dense(const std::vector<PauliString>& terms) {
    if (terms.empty()) throw DimensionError("pauli_dense: empty sum");
    Matrix m = pauli_dense(terms[0]);
    for (size_t i = 1; i < terms.size(); ++i) {
        if (terms[i].labels.size() != terms[0].labels.size())
            throw DimensionError("pauli_dense: mixed string lengths");
        m += pauli_dense(terms[i]);
    }
    return m;
}

}  // namespace unclelab
