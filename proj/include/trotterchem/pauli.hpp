#pragma once

// Symbolic Pauli-string algebra and weighted-term Hamiltonians on qubit
// registers. The dense realizations delegate to hilbert.hpp and therefore
// share its sign conventions.

#include <complex>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "trotterchem/hilbert.hpp"

namespace trotterchem {

// A Pauli string is a per-qubit axis label, e.g. "ZZXI".
using PauliString = std::string;

struct WeightedPauli {
  cx weight{1.0, 0.0};
  PauliString axes;
};

inline void check_axes(const PauliString& s) {
  for (char c : s)
    if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z')
      throw std::invalid_argument("invalid Pauli axis in string " + s);
}

// Single-qubit product a*b -> (phase, axis) using sx sy = i sz and cyclic
// permutations.
inline std::pair<cx, char> axis_multiply(char a, char b) {
  if (a == 'I') return {1.0, b};
  if (b == 'I') return {1.0, a};
  if (a == b) return {1.0, 'I'};
  auto lev = [](char c) { return c == 'X' ? 0 : (c == 'Y' ? 1 : 2); };
  static const char out[3][3] = {{'I', 'Z', 'Y'}, {'Z', 'I', 'X'}, {'Y', 'X', 'I'}};
  int i = lev(a), j = lev(b);
  // epsilon_{abc}: XY=+iZ, YZ=+iX, ZX=+iY; reversed order flips the sign.
  cx phase = ((j - i + 3) % 3 == 1) ? cx(0, 1) : cx(0, -1);
  return {phase, out[i][j]};
}

inline WeightedPauli pauli_multiply(const WeightedPauli& a, const WeightedPauli& b) {
  if (a.axes.size() != b.axes.size())
    throw std::invalid_argument("Pauli string length mismatch");
  WeightedPauli out;
  out.weight = a.weight * b.weight;
  out.axes.resize(a.axes.size());
  for (size_t q = 0; q < a.axes.size(); ++q) {
    auto [ph, ax] = axis_multiply(a.axes[q], b.axes[q]);
    out.weight *= ph;
    out.axes[q] = ax;
  }
  return out;
}

// A real-weighted Pauli term of a Hermitian Hamiltonian.
struct PauliTerm {
  double coefficient = 0.0;
  PauliString axes;
};

// Weighted Pauli-term Hamiltonian; term order is part of the value (it fixes
// the product-formula sequence downstream).
struct SpinHamiltonian {
  int n_qubits = 0;
  std::vector<PauliTerm> terms;
  double scalar_offset = 0.0;
};

inline Matrix dense_pauli(const PauliString& s) {
  check_axes(s);
  Matrix m = Matrix::Identity(1, 1);
  for (char c : s) m = kron(m, axis_matrix(c));
  return m;
}

inline DenseOperator dense(const SpinHamiltonian& h, bool include_offset = false) {
  HybridRegister reg(h.n_qubits);
  const long dim = reg.total_dim();
  Matrix m = Matrix::Zero(dim, dim);
  for (const PauliTerm& t : h.terms) {
    if (static_cast<int>(t.axes.size()) != h.n_qubits)
      throw std::invalid_argument("term arity does not match Hamiltonian");
    m += cx(t.coefficient, 0.0) * dense_pauli(t.axes);
  }
  if (include_offset) m += cx(h.scalar_offset, 0.0) * Matrix::Identity(dim, dim);
  return DenseOperator{reg, std::move(m)};
}

inline SpinHamiltonian scale(const SpinHamiltonian& h, double factor) {
  SpinHamiltonian out = h;
  for (PauliTerm& t : out.terms) t.coefficient *= factor;
  out.scalar_offset *= factor;
  return out;
}

}  // namespace trotterchem
