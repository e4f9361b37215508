#pragma once

// Fermion-to-spin encoding for the four-orbital molecular Hamiltonian:
// Jordan-Wigner ladder operators, the generic expansion of the
// second-quantized Hamiltonian, the coefficient symmetry classes, and the
// closed-form fourteen-term spin Hamiltonian of the hydrogen molecule.

#include <array>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "trotterchem/pauli.hpp"

namespace trotterchem {

// ---------------------------------------------------------------------------
// Electronic integrals
// ---------------------------------------------------------------------------

// Sparse one- and two-body integral tables, 1-based orbital indices. Only the
// entries present in the map enter the fermionic operator; the hermiticity
// check applies to pairs that are both present.
struct ElectronicIntegrals {
  int n_orbitals = 0;
  std::map<std::array<int, 2>, double> one_body;        // (i,j) -> h_ij
  std::map<std::array<int, 4>, double> two_body;        // (i,j,k,l) -> h_ijkl

  void check_index(int i) const {
    if (i < 1 || i > n_orbitals)
      throw std::out_of_range("orbital index " + std::to_string(i) + " out of range");
  }

  void validate() const {
    for (const auto& [ij, v] : one_body) {
      check_index(ij[0]);
      check_index(ij[1]);
      if (!std::isfinite(v)) throw std::invalid_argument("non-finite one-body integral");
      auto it = one_body.find({ij[1], ij[0]});
      if (it != one_body.end() && std::abs(it->second - v) > kHermTol)
        throw std::invalid_argument("one-body integrals violate h_ij = h_ji");
    }
    for (const auto& [ijkl, v] : two_body) {
      for (int x : ijkl) check_index(x);
      if (!std::isfinite(v)) throw std::invalid_argument("non-finite two-body integral");
      auto it = two_body.find({ijkl[3], ijkl[2], ijkl[1], ijkl[0]});
      if (it != two_body.end() && std::abs(it->second - v) > kHermTol)
        throw std::invalid_argument("two-body integrals violate h_ijkl = h_lkji");
    }
  }
};

// ---------------------------------------------------------------------------
// Jordan-Wigner ladder operators
// ---------------------------------------------------------------------------

enum class LadderKind { Creation, Annihilation };

// c†_i = sz_1 ... sz_{i-1} s+_i, with s± = (sx ± i sy)/2. Returned as the
// two-string expansion: the X part with weight 1/2 and the Y part with ±i/2.
inline std::array<WeightedPauli, 2> jw_ladder(int i, int n, LadderKind kind) {
  if (i < 1 || i > n) throw std::out_of_range("ladder orbital index out of range");
  PauliString base(n, 'I');
  for (int q = 1; q < i; ++q) base[q - 1] = 'Z';
  WeightedPauli xpart{cx(0.5, 0.0), base};
  xpart.axes[i - 1] = 'X';
  WeightedPauli ypart{kind == LadderKind::Creation ? cx(0.0, 0.5) : cx(0.0, -0.5), base};
  ypart.axes[i - 1] = 'Y';
  return {xpart, ypart};
}

inline Matrix jw_ladder_dense(int i, int n, LadderKind kind) {
  auto parts = jw_ladder(i, n, kind);
  return parts[0].weight * dense_pauli(parts[0].axes) +
         parts[1].weight * dense_pauli(parts[1].axes);
}

// ---------------------------------------------------------------------------
// Generic mapping of the second-quantized Hamiltonian
// ---------------------------------------------------------------------------

namespace detail {

// Expands a product of ladder operators into collected Pauli strings.
inline void accumulate_ladder_product(std::map<PauliString, cx>& acc, cx prefactor,
                                      const std::vector<std::pair<int, LadderKind>>& ops, int n) {
  std::vector<WeightedPauli> expansion{WeightedPauli{prefactor, PauliString(n, 'I')}};
  for (auto [orb, kind] : ops) {
    auto parts = jw_ladder(orb, n, kind);
    std::vector<WeightedPauli> next;
    next.reserve(expansion.size() * 2);
    for (const WeightedPauli& w : expansion)
      for (const WeightedPauli& p : parts) next.push_back(pauli_multiply(w, p));
    expansion = std::move(next);
  }
  for (const WeightedPauli& w : expansion) acc[w.axes] += w.weight;
}

}  // namespace detail

// Expands sum_ij h_ij c†_i c_j + (1/2) sum_ijkl h_ijkl c†_i c†_j c_k c_l over
// the entries present in the tables, collects like strings, drops negligible
// weights and tracks the identity component as scalar_offset.
inline SpinHamiltonian map_electronic_to_spin(const ElectronicIntegrals& ints) {
  ints.validate();
  const int n = ints.n_orbitals;
  std::map<PauliString, cx> acc;
  std::vector<PauliString> order;  // first-appearance order of collected strings

  auto accumulate = [&](cx pref, const std::vector<std::pair<int, LadderKind>>& ops) {
    std::map<PauliString, cx> local;
    detail::accumulate_ladder_product(local, pref, ops, n);
    for (auto& [s, w] : local) {
      if (acc.find(s) == acc.end()) order.push_back(s);
      acc[s] += w;
    }
  };

  for (const auto& [ij, v] : ints.one_body)
    accumulate(cx(v, 0.0), {{ij[0], LadderKind::Creation}, {ij[1], LadderKind::Annihilation}});
  for (const auto& [ijkl, v] : ints.two_body)
    accumulate(cx(0.5 * v, 0.0), {{ijkl[0], LadderKind::Creation},
                                  {ijkl[1], LadderKind::Creation},
                                  {ijkl[2], LadderKind::Annihilation},
                                  {ijkl[3], LadderKind::Annihilation}});

  SpinHamiltonian h;
  h.n_qubits = n;
  const PauliString identity(n, 'I');
  for (const PauliString& s : order) {
    cx w = acc[s];
    if (std::abs(w) < kCoeffDropTol) continue;
    if (std::abs(w.imag()) > kCoeffImagTol)
      throw std::runtime_error("collected coefficient has complex residue on string " + s);
    if (s == identity)
      h.scalar_offset += w.real();
    else
      h.terms.push_back(PauliTerm{w.real(), s});
  }
  return h;
}

// ---------------------------------------------------------------------------
// Coefficient symmetry classes
// ---------------------------------------------------------------------------

struct ReducedCoefficients {
  double h11 = 0, h22 = 0, h33 = 0, h44 = 0;
  double hA = 0, hB = 0, hC = 0, hD = 0;
};

namespace detail {

using Quad = std::array<int, 4>;

inline const std::vector<Quad>& class_members(char cls) {
  static const std::vector<Quad> a = {{1, 2, 2, 1}, {2, 1, 1, 2}};
  static const std::vector<Quad> b = {{3, 4, 4, 3}, {4, 3, 3, 4}};
  static const std::vector<Quad> c = {{1, 3, 3, 1}, {3, 1, 1, 3}, {1, 4, 4, 1}, {4, 1, 1, 4},
                                      {2, 3, 3, 2}, {3, 2, 2, 3}, {2, 4, 4, 2}, {4, 2, 2, 4}};
  static const std::vector<Quad> d = {{1, 2, 4, 3}, {2, 1, 3, 4}, {1, 4, 2, 3}, {4, 1, 3, 2},
                                      {2, 3, 1, 4}, {3, 2, 4, 1}, {3, 4, 2, 1}, {4, 3, 1, 2},
                                      {1, 3, 1, 3}, {2, 4, 2, 4}};
  switch (cls) {
    case 'A': return a;
    case 'B': return b;
    case 'C': return c;
    case 'D': return d;
  }
  throw std::logic_error("unknown coefficient class");
}

inline double read_class(const ElectronicIntegrals& ints, char cls) {
  const auto& members = class_members(cls);
  double ref = 0;
  double lo = 0, hi = 0;
  bool first = true;
  for (const Quad& q : members) {
    auto it = ints.two_body.find(q);
    if (it == ints.two_body.end()) {
      std::ostringstream os;
      os << "missing two-body integral h_" << q[0] << q[1] << q[2] << q[3]
         << " required by class " << cls;
      throw std::invalid_argument(os.str());
    }
    double v = it->second;
    if (first) {
      ref = lo = hi = v;
      first = false;
    } else {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  double scale = std::max(1.0, std::abs(ref));
  if (hi - lo > kClassAgreeRelTol * scale) {
    std::ostringstream os;
    os << "coefficient class " << cls << " members disagree: spread " << (hi - lo)
       << " exceeds tolerance";
    throw std::invalid_argument(os.str());
  }
  return ref;
}

}  // namespace detail

// Reads the four symmetry classes and the orbital diagonal. Class members
// must agree within the fixed relative tolerance; disagreement is a data
// error, never averaged over.
inline ReducedCoefficients derive_reduced_coeffs(const ElectronicIntegrals& ints) {
  if (ints.n_orbitals != 4)
    throw std::invalid_argument("coefficient reduction requires exactly 4 orbitals");
  ints.validate();
  ReducedCoefficients rc;
  auto diag = [&](int i) {
    auto it = ints.one_body.find({i, i});
    if (it == ints.one_body.end())
      throw std::invalid_argument("missing one-body integral h_" + std::to_string(i) +
                                  std::to_string(i));
    return it->second;
  };
  rc.h11 = diag(1);
  rc.h22 = diag(2);
  rc.h33 = diag(3);
  rc.h44 = diag(4);
  rc.hA = detail::read_class(ints, 'A');
  rc.hB = detail::read_class(ints, 'B');
  rc.hC = detail::read_class(ints, 'C');
  rc.hD = detail::read_class(ints, 'D');
  return rc;
}

// ---------------------------------------------------------------------------
// Closed-form spin Hamiltonian of the hydrogen molecule
// ---------------------------------------------------------------------------

// Emits exactly fourteen terms in the canonical printed order: four sigma_z,
// six sigma_z sigma_z, four four-body terms. The order is frozen; it defines
// the gate sequence downstream.
inline SpinHamiltonian build_h2_spin_hamiltonian(const ReducedCoefficients& c) {
  SpinHamiltonian h;
  h.n_qubits = 4;
  auto add = [&](double w, const char* s) { h.terms.push_back(PauliTerm{w / 8.0, s}); };
  add(4 * c.h11 + 2 * c.hA + 4 * c.hC - c.hD, "ZIII");
  add(4 * c.h22 + 2 * c.hA + 4 * c.hC - c.hD, "IZII");
  add(4 * c.h33 + 2 * c.hB + 4 * c.hC - c.hD, "IIZI");
  add(4 * c.h44 + 2 * c.hB + 4 * c.hC - c.hD, "IIIZ");
  add(2 * c.hA, "ZZII");
  add(2 * c.hC - c.hD, "ZIZI");
  add(2 * c.hC, "ZIIZ");
  add(2 * c.hC, "IZZI");
  add(2 * c.hC - c.hD, "IZIZ");
  add(2 * c.hB, "IIZZ");
  add(2 * c.hD, "XYYX");
  add(2 * c.hD, "YXXY");
  add(-2 * c.hD, "XXYY");
  add(-2 * c.hD, "YYXX");
  return h;
}

// Splits the closed-form Hamiltonian into the ten mutually commuting
// single/double sigma_z terms and the four mutually commuting four-body
// terms, verifying commutation densely.
inline std::pair<SpinHamiltonian, SpinHamiltonian> partition_h2_terms(const SpinHamiltonian& h) {
  if (h.n_qubits != 4 || h.terms.size() != 14)
    throw std::invalid_argument("partition expects the 14-term closed-form Hamiltonian");
  SpinHamiltonian h1, h2;
  h1.n_qubits = h2.n_qubits = 4;
  h1.terms.assign(h.terms.begin(), h.terms.begin() + 10);
  h2.terms.assign(h.terms.begin() + 10, h.terms.end());
  h1.scalar_offset = h.scalar_offset;
  auto check_group = [](const SpinHamiltonian& g, const char* name) {
    for (size_t a = 0; a < g.terms.size(); ++a)
      for (size_t b = a + 1; b < g.terms.size(); ++b) {
        Matrix ma = dense_pauli(g.terms[a].axes);
        Matrix mb = dense_pauli(g.terms[b].axes);
        if ((ma * mb - mb * ma).cwiseAbs().maxCoeff() > kHermTol)
          throw std::runtime_error(std::string("terms of group ") + name +
                                   " do not commute; construction bug");
      }
  };
  check_group(h1, "H1");
  check_group(h2, "H2");
  return {std::move(h1), std::move(h2)};
}

}  // namespace trotterchem
