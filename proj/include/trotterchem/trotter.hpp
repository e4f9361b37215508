#pragma once

// Product-formula evolution planning and execution, plus commutator-based
// digital error bounds. Group exponentials are computed densely (exact within
// a group); gate-level execution lives in circuit.hpp and the two paths are
// cross-checked in the test suite.

#include <cmath>
#include <stdexcept>
#include <vector>

#include "trotterchem/pauli.hpp"

namespace trotterchem {

enum class TrotterScheme { Regular, Symmetric };

struct TrotterPlan {
  TrotterScheme scheme = TrotterScheme::Regular;
  int steps = 1;
  double total_time = 0.0;
  std::vector<SpinHamiltonian> groups;  // ordered, non-overlapping, jointly exhaustive

  int n_qubits() const { return groups.empty() ? 0 : groups.front().n_qubits; }

  void validate() const {
    if (steps < 1) throw std::invalid_argument("step count must be >= 1");
    if (groups.empty()) throw std::invalid_argument("empty partition");
    if (!std::isfinite(total_time)) throw std::invalid_argument("non-finite total time");
    for (const SpinHamiltonian& g : groups)
      if (g.n_qubits != groups.front().n_qubits)
        throw std::invalid_argument("partition groups disagree on qubit count");
    if (scheme == TrotterScheme::Symmetric && groups.size() != 2)
      throw std::invalid_argument("symmetric scheme expects a two-group partition");
  }
};

inline TrotterPlan make_h2_plan(const SpinHamiltonian& h1, const SpinHamiltonian& h2,
                                TrotterScheme scheme, int steps, double total_time) {
  TrotterPlan p;
  p.scheme = scheme;
  p.steps = steps;
  p.total_time = total_time;
  p.groups = {h1, h2};
  p.validate();
  return p;
}

// Applies each group's exact exponential in group order, `steps` times; the
// symmetric scheme brackets the second group with half-steps of the first.
inline StateVector trotter_evolve(const TrotterPlan& plan, const StateVector& state) {
  plan.validate();
  const double tau = plan.total_time / plan.steps;
  std::vector<HermitianEvolver> evolvers;
  evolvers.reserve(plan.groups.size());
  for (const SpinHamiltonian& g : plan.groups) evolvers.emplace_back(dense(g));

  StateVector psi = state;
  if (plan.scheme == TrotterScheme::Regular) {
    for (int s = 0; s < plan.steps; ++s)
      for (const HermitianEvolver& ev : evolvers) psi = ev.evolve(tau, psi);
  } else {
    for (int s = 0; s < plan.steps; ++s) {
      psi = evolvers[0].evolve(tau / 2, psi);
      psi = evolvers[1].evolve(tau, psi);
      psi = evolvers[0].evolve(tau / 2, psi);
    }
  }
  return psi;
}

namespace detail {

inline double spectral_norm(const Matrix& m) {
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

}  // namespace detail

// Commutator-based upper bound on the digitization error.
//   regular:   || sum_{i>j} [H_i, H_j] || t^2 / (2 l)
//   symmetric: (||[H2,[H2,H1]]||/12 + ||[H1,[H1,H2]]||/24) t^3 / l^2
inline double digital_error_bound(const TrotterPlan& plan) {
  plan.validate();
  const double t = std::abs(plan.total_time);
  std::vector<Matrix> hs;
  hs.reserve(plan.groups.size());
  for (const SpinHamiltonian& g : plan.groups) hs.push_back(dense(g).mat);

  if (plan.scheme == TrotterScheme::Regular) {
    Matrix sum = Matrix::Zero(hs[0].rows(), hs[0].cols());
    for (size_t i = 0; i < hs.size(); ++i)
      for (size_t j = 0; j < i; ++j) sum += hs[i] * hs[j] - hs[j] * hs[i];
    return detail::spectral_norm(sum) * t * t / (2.0 * plan.steps);
  }
  const Matrix& h1 = hs[0];
  const Matrix& h2 = hs[1];
  Matrix c12 = h2 * h1 - h1 * h2;
  double c = detail::spectral_norm(h2 * c12 - c12 * h2) / 12.0 +
             detail::spectral_norm(h1 * (-c12) - (-c12) * h1) / 24.0;
  return c * t * t * t / (double(plan.steps) * plan.steps);
}

enum class ErrorObservable { ExactFidelity, Bound };

// 1 - F against the dense oracle, or the commutator bound.
inline double empirical_digital_error(const TrotterPlan& plan, const StateVector& state,
                                      ErrorObservable observable) {
  if (observable == ErrorObservable::Bound) return digital_error_bound(plan);
  plan.validate();
  SpinHamiltonian total;
  total.n_qubits = plan.n_qubits();
  for (const SpinHamiltonian& g : plan.groups)
    total.terms.insert(total.terms.end(), g.terms.begin(), g.terms.end());
  StateVector exact = exact_evolve(dense(total), plan.total_time, state);
  StateVector approx = trotter_evolve(plan, state);
  return 1.0 - fidelity(exact, approx);
}

}  // namespace trotterchem
