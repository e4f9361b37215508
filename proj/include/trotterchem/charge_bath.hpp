#pragma once

// Three-site electron transfer through a bosonic bath: the charge-bath model,
// its spin-bath form on a hybrid qubit-cavity register, the digital-analog
// block schedule, and population readout.

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "trotterchem/hilbert.hpp"

namespace trotterchem {

struct ChargeBathModel {
  std::array<double, 3> site_energies{};      // eps_j
  double hopping = 0.0;                       // uniform nearest-neighbour V
  std::vector<double> mode_freqs;             // omega_i > 0
  std::vector<std::array<double, 3>> couplings;  // lambda[i][j], mode x site

  void validate() const {
    if (mode_freqs.size() != couplings.size())
      throw std::invalid_argument("coupling matrix does not match mode count");
    for (double w : mode_freqs)
      if (!(w > 0)) throw std::invalid_argument("mode frequencies must be positive");
    for (const auto& row : couplings)
      for (double v : row)
        if (!std::isfinite(v)) throw std::invalid_argument("non-finite coupling");
  }
};

struct CavitySpec {
  double g0 = 0.0;
  int n_modes = 1;
  int truncation = 4;  // Fock levels per mode
  std::array<double, 3> beta{1.0, 1.0, 1.0};

  void validate() const {
    if (n_modes < 1) throw std::invalid_argument("need at least one cavity mode");
    if (truncation < 2) throw std::invalid_argument("Fock truncation must be >= 2");
    for (double b : beta)
      if (b < 0.0 || b > 1.0)
        throw std::invalid_argument("coupling multipliers must lie in [0, 1]");
  }
};

// Multimode couplings lambda_ij = beta_j * g0 * sqrt(i+1), mode index i
// starting at 0 for the fundamental.
inline std::vector<std::array<double, 3>> cavity_couplings(const CavitySpec& spec) {
  spec.validate();
  std::vector<std::array<double, 3>> lam(spec.n_modes);
  for (int i = 0; i < spec.n_modes; ++i)
    for (int j = 0; j < 3; ++j) lam[i][j] = spec.beta[j] * spec.g0 * std::sqrt(double(i + 1));
  return lam;
}

inline HybridRegister charge_bath_register(int n_modes, int truncation) {
  return HybridRegister(3, std::vector<int>(n_modes, truncation));
}

// Spin-bath form on 3 qubits + modes:
//   (1/2) sum eps_j sz_j - (V/2)(sx1 sx2 + sy1 sy2 + sx2 sx3 + sy2 sy3)
//   + sum omega_i n_i + sum (lambda_ij/2)(sz_j + 1)(b†_i + b_i).
inline std::vector<HybridTerm> map_charge_bath_to_spin(const ChargeBathModel& m) {
  m.validate();
  std::vector<HybridTerm> terms;
  for (int j = 1; j <= 3; ++j)
    terms.push_back(HybridTerm{cx(0.5 * m.site_energies[j - 1], 0), {{j, 'Z'}}, {}});
  for (int j = 1; j <= 2; ++j) {
    terms.push_back(HybridTerm{cx(-0.5 * m.hopping, 0), {{j, 'X'}, {j + 1, 'X'}}, {}});
    terms.push_back(HybridTerm{cx(-0.5 * m.hopping, 0), {{j, 'Y'}, {j + 1, 'Y'}}, {}});
  }
  for (size_t i = 0; i < m.mode_freqs.size(); ++i)
    terms.push_back(HybridTerm{cx(m.mode_freqs[i], 0), {}, {{int(i), BosonOp::Number}}});
  for (size_t i = 0; i < m.mode_freqs.size(); ++i)
    for (int j = 1; j <= 3; ++j) {
      double lam = m.couplings[i][j - 1];
      if (lam == 0.0) continue;
      terms.push_back(HybridTerm{cx(0.5 * lam, 0), {{j, 'Z'}}, {{int(i), BosonOp::Position}}});
      terms.push_back(HybridTerm{cx(0.5 * lam, 0), {}, {{int(i), BosonOp::Position}}});
    }
  return terms;
}

// One Trotter step of the digital-analog protocol, as ordered blocks of
// generator terms:
//   [0] digital qubit block: site energies and exchange, cavity decoupled,
//   [1..3] one analog block per qubit: a third of the free cavity energy
//          plus that qubit's sz-conditioned coupling,
//   [4] drive block: the scalar (lambda/2)(b†+b) remainder.
// Summed over one step the block generators reproduce the spin-bath
// Hamiltonian exactly once.
struct DigitalAnalogSchedule {
  int steps = 1;
  double total_time = 0.0;
  HybridRegister reg;
  std::vector<std::vector<HybridTerm>> blocks;
};

inline DigitalAnalogSchedule build_da_schedule(const ChargeBathModel& m, int truncation,
                                               int steps, double total_time) {
  m.validate();
  if (steps < 1) throw std::invalid_argument("step count must be >= 1");
  DigitalAnalogSchedule sched;
  sched.steps = steps;
  sched.total_time = total_time;
  sched.reg = charge_bath_register(static_cast<int>(m.mode_freqs.size()), truncation);

  std::vector<HybridTerm> qubit_block;
  for (int j = 1; j <= 3; ++j)
    qubit_block.push_back(HybridTerm{cx(0.5 * m.site_energies[j - 1], 0), {{j, 'Z'}}, {}});
  for (int j = 1; j <= 2; ++j) {
    qubit_block.push_back(HybridTerm{cx(-0.5 * m.hopping, 0), {{j, 'X'}, {j + 1, 'X'}}, {}});
    qubit_block.push_back(HybridTerm{cx(-0.5 * m.hopping, 0), {{j, 'Y'}, {j + 1, 'Y'}}, {}});
  }
  sched.blocks.push_back(std::move(qubit_block));

  for (int j = 1; j <= 3; ++j) {
    std::vector<HybridTerm> analog;
    for (size_t i = 0; i < m.mode_freqs.size(); ++i) {
      analog.push_back(
          HybridTerm{cx(m.mode_freqs[i] / 3.0, 0), {}, {{int(i), BosonOp::Number}}});
      double lam = m.couplings[i][j - 1];
      if (lam != 0.0)
        analog.push_back(HybridTerm{cx(0.5 * lam, 0), {{j, 'Z'}}, {{int(i), BosonOp::Position}}});
    }
    sched.blocks.push_back(std::move(analog));
  }

  std::vector<HybridTerm> drive;
  for (size_t i = 0; i < m.mode_freqs.size(); ++i) {
    double lam_sum = m.couplings[i][0] + m.couplings[i][1] + m.couplings[i][2];
    if (lam_sum != 0.0)
      drive.push_back(HybridTerm{cx(0.5 * lam_sum, 0), {}, {{int(i), BosonOp::Position}}});
  }
  sched.blocks.push_back(std::move(drive));
  return sched;
}

// Applies the block exponentials in order, `steps` times.
inline StateVector da_evolve(const DigitalAnalogSchedule& sched, const StateVector& state) {
  if (!(state.reg == sched.reg)) throw std::invalid_argument("state register mismatch");
  const double tau = sched.total_time / sched.steps;
  std::vector<Matrix> unitaries;
  for (const auto& block : sched.blocks) {
    if (block.empty()) continue;
    DenseOperator h = build_dense(block, sched.reg);
    unitaries.push_back(HermitianEvolver(h).unitary(tau));
  }
  StateVector psi = state;
  for (int s = 0; s < sched.steps; ++s)
    for (const Matrix& u : unitaries) {
      psi.amps = u * psi.amps;
    }
  psi.check_norm();
  return psi;
}

// P_j = <(sz_j + 1)/2>, the electron occupation of each site.
inline std::array<double, 3> site_populations(const StateVector& state) {
  if (state.reg.n_qubits != 3)
    throw std::invalid_argument("site populations need a 3-qubit hybrid register");
  std::array<double, 3> p{};
  for (int j = 1; j <= 3; ++j) {
    const long stride = state.reg.qubit_stride(j);
    double occ = 0.0;
    for (long idx = 0; idx < state.reg.total_dim(); ++idx)
      if ((idx / stride) % 2 == 1) occ += std::norm(state.amps(idx));
    p[j - 1] = occ;
  }
  return p;
}

}  // namespace trotterchem
