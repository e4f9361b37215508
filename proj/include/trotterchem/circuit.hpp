#pragma once

// Gate-level IR on the four-qubit register and the compilation pipeline:
// reference step emission, entangler decomposition, axis rebasing with
// inverse-pair cancellation, and nearest-neighbour routing on a fixed linear
// schedule with the 3<->4 logical relabeling.
//
// Every gate is exp(-i * angle * G) for its generator G:
//   RZ, R, UD : G = sigma_z on the target          (single-qubit rotations)
//   RY        : G = sigma_y on the target
//   ZZ        : G = sigma_z sigma_z on the pair
//   XX, XXFixed : G = sigma_x sigma_x on the pair
//   MS        : G = (sum_i sigma_x_i)^2 on all four qubits
//   Swap      : the 4x4 swap permutation (no angle)
// R and UD are physically RZ; the distinct kinds keep the roles of the
// per-orbital phase gates and the conjugation-frame intermediates visible.

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "trotterchem/fermion_map.hpp"
#include "trotterchem/pauli.hpp"

namespace trotterchem {

enum class GateKind { RZ, RY, R, ZZ, XX, XXFixed, MS, Swap, UD };

inline bool is_single_qubit(GateKind k) {
  return k == GateKind::RZ || k == GateKind::RY || k == GateKind::R || k == GateKind::UD;
}
inline bool is_two_qubit(GateKind k) {
  return k == GateKind::ZZ || k == GateKind::XX || k == GateKind::XXFixed || k == GateKind::Swap;
}
inline bool is_xx_family(GateKind k) { return k == GateKind::XX || k == GateKind::XXFixed; }
inline bool is_z_diagonal(GateKind k) {
  return k == GateKind::RZ || k == GateKind::R || k == GateKind::UD || k == GateKind::ZZ;
}

struct Gate {
  GateKind kind;
  std::vector<int> targets;  // 1-based; pairs stored with lower index first
  double angle = 0.0;

  static Gate single(GateKind k, int q, double angle) {
    if (!is_single_qubit(k)) throw std::invalid_argument("not a single-qubit kind");
    return Gate{k, {q}, angle};
  }
  static Gate pair(GateKind k, int a, int b, double angle = 0.0) {
    if (!is_two_qubit(k)) throw std::invalid_argument("not a two-qubit kind");
    if (a == b) throw std::invalid_argument("degenerate pair gate");
    if (a > b) std::swap(a, b);
    return Gate{k, {a, b}, angle};
  }
  static Gate ms(double angle) { return Gate{GateKind::MS, {1, 2, 3, 4}, angle}; }
};

struct GateCounts {
  long xx_two_qubit = 0;
  long swap = 0;
  long single_qubit = 0;
  long ms_multiqubit = 0;
};

struct Circuit {
  int n_qubits = 4;
  std::vector<Gate> gates;
  // logical_to_physical[l-1] = physical wire of logical qubit l at the step
  // boundary. The default swaps the labels of the third and fourth wires.
  std::array<int, 4> logical_to_physical{1, 2, 4, 3};
  bool routed = false;  // when set, gate targets are physical wire positions
};

struct ErrorBudget {
  double eps_2q = 0.0;
  GateCounts counts;  // per Trotter step
  int steps = 1;
  double digital = 0.0;

  double total() const {
    return digital + double(steps) * double(counts.xx_two_qubit + counts.swap) * eps_2q;
  }
};

// ---------------------------------------------------------------------------
// Coefficient tables of the reference step
// ---------------------------------------------------------------------------

inline std::array<double, 4> single_qubit_phases(const ReducedCoefficients& c) {
  return {4 * c.h11 + 2 * c.hA + 4 * c.hC - c.hD, 4 * c.h22 + 2 * c.hA + 4 * c.hC - c.hD,
          4 * c.h33 + 2 * c.hB + 4 * c.hC - c.hD, 4 * c.h44 + 2 * c.hB + 4 * c.hC - c.hD};
}

inline double pair_phase(const ReducedCoefficients& c, int i, int j) {
  if (i > j) std::swap(i, j);
  if (i == 1 && j == 2) return 2 * c.hA;
  if (i == 1 && j == 3) return 2 * c.hC - c.hD;
  if (i == 1 && j == 4) return 2 * c.hC;
  if (i == 2 && j == 3) return 2 * c.hC;
  if (i == 2 && j == 4) return 2 * c.hC - c.hD;
  if (i == 3 && j == 4) return 2 * c.hB;
  throw std::invalid_argument("invalid qubit pair");
}

// ---------------------------------------------------------------------------
// Dense gate matrices
// ---------------------------------------------------------------------------

namespace detail {

inline Matrix expm_hermitian(const Matrix& h, double scale) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  Matrix d = Matrix::Zero(h.rows(), h.cols());
  for (long i = 0; i < h.rows(); ++i) d(i, i) = std::exp(cx(0, -scale * es.eigenvalues()(i)));
  return es.eigenvectors() * d * es.eigenvectors().adjoint();
}

}  // namespace detail

// The small unitary block of a gate (2x2, 4x4, or 16x16 for the multiqubit
// entangler).
inline Matrix gate_matrix(const Gate& g) {
  switch (g.kind) {
    case GateKind::RZ:
    case GateKind::R:
    case GateKind::UD:
      return detail::expm_hermitian(pauli_z(), g.angle);
    case GateKind::RY:
      return detail::expm_hermitian(pauli_y(), g.angle);
    case GateKind::ZZ:
      return detail::expm_hermitian(kron(pauli_z(), pauli_z()), g.angle);
    case GateKind::XX:
    case GateKind::XXFixed:
      return detail::expm_hermitian(kron(pauli_x(), pauli_x()), g.angle);
    case GateKind::Swap: {
      Matrix m = Matrix::Zero(4, 4);
      m(0, 0) = m(1, 2) = m(2, 1) = m(3, 3) = 1.0;
      return m;
    }
    case GateKind::MS: {
      Matrix sx = Matrix::Zero(16, 16);
      for (int q = 1; q <= 4; ++q) {
        PauliString s(4, 'I');
        s[q - 1] = 'X';
        sx += dense_pauli(s);
      }
      return detail::expm_hermitian(sx * sx, g.angle);
    }
  }
  throw std::logic_error("unknown gate kind");
}

// Convenience constructors with the coefficient tables resolved; the global
// 1/8 normalization of the spin Hamiltonian is folded into the angles here.
inline Gate make_r_gate(int q, const ReducedCoefficients& c, double tau) {
  return Gate::single(GateKind::R, q, single_qubit_phases(c)[q - 1] * tau / 8.0);
}
inline Gate make_zz_gate(int i, int j, const ReducedCoefficients& c, double tau) {
  return Gate::pair(GateKind::ZZ, i, j, pair_phase(c, i, j) * tau / 8.0);
}
inline Gate make_ud_gate(int q, const ReducedCoefficients& c, double tau, int sign) {
  return Gate::single(GateKind::UD, q, sign * 2.0 * c.hD * tau / 8.0);
}

// ---------------------------------------------------------------------------
// Dense circuit unitary
// ---------------------------------------------------------------------------

inline Matrix circuit_unitary(const Circuit& circ) {
  const long dim = 1L << circ.n_qubits;
  Matrix u = Matrix::Identity(dim, dim);
  HybridRegister reg(circ.n_qubits);
  for (const Gate& g : circ.gates) {
    Matrix small = gate_matrix(g);
    // Embed on targets via the register strides.
    const int k = static_cast<int>(g.targets.size());
    const long sub = 1L << k;
    std::vector<long> strides(k);
    for (int a = 0; a < k; ++a) strides[a] = reg.qubit_stride(g.targets[a]);
    Matrix full = Matrix::Zero(dim, dim);
    for (long base = 0; base < dim; ++base) {
      bool anchor = true;
      for (int a = 0; a < k; ++a)
        if ((base / strides[a]) % 2 != 0) { anchor = false; break; }
      if (!anchor) continue;
      for (long r = 0; r < sub; ++r)
        for (long cidx = 0; cidx < sub; ++cidx) {
          long ri = base, ci = base;
          for (int a = 0; a < k; ++a) {
            if ((r >> (k - 1 - a)) & 1) ri += strides[a];
            if ((cidx >> (k - 1 - a)) & 1) ci += strides[a];
          }
          full(ri, ci) = small(r, cidx);
        }
    }
    u = full * u;
  }
  return u;
}

// Global-phase alignment: divide by the phase of the largest-magnitude
// element, then take the max-norm distance.
inline double unitary_distance_up_to_phase(const Matrix& a, const Matrix& b) {
  long ri = 0, ci = 0;
  double best = -1.0;
  for (long i = 0; i < a.rows(); ++i)
    for (long j = 0; j < a.cols(); ++j)
      if (std::abs(a(i, j)) > best) { best = std::abs(a(i, j)); ri = i; ci = j; }
  if (best <= 0 || std::abs(b(ri, ci)) == 0) return (a - b).cwiseAbs().maxCoeff();
  cx ph = b(ri, ci) / a(ri, ci);
  ph /= std::abs(ph);
  return (a * ph - b).cwiseAbs().maxCoeff();
}

// Permutation matrix carrying logical basis states onto physical wires.
inline Matrix relabel_matrix(const std::array<int, 4>& logical_to_physical) {
  Matrix p = Matrix::Zero(16, 16);
  for (long l = 0; l < 16; ++l) {
    long phys = 0;
    for (int q = 1; q <= 4; ++q) {
      long bit = (l >> (4 - q)) & 1;
      phys |= bit << (4 - logical_to_physical[q - 1]);
    }
    p(phys, l) = 1.0;
  }
  return p;
}

// Applies a circuit gate-by-gate to a state on a 4-qubit register.
inline StateVector apply_circuit(const Circuit& circ, const StateVector& state) {
  StateVector psi = state;
  for (const Gate& g : circ.gates) psi = apply_gate(psi, g.targets, gate_matrix(g));
  return psi;
}

// ---------------------------------------------------------------------------
// Reference Trotter step
// ---------------------------------------------------------------------------

namespace detail {

// One multiqubit-conjugation block: a sigma_z(pi/4) frame on `frame_qubit`
// around MS / intermediate z-rotation / inverse MS. Each block realizes one
// four-body term of the Hamiltonian.
inline void emit_conjugation_block(std::vector<Gate>& gates, int frame_qubit, int ud_qubit,
                                   int ud_sign, const ReducedCoefficients& c, double tau) {
  gates.push_back(Gate::single(GateKind::RZ, frame_qubit, M_PI / 4));
  gates.push_back(Gate::ms(-M_PI / 8));  // exp(+i pi/8 Sx^2)
  gates.push_back(make_ud_gate(ud_qubit, c, tau, ud_sign));
  gates.push_back(Gate::ms(M_PI / 8));  // exp(-i pi/8 Sx^2)
  gates.push_back(Gate::single(GateKind::RZ, frame_qubit, -M_PI / 4));
}

inline void emit_h1_gates(std::vector<Gate>& gates, const ReducedCoefficients& c, double tau) {
  for (int q = 1; q <= 4; ++q) gates.push_back(make_r_gate(q, c, tau));
  static const int pairs[6][2] = {{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}};
  for (auto& p : pairs) gates.push_back(make_zz_gate(p[0], p[1], c, tau));
}

inline void emit_h2_blocks(std::vector<Gate>& gates, const ReducedCoefficients& c, double tau) {
  // Frames on qubits 2 and 4; intermediates on qubits 1 and 3 with the
  // alternating sign pattern. Together the four blocks exponentiate the four
  // four-body terms exactly.
  emit_conjugation_block(gates, 2, 1, +1, c, tau);
  emit_conjugation_block(gates, 2, 3, -1, c, tau);
  emit_conjugation_block(gates, 4, 3, +1, c, tau);
  emit_conjugation_block(gates, 4, 1, -1, c, tau);
}

}  // namespace detail

// Emits the reference gate sequence of a single Trotter step: the four
// per-orbital phase rotations and six coupling gates (the commuting group),
// then the four multiqubit-conjugation blocks (the four-body group). The
// dense unitary equals exp(-i H2 tau') exp(-i H1 tau').
inline Circuit compile_trotter_step(const ReducedCoefficients& c, double tau,
                                    TrotterScheme scheme = TrotterScheme::Regular) {
  Circuit circ;
  if (scheme == TrotterScheme::Regular) {
    detail::emit_h1_gates(circ.gates, c, tau);
    detail::emit_h2_blocks(circ.gates, c, tau);
  } else {
    detail::emit_h1_gates(circ.gates, c, tau / 2);
    detail::emit_h2_blocks(circ.gates, c, tau);
    detail::emit_h1_gates(circ.gates, c, tau / 2);
  }
  return circ;
}

// ---------------------------------------------------------------------------
// Pass: multiqubit-gate decomposition
// ---------------------------------------------------------------------------

// Replaces each four-qubit entangler with its six two-qubit constituents,
// exp(±i pi/8 Sx^2) -> product of exp(±i pi/4 XX) over all pairs (global
// phase dropped). Forward entanglers emit pairs in ascending order, inverse
// ones in descending order, so an adjacent inverse pair cancels gate by gate.
inline Circuit decompose_ms(const Circuit& circ) {
  static const int asc[6][2] = {{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}};
  Circuit out;
  out.n_qubits = circ.n_qubits;
  out.logical_to_physical = circ.logical_to_physical;
  out.routed = circ.routed;
  for (const Gate& g : circ.gates) {
    if (g.kind != GateKind::MS) {
      out.gates.push_back(g);
      continue;
    }
    double xx_angle = 2.0 * g.angle;  // Sx^2 = 4 I + 2 sum_{i<j} X_i X_j
    if (g.angle < 0) {
      for (auto& p : asc) out.gates.push_back(Gate::pair(GateKind::XXFixed, p[0], p[1], xx_angle));
    } else {
      for (int k = 5; k >= 0; --k)
        out.gates.push_back(Gate::pair(GateKind::XXFixed, asc[k][0], asc[k][1], xx_angle));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Pass: axis rebasing and inverse-pair cancellation
// ---------------------------------------------------------------------------

namespace detail {

inline bool gates_commute(const Gate& a, const Gate& b) {
  bool disjoint = true;
  for (int x : a.targets)
    for (int y : b.targets)
      if (x == y) disjoint = false;
  if (disjoint) return true;
  if (is_xx_family(a.kind) && is_xx_family(b.kind)) return true;
  if (is_z_diagonal(a.kind) && is_z_diagonal(b.kind)) return true;
  if (a.kind == GateKind::RY && b.kind == GateKind::RY && a.targets == b.targets) return true;
  return false;
}

inline bool kinds_share_generator(GateKind a, GateKind b) {
  if (a == b) return true;
  // The z-rotation kinds are physically identical; so are the XX kinds.
  if (is_single_qubit(a) && is_single_qubit(b) && a != GateKind::RY && b != GateKind::RY)
    return true;
  if (is_xx_family(a) && is_xx_family(b)) return true;
  return false;
}

inline bool gates_inverse(const Gate& a, const Gate& b) {
  if (a.targets != b.targets) return false;
  if (a.kind == GateKind::Swap || b.kind == GateKind::Swap)
    return a.kind == GateKind::Swap && b.kind == GateKind::Swap;
  if (!kinds_share_generator(a.kind, b.kind)) return false;
  return std::abs(a.angle + b.angle) <= 1e-12 * std::max(1.0, std::abs(a.angle));
}

inline bool is_zero_angle(const Gate& g) {
  if (g.kind == GateKind::Swap) return false;
  return std::abs(g.angle) < 1e-15;
}

// Deletes adjacent gate/inverse pairs, where adjacency may look through any
// gates that commute with the candidate, until a fixed point. Zero-angle
// rotations are dropped first.
inline std::vector<Gate> cancel_to_fixed_point(std::vector<Gate> gates) {
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<Gate> kept;
    std::vector<bool> dead(gates.size(), false);
    for (size_t i = 0; i < gates.size(); ++i) {
      if (dead[i]) continue;
      if (is_zero_angle(gates[i])) {
        dead[i] = true;
        changed = true;
        continue;
      }
      for (size_t j = i + 1; j < gates.size(); ++j) {
        if (dead[j]) continue;
        if (gates_inverse(gates[i], gates[j])) {
          dead[i] = dead[j] = true;
          changed = true;
          break;
        }
        if (!gates_commute(gates[i], gates[j])) break;
      }
    }
    for (size_t i = 0; i < gates.size(); ++i)
      if (!dead[i]) kept.push_back(gates[i]);
    gates = std::move(kept);
  }
  return gates;
}

// Rewrites every maximal run of coupling (ZZ) gates into tunable XX gates
// inside one sigma_y(pi/4) frame over the run's support.
inline std::vector<Gate> rebase_zz_runs(const std::vector<Gate>& gates) {
  std::vector<Gate> out;
  size_t i = 0;
  while (i < gates.size()) {
    if (gates[i].kind != GateKind::ZZ) {
      out.push_back(gates[i]);
      ++i;
      continue;
    }
    size_t j = i;
    std::vector<int> support;
    while (j < gates.size() && gates[j].kind == GateKind::ZZ) {
      for (int q : gates[j].targets)
        if (std::find(support.begin(), support.end(), q) == support.end()) support.push_back(q);
      ++j;
    }
    std::sort(support.begin(), support.end());
    for (int q : support) out.push_back(Gate::single(GateKind::RY, q, M_PI / 4));
    for (size_t k = i; k < j; ++k)
      out.push_back(Gate::pair(GateKind::XX, gates[k].targets[0], gates[k].targets[1],
                               gates[k].angle));
    for (int q : support) out.push_back(Gate::single(GateKind::RY, q, -M_PI / 4));
    i = j;
  }
  return out;
}

}  // namespace detail

// Stage-c view: couplings conjugated into the XX axis, nothing cancelled yet.
inline Circuit rebase_zz(const Circuit& circ) {
  Circuit out;
  out.n_qubits = circ.n_qubits;
  out.logical_to_physical = circ.logical_to_physical;
  out.routed = circ.routed;
  out.gates = detail::rebase_zz_runs(circ.gates);
  return out;
}

// Conjugates couplings into the XX axis, then repeatedly deletes adjacent
// gate/inverse pairs until a fixed point. Unitary preserved up to global
// phase; gate count never increases past the rebase.
inline Circuit rebase_and_cancel(const Circuit& circ) {
  Circuit out = rebase_zz(circ);
  out.gates = detail::cancel_to_fixed_point(std::move(out.gates));
  return out;
}

// ---------------------------------------------------------------------------
// Pass: routing on the linear chain
// ---------------------------------------------------------------------------

namespace detail {

struct RoutingState {
  // content[p-1] = logical qubit currently on physical wire p.
  std::array<int, 4> content;

  explicit RoutingState(const std::array<int, 4>& logical_to_physical) {
    for (int l = 1; l <= 4; ++l) content[logical_to_physical[l - 1] - 1] = l;
  }
  int position_of(int logical) const {
    for (int p = 1; p <= 4; ++p)
      if (content[p - 1] == logical) return p;
    throw std::logic_error("routing state corrupt");
  }
  void swap_positions(int p) {  // swaps wires p and p+1
    std::swap(content[p - 1], content[p]);
  }
};

// The fixed swap tour of one six-slot network: three transpositions out,
// three back. Indices are the left wire of each transposition.
inline const std::vector<int>& full_tour() {
  static const std::vector<int> t = {2, 3, 2, 2, 3, 2};
  return t;
}
inline const std::vector<int>& half_tour() {
  static const std::vector<int> t = {2, 3, 2};
  return t;
}

// Schedules one run of mutually commuting two-qubit gates along a fixed swap
// tour, emitting each gate at the first slot where its pair is adjacent.
inline void schedule_run(std::vector<Gate>& out, RoutingState& st, std::vector<Gate> pending,
                         const std::vector<int>& tour) {
  auto place_ready = [&]() {
    for (auto it = pending.begin(); it != pending.end();) {
      int pa = st.position_of(it->targets[0]);
      int pb = st.position_of(it->targets[1]);
      if (std::abs(pa - pb) == 1) {
        Gate g = *it;
        g.targets = {std::min(pa, pb), std::max(pa, pb)};
        out.push_back(g);
        it = pending.erase(it);
      } else {
        ++it;
      }
    }
  };
  place_ready();
  for (int p : tour) {
    out.push_back(Gate::pair(GateKind::Swap, p, p + 1));
    st.swap_positions(p);
    place_ready();
  }
  if (!pending.empty())
    throw std::runtime_error("routing tour did not cover a required pair");
}

// Generic restore-style router: walks qubits together for one gate and swaps
// them back immediately. Non-normative fallback for circuits that do not
// match the transcribed schedule.
inline void greedy_route_gate(std::vector<Gate>& out, RoutingState& st, const Gate& g) {
  int pa = st.position_of(g.targets[0]);
  int pb = st.position_of(g.targets[1]);
  if (pa > pb) std::swap(pa, pb);
  std::vector<int> swaps;
  while (pb - pa > 1) {
    out.push_back(Gate::pair(GateKind::Swap, pb - 1, pb));
    st.swap_positions(pb - 1);
    swaps.push_back(pb - 1);
    --pb;
  }
  Gate placed = g;
  placed.targets = {pa, pb};
  out.push_back(placed);
  for (auto it = swaps.rbegin(); it != swaps.rend(); ++it) {
    out.push_back(Gate::pair(GateKind::Swap, *it, *it + 1));
    st.swap_positions(*it);
  }
}

}  // namespace detail

// True when every two-qubit gate of a routed circuit touches only adjacent
// wires.
inline bool all_two_qubit_adjacent(const Circuit& circ) {
  for (const Gate& g : circ.gates)
    if (is_two_qubit(g.kind) && std::abs(g.targets[0] - g.targets[1]) != 1) return false;
  return true;
}

// Non-normative generic router (restore-style), kept as an extra; its swap
// counts differ from the transcribed schedule.
inline Circuit route_linear_greedy(const Circuit& circ) {
  detail::RoutingState st(circ.logical_to_physical);
  Circuit out;
  out.n_qubits = circ.n_qubits;
  out.logical_to_physical = circ.logical_to_physical;
  out.routed = true;
  for (const Gate& g : circ.gates) {
    if (is_single_qubit(g.kind)) {
      Gate placed = g;
      placed.targets = {st.position_of(g.targets[0])};
      out.gates.push_back(placed);
    } else if (g.kind == GateKind::MS) {
      throw std::invalid_argument("cannot route an undecomposed multiqubit gate");
    } else {
      int pa = st.position_of(g.targets[0]);
      int pb = st.position_of(g.targets[1]);
      if (std::abs(pa - pb) == 1) {
        Gate placed = g;
        placed.targets = {std::min(pa, pb), std::max(pa, pb)};
        out.gates.push_back(placed);
      } else {
        detail::greedy_route_gate(out.gates, st, g);
      }
    }
  }
  return out;
}

// Routes on the fixed linear schedule. Runs of commuting two-qubit gates are
// laid onto transcribed swap tours: tunable-coupling runs and the outer
// entangler halves ride the full six-swap tour, the two inner halves ride the
// three-swap half tours whose permutations cancel. Everything else falls back
// to the generic restore-style router.
inline Circuit route_linear(const Circuit& circ) {
  if (circ.routed) throw std::invalid_argument("circuit is already routed");
  detail::RoutingState st(circ.logical_to_physical);
  Circuit out;
  out.n_qubits = circ.n_qubits;
  out.logical_to_physical = circ.logical_to_physical;
  out.routed = true;

  // Pre-scan: segment two-qubit runs exactly as the main loop does and mark
  // which entangler halves ride the half tour. Within each group of four
  // consecutive entangler-half runs, the middle two do.
  std::vector<int> run_class;  // 0 = full tour, 1 = half tour
  {
    size_t i = 0;
    std::vector<size_t> fixed_runs;
    while (i < circ.gates.size()) {
      const Gate& g = circ.gates[i];
      if (is_single_qubit(g.kind) || g.kind == GateKind::MS) {
        ++i;
        continue;
      }
      size_t j = i;
      while (j < circ.gates.size() && circ.gates[j].kind == g.kind) ++j;
      run_class.push_back(0);
      if (g.kind == GateKind::XXFixed) fixed_runs.push_back(run_class.size() - 1);
      i = j;
    }
    for (size_t g = 0; g + 3 < fixed_runs.size(); g += 4) {
      run_class[fixed_runs[g + 1]] = 1;
      run_class[fixed_runs[g + 2]] = 1;
    }
  }

  size_t i = 0;
  size_t run_idx = 0;
  while (i < circ.gates.size()) {
    const Gate& g = circ.gates[i];
    if (is_single_qubit(g.kind)) {
      Gate placed = g;
      placed.targets = {st.position_of(g.targets[0])};
      out.gates.push_back(placed);
      ++i;
      continue;
    }
    if (g.kind == GateKind::MS)
      throw std::invalid_argument("cannot route an undecomposed multiqubit gate");
    // Collect the run of same-kind two-qubit gates.
    size_t j = i;
    while (j < circ.gates.size() && circ.gates[j].kind == g.kind) ++j;
    std::vector<Gate> run(circ.gates.begin() + i, circ.gates.begin() + j);
    bool all_adjacent = true;
    for (const Gate& r : run) {
      int pa = st.position_of(r.targets[0]);
      int pb = st.position_of(r.targets[1]);
      if (std::abs(pa - pb) != 1) all_adjacent = false;
    }
    int cls = (run_idx < run_class.size()) ? run_class[run_idx] : 0;
    ++run_idx;
    if (all_adjacent) {
      for (const Gate& r : run) {
        int pa = st.position_of(r.targets[0]);
        int pb = st.position_of(r.targets[1]);
        Gate placed = r;
        placed.targets = {std::min(pa, pb), std::max(pa, pb)};
        out.gates.push_back(placed);
      }
    } else if (is_xx_family(g.kind)) {
      detail::schedule_run(out.gates, st, run,
                           cls == 1 ? detail::half_tour() : detail::full_tour());
    } else {
      for (const Gate& r : run) detail::greedy_route_gate(out.gates, st, r);
    }
    i = j;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Counting and error budget
// ---------------------------------------------------------------------------

// Tallies by kind; every z- or y-axis rotation counts as a single-qubit gate.
// Transitional ZZ couplings (present only before rebasing) are not XX gates
// and are left out of the XX tally.
inline GateCounts count_gates(const Circuit& circ) {
  GateCounts counts;
  for (const Gate& g : circ.gates) {
    if (is_single_qubit(g.kind))
      ++counts.single_qubit;
    else if (is_xx_family(g.kind))
      ++counts.xx_two_qubit;
    else if (g.kind == GateKind::Swap)
      ++counts.swap;
    else if (g.kind == GateKind::MS)
      ++counts.ms_multiqubit;
  }
  return counts;
}

inline double total_upper_bound(double digital, const GateCounts& counts, int steps,
                                double eps_2q) {
  if (!(eps_2q >= 0.0 && eps_2q <= 1.0))
    throw std::invalid_argument("two-qubit error rate must lie in [0, 1]");
  return digital + double(steps) * double(counts.xx_two_qubit + counts.swap) * eps_2q;
}

// Solves digital_sym + l*n_sym*eps = digital_reg + l*n_reg*eps. Returns the
// crossing only when it is positive; left of it the symmetric bound is
// smaller.
inline std::optional<double> crossing_eps(double digital_reg, double digital_sym, long n_reg,
                                          long n_sym, int steps) {
  double slope = double(steps) * double(n_sym - n_reg);
  if (slope <= 0.0) return std::nullopt;
  double eps = (digital_reg - digital_sym) / slope;
  if (!(eps > 0.0)) return std::nullopt;
  return eps;
}

// ---------------------------------------------------------------------------
// Export
// ---------------------------------------------------------------------------

inline const char* gate_kind_name(GateKind k) {
  switch (k) {
    case GateKind::RZ: return "RZ";
    case GateKind::RY: return "RY";
    case GateKind::R: return "R";
    case GateKind::ZZ: return "ZZ";
    case GateKind::XX: return "XX";
    case GateKind::XXFixed: return "XXFIXED";
    case GateKind::MS: return "MS";
    case GateKind::Swap: return "SWAP";
    case GateKind::UD: return "UD";
  }
  return "?";
}

inline std::string circuit_to_text(const Circuit& circ) {
  std::ostringstream os;
  char buf[64];
  for (const Gate& g : circ.gates) {
    os << gate_kind_name(g.kind) << ' ';
    for (size_t t = 0; t < g.targets.size(); ++t) {
      if (t) os << ',';
      os << g.targets[t];
    }
    std::snprintf(buf, sizeof(buf), "%.17g", g.angle);
    os << ' ' << buf << '\n';
  }
  return os.str();
}

}  // namespace trotterchem
