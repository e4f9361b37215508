#pragma once

// Dense state-vector engine over hybrid registers: a row of qubits followed by
// a set of Fock-truncated bosonic modes. Everything here is exact (dense
// linear algebra); this module is the oracle the rest of the library is
// checked against.
//
// Conventions, shared by every module:
//   * qubit 1 is the leftmost (most significant) tensor factor; modes follow
//     the qubits in declared order, each in its own radix,
//   * the occupied qubit state |1> is the +1 eigenstate of sigma_z, so the
//     number operator is (sigma_z + 1)/2 and sigma_plus maps |0> -> |1>.

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "trotterchem/constants.hpp"

namespace trotterchem {

using cx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// ---------------------------------------------------------------------------
// Registers and states
// ---------------------------------------------------------------------------

struct HybridRegister {
  int n_qubits = 0;
  std::vector<int> mode_dims;  // Fock truncation per bosonic mode, each >= 1

  HybridRegister() = default;
  explicit HybridRegister(int nq, std::vector<int> dims = {})
      : n_qubits(nq), mode_dims(std::move(dims)) {
    if (n_qubits < 0) throw std::invalid_argument("negative qubit count");
    for (int d : mode_dims)
      if (d < 1) throw std::invalid_argument("mode dimension must be >= 1");
  }

  long total_dim() const {
    long dim = 1L << n_qubits;
    for (int d : mode_dims) dim *= d;
    return dim;
  }

  // Stride of qubit q (1-based) in the big-endian mixed-radix basis index.
  long qubit_stride(int q) const {
    check_qubit(q);
    long s = 1L << (n_qubits - q);
    for (int d : mode_dims) s *= d;
    return s;
  }

  // Stride of mode k (0-based).
  long mode_stride(int k) const {
    check_mode(k);
    long s = 1;
    for (int j = static_cast<int>(mode_dims.size()) - 1; j > k; --j) s *= mode_dims[j];
    return s;
  }

  void check_qubit(int q) const {
    if (q < 1 || q > n_qubits)
      throw std::out_of_range("qubit index " + std::to_string(q) + " out of range");
  }
  void check_mode(int k) const {
    if (k < 0 || k >= static_cast<int>(mode_dims.size()))
      throw std::out_of_range("mode index " + std::to_string(k) + " out of range");
  }

  bool operator==(const HybridRegister& o) const {
    return n_qubits == o.n_qubits && mode_dims == o.mode_dims;
  }
};

struct StateVector {
  HybridRegister reg;
  Vector amps;

  StateVector() = default;
  StateVector(HybridRegister r, Vector a) : reg(std::move(r)), amps(std::move(a)) {
    if (amps.size() != reg.total_dim())
      throw std::invalid_argument("amplitude vector does not match register dimension");
    check_norm();
  }

  void check_norm() const {
    if (std::abs(amps.norm() - 1.0) > kNormTol)
      throw std::runtime_error("state norm deviates from 1 beyond tolerance");
  }

  // Basis state |b_1 b_2 ... b_nq> ⊗ |n_1 ...>, qubit bits first.
  static StateVector basis(const HybridRegister& r, const std::vector<int>& qubit_bits,
                           const std::vector<int>& mode_levels = {}) {
    if (static_cast<int>(qubit_bits.size()) != r.n_qubits)
      throw std::invalid_argument("qubit bit pattern does not match register");
    std::vector<int> levels = mode_levels;
    if (levels.empty()) levels.assign(r.mode_dims.size(), 0);
    if (levels.size() != r.mode_dims.size())
      throw std::invalid_argument("mode level pattern does not match register");
    long idx = 0;
    for (int q = 1; q <= r.n_qubits; ++q) {
      int b = qubit_bits[q - 1];
      if (b != 0 && b != 1) throw std::invalid_argument("qubit bit must be 0 or 1");
      idx += b * r.qubit_stride(q);
    }
    for (size_t k = 0; k < levels.size(); ++k) {
      if (levels[k] < 0 || levels[k] >= r.mode_dims[k])
        throw std::invalid_argument("mode level out of range");
      idx += levels[k] * r.mode_stride(static_cast<int>(k));
    }
    Vector a = Vector::Zero(r.total_dim());
    a(idx) = 1.0;
    StateVector s;
    s.reg = r;
    s.amps = std::move(a);
    return s;
  }
};

struct DenseOperator {
  HybridRegister reg;
  Matrix mat;

  bool is_hermitian(double tol = kHermTol) const {
    return (mat - mat.adjoint()).cwiseAbs().maxCoeff() <= tol;
  }
  bool is_unitary(double tol = kUnitaryTol) const {
    Matrix d = mat.adjoint() * mat - Matrix::Identity(mat.rows(), mat.cols());
    return d.cwiseAbs().maxCoeff() <= tol;
  }
};

// ---------------------------------------------------------------------------
// Elementary matrices
// ---------------------------------------------------------------------------

// Pauli matrices in the occupied = +1 convention (amplitude index 0 <-> |0>).
inline const Matrix& pauli_x() {
  static const Matrix m = [] {
    Matrix x(2, 2);
    x << 0, 1, 1, 0;
    return x;
  }();
  return m;
}
inline const Matrix& pauli_y() {
  static const Matrix m = [] {
    Matrix y(2, 2);
    y << 0, cx(0, 1), cx(0, -1), 0;
    return y;
  }();
  return m;
}
inline const Matrix& pauli_z() {
  static const Matrix m = [] {
    Matrix z(2, 2);
    z << -1, 0, 0, 1;
    return z;
  }();
  return m;
}
inline const Matrix& pauli_i() {
  static const Matrix m = Matrix::Identity(2, 2);
  return m;
}

// Truncated lowering operator, <n|b|n+1> = sqrt(n+1).
inline Matrix boson_lower(int d) {
  Matrix b = Matrix::Zero(d, d);
  for (int n = 0; n + 1 < d; ++n) b(n, n + 1) = std::sqrt(double(n + 1));
  return b;
}

// ---------------------------------------------------------------------------
// Gate application
// ---------------------------------------------------------------------------

// Applies a small unitary on the given qubit targets (1-based, distinct) and
// identity elsewhere. Modes are never gate targets.
inline StateVector apply_gate(const StateVector& state, const std::vector<int>& targets,
                              const Matrix& u) {
  const HybridRegister& r = state.reg;
  const int k = static_cast<int>(targets.size());
  const long sub = 1L << k;
  if (u.rows() != sub || u.cols() != sub)
    throw std::invalid_argument("gate dimension does not match target count");
  for (size_t a = 0; a < targets.size(); ++a) {
    r.check_qubit(targets[a]);
    for (size_t b = a + 1; b < targets.size(); ++b)
      if (targets[a] == targets[b]) throw std::invalid_argument("duplicate gate targets");
  }
  Matrix uu = u.adjoint() * u - Matrix::Identity(sub, sub);
  if (uu.cwiseAbs().maxCoeff() > kUnitaryTol)
    throw std::invalid_argument("gate matrix is not unitary");

  std::vector<long> strides(k);
  for (int a = 0; a < k; ++a) strides[a] = r.qubit_stride(targets[a]);

  const long dim = r.total_dim();
  Vector out = state.amps;
  std::vector<cx> gathered(sub);
  // Visit each index whose target bits are all zero; it anchors one 2^k block.
  for (long base = 0; base < dim; ++base) {
    bool anchor = true;
    for (int a = 0; a < k; ++a)
      if ((base / strides[a]) % 2 != 0) {
        anchor = false;
        break;
      }
    if (!anchor) continue;
    for (long s = 0; s < sub; ++s) {
      long idx = base;
      for (int a = 0; a < k; ++a)
        if ((s >> (k - 1 - a)) & 1) idx += strides[a];
      gathered[s] = state.amps(idx);
    }
    for (long srow = 0; srow < sub; ++srow) {
      cx acc = 0;
      for (long scol = 0; scol < sub; ++scol) acc += u(srow, scol) * gathered[scol];
      long idx = base;
      for (int a = 0; a < k; ++a)
        if ((srow >> (k - 1 - a)) & 1) idx += strides[a];
      out(idx) = acc;
    }
  }
  StateVector result;
  result.reg = r;
  result.amps = std::move(out);
  result.check_norm();
  return result;
}

// ---------------------------------------------------------------------------
// Hybrid operator terms and dense construction
// ---------------------------------------------------------------------------

enum class BosonOp { Lower, Raise, Number, Position };  // b, b†, b†b, b†+b

struct HybridTerm {
  cx coeff{1.0, 0.0};
  std::vector<std::pair<int, char>> qubit_axes;   // (qubit 1-based, axis in {X,Y,Z})
  std::vector<std::pair<int, BosonOp>> mode_ops;  // (mode 0-based, factor)
};

inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (long i = 0; i < a.rows(); ++i)
    for (long j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline const Matrix& axis_matrix(char axis) {
  switch (axis) {
    case 'I': return pauli_i();
    case 'X': return pauli_x();
    case 'Y': return pauli_y();
    case 'Z': return pauli_z();
  }
  throw std::invalid_argument(std::string("unknown Pauli axis '") + axis + "'");
}

// Dense realization of a weighted sum of hybrid terms.
inline DenseOperator build_dense(const std::vector<HybridTerm>& terms, const HybridRegister& r) {
  const long dim = r.total_dim();
  Matrix h = Matrix::Zero(dim, dim);
  for (const HybridTerm& t : terms) {
    if (!std::isfinite(t.coeff.real()) || !std::isfinite(t.coeff.imag()))
      throw std::invalid_argument("non-finite term coefficient");
    std::vector<Matrix> qfac(r.n_qubits, pauli_i());
    for (auto [q, axis] : t.qubit_axes) {
      r.check_qubit(q);
      qfac[q - 1] = qfac[q - 1] * axis_matrix(axis);
    }
    std::vector<Matrix> mfac;
    for (size_t k = 0; k < r.mode_dims.size(); ++k)
      mfac.push_back(Matrix::Identity(r.mode_dims[k], r.mode_dims[k]));
    for (auto [k, op] : t.mode_ops) {
      r.check_mode(k);
      Matrix b = boson_lower(r.mode_dims[k]);
      Matrix f;
      switch (op) {
        case BosonOp::Lower: f = b; break;
        case BosonOp::Raise: f = b.adjoint(); break;
        case BosonOp::Number: f = b.adjoint() * b; break;
        case BosonOp::Position: f = b.adjoint() + b; break;
      }
      mfac[k] = mfac[k] * f;
    }
    Matrix m = Matrix::Identity(1, 1);
    for (const Matrix& f : qfac) m = kron(m, f);
    for (const Matrix& f : mfac) m = kron(m, f);
    h += t.coeff * m;
  }
  return DenseOperator{r, std::move(h)};
}

// ---------------------------------------------------------------------------
// Exact evolution, expectation, fidelity
// ---------------------------------------------------------------------------

// Exponentiates a Hermitian operator once and evolves for arbitrary times.
class HermitianEvolver {
 public:
  explicit HermitianEvolver(const DenseOperator& h) : reg_(h.reg) {
    if (!h.is_hermitian())
      throw std::invalid_argument("evolution generator is not Hermitian");
    Eigen::SelfAdjointEigenSolver<Matrix> es(h.mat);
    if (es.info() != Eigen::Success) throw std::runtime_error("eigendecomposition failed");
    evals_ = es.eigenvalues();
    evecs_ = es.eigenvectors();
  }

  StateVector evolve(double t, const StateVector& state) const {
    if (!(state.reg == reg_)) throw std::invalid_argument("state register mismatch");
    if (!std::isfinite(t)) throw std::invalid_argument("non-finite time");
    Vector y = evecs_.adjoint() * state.amps;
    for (long i = 0; i < y.size(); ++i) y(i) *= std::exp(cx(0, -evals_(i) * t));
    StateVector out;
    out.reg = reg_;
    out.amps = evecs_ * y;
    out.check_norm();
    return out;
  }

  Matrix unitary(double t) const {
    Vector ph(evals_.size());
    Matrix d = Matrix::Zero(evals_.size(), evals_.size());
    for (long i = 0; i < evals_.size(); ++i) d(i, i) = std::exp(cx(0, -evals_(i) * t));
    return evecs_ * d * evecs_.adjoint();
  }

  const Eigen::VectorXd& eigenvalues() const { return evals_; }

 private:
  HybridRegister reg_;
  Eigen::VectorXd evals_;
  Matrix evecs_;
};

inline StateVector exact_evolve(const DenseOperator& h, double t, const StateVector& state) {
  return HermitianEvolver(h).evolve(t, state);
}

inline double expectation(const StateVector& state, const DenseOperator& op) {
  if (!(state.reg == op.reg)) throw std::invalid_argument("operator register mismatch");
  if (!op.is_hermitian()) throw std::invalid_argument("expectation of non-Hermitian operator");
  cx v = state.amps.adjoint() * (op.mat * state.amps);
  if (std::abs(v.imag()) > kImagResidueTol)
    throw std::runtime_error("expectation value has imaginary residue beyond tolerance");
  return v.real();
}

inline double fidelity(const StateVector& a, const StateVector& b) {
  if (!(a.reg == b.reg)) throw std::invalid_argument("fidelity register mismatch");
  cx olap = a.amps.adjoint() * b.amps;
  return std::norm(olap);
}

}  // namespace trotterchem
