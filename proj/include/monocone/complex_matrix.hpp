#pragma once

// Dense complex linear algebra on dimensions 2, 4 and 8: tensor products,
// partial traces, Hermitian eigendecomposition, PSD square roots and the
// entropies built on top of them. Everything is stack-allocated; the largest
// matrix handled is 8x8.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "monocone/party.hpp"

namespace monocone {

using cplx = std::complex<double>;

namespace tol {
inline constexpr double kHermitian = 1e-12;       // max |M - M'| for a valid Hermitian matrix
inline constexpr double kUnitTrace = 1e-12;
inline constexpr double kEigenNoiseFloor = -1e-10;  // density-matrix eigenvalue clamp window
inline constexpr double kPsdSqrtFloor = -1e-8;
inline constexpr double kJacobiOff = 1e-13;         // off-diagonal norm at convergence
}  // namespace tol

class ComplexMatrix {
 public:
  explicit ComplexMatrix(int dim) : dim_(dim) {
    if (dim != 2 && dim != 4 && dim != 8)
      throw std::invalid_argument("ComplexMatrix: dimension must be 2, 4 or 8");
  }

  static ComplexMatrix identity(int dim) {
    ComplexMatrix m(dim);
    for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
  }

  int dim() const { return dim_; }

  cplx& operator()(int i, int j) { return a_[static_cast<size_t>(i * dim_ + j)]; }
  const cplx& operator()(int i, int j) const { return a_[static_cast<size_t>(i * dim_ + j)]; }

  ComplexMatrix adjoint() const {
    ComplexMatrix m(dim_);
    for (int i = 0; i < dim_; ++i)
      for (int j = 0; j < dim_; ++j) m(i, j) = std::conj((*this)(j, i));
    return m;
  }

  ComplexMatrix conjugate() const {
    ComplexMatrix m(dim_);
    for (int i = 0; i < dim_; ++i)
      for (int j = 0; j < dim_; ++j) m(i, j) = std::conj((*this)(i, j));
    return m;
  }

  cplx trace() const {
    cplx t = 0.0;
    for (int i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
  }

  double frobenius_norm() const {
    double s = 0.0;
    for (int i = 0; i < dim_ * dim_; ++i) s += std::norm(a_[static_cast<size_t>(i)]);
    return std::sqrt(s);
  }

  double hermiticity_error() const {
    double worst = 0.0;
    for (int i = 0; i < dim_; ++i)
      for (int j = i; j < dim_; ++j)
        worst = std::max(worst, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    return worst;
  }

  bool is_hermitian(double t = tol::kHermitian) const { return hermiticity_error() <= t; }

  friend ComplexMatrix operator+(const ComplexMatrix& x, const ComplexMatrix& y) {
    check_same_dim(x, y);
    ComplexMatrix m(x.dim_);
    for (int i = 0; i < x.dim_ * x.dim_; ++i)
      m.a_[static_cast<size_t>(i)] = x.a_[static_cast<size_t>(i)] + y.a_[static_cast<size_t>(i)];
    return m;
  }

  friend ComplexMatrix operator-(const ComplexMatrix& x, const ComplexMatrix& y) {
    check_same_dim(x, y);
    ComplexMatrix m(x.dim_);
    for (int i = 0; i < x.dim_ * x.dim_; ++i)
      m.a_[static_cast<size_t>(i)] = x.a_[static_cast<size_t>(i)] - y.a_[static_cast<size_t>(i)];
    return m;
  }

  friend ComplexMatrix operator*(const ComplexMatrix& x, const ComplexMatrix& y) {
    check_same_dim(x, y);
    ComplexMatrix m(x.dim_);
    for (int i = 0; i < x.dim_; ++i)
      for (int k = 0; k < x.dim_; ++k) {
        const cplx xik = x(i, k);
        if (xik == 0.0) continue;
        for (int j = 0; j < x.dim_; ++j) m(i, j) += xik * y(k, j);
      }
    return m;
  }

  friend ComplexMatrix operator*(cplx s, const ComplexMatrix& x) {
    ComplexMatrix m(x.dim_);
    for (int i = 0; i < x.dim_ * x.dim_; ++i)
      m.a_[static_cast<size_t>(i)] = s * x.a_[static_cast<size_t>(i)];
    return m;
  }

  friend ComplexMatrix operator*(const ComplexMatrix& x, cplx s) { return s * x; }

 private:
  static void check_same_dim(const ComplexMatrix& x, const ComplexMatrix& y) {
    if (x.dim_ != y.dim_) throw std::invalid_argument("ComplexMatrix: dimension mismatch");
  }

  int dim_;
  std::array<cplx, 64> a_{};
};

inline ComplexMatrix pauli_x() {
  ComplexMatrix m(2);
  m(0, 1) = 1.0;
  m(1, 0) = 1.0;
  return m;
}

inline ComplexMatrix pauli_y() {
  ComplexMatrix m(2);
  m(0, 1) = cplx(0.0, -1.0);
  m(1, 0) = cplx(0.0, 1.0);
  return m;
}

inline ComplexMatrix pauli_z() {
  ComplexMatrix m(2);
  m(0, 0) = 1.0;
  m(1, 1) = -1.0;
  return m;
}

/// tr(x * y) without forming the product.
inline cplx trace_product(const ComplexMatrix& x, const ComplexMatrix& y) {
  if (x.dim() != y.dim()) throw std::invalid_argument("trace_product: dimension mismatch");
  cplx t = 0.0;
  for (int i = 0; i < x.dim(); ++i)
    for (int j = 0; j < x.dim(); ++j) t += x(i, j) * y(j, i);
  return t;
}

/// Kronecker product; the left factor occupies the most significant bits.
inline ComplexMatrix tensor_product(const ComplexMatrix& left, const ComplexMatrix& right) {
  const int dl = left.dim();
  const int dr = right.dim();
  if (dl * dr > 8) throw std::invalid_argument("tensor_product: resulting dimension exceeds 8");
  ComplexMatrix m(dl * dr);
  for (int i = 0; i < dl; ++i)
    for (int j = 0; j < dl; ++j) {
      const cplx lij = left(i, j);
      for (int k = 0; k < dr; ++k)
        for (int l = 0; l < dr; ++l) m(i * dr + k, j * dr + l) = lij * right(k, l);
    }
  return m;
}

/// Hermitian unit-trace matrix. Positivity is not checked here; eigenvalues a
/// hair below zero are treated as rounding noise by the entropy routines.
class DensityMatrix {
 public:
  explicit DensityMatrix(ComplexMatrix m) : m_(std::move(m)) {
    if (m_.hermiticity_error() > tol::kHermitian)
      throw std::invalid_argument("DensityMatrix: matrix is not Hermitian");
    if (std::abs(m_.trace() - 1.0) > tol::kUnitTrace)
      throw std::invalid_argument("DensityMatrix: trace must be 1");
  }

  int dim() const { return m_.dim(); }
  const ComplexMatrix& matrix() const { return m_; }
  cplx operator()(int i, int j) const { return m_(i, j); }

 private:
  ComplexMatrix m_;
};

struct EigenSystem {
  std::vector<double> values;  // descending
  ComplexMatrix vectors;       // unitary; column k pairs with values[k]
};

namespace detail {

inline double offdiag_norm(const ComplexMatrix& m) {
  double s = 0.0;
  for (int i = 0; i < m.dim(); ++i)
    for (int j = 0; j < m.dim(); ++j)
      if (i != j) s += std::norm(m(i, j));
  return std::sqrt(s);
}

// One complex Jacobi rotation annihilating a(p, q). With pivot z = |z| u,
// tau = (a_qq - a_pp) / 2|z|, the inner 2x2 rotation uses the small root of
// t^2 - 2 tau t - 1 = 0, which keeps the rotation angle below pi/4.
inline void jacobi_rotate(ComplexMatrix& a, ComplexMatrix& v, int p, int q) {
  const cplx z = a(p, q);
  const double az = std::abs(z);
  if (az < 1e-300) {
    a(p, q) = 0.0;
    a(q, p) = 0.0;
    return;
  }
  const double app = std::real(a(p, p));
  const double aqq = std::real(a(q, q));
  const double tau = (aqq - app) / (2.0 * az);
  const double t = (tau >= 0.0 ? -1.0 : 1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const cplx u = z / az;
  const cplx s = t * c * std::conj(u);
  const cplx sbar = std::conj(s);
  const int n = a.dim();
  for (int k = 0; k < n; ++k) {  // A <- A U
    const cplx akp = a(k, p);
    const cplx akq = a(k, q);
    a(k, p) = c * akp + s * akq;
    a(k, q) = -sbar * akp + c * akq;
  }
  for (int k = 0; k < n; ++k) {  // A <- U' A
    const cplx apk = a(p, k);
    const cplx aqk = a(q, k);
    a(p, k) = c * apk + sbar * aqk;
    a(q, k) = -s * apk + c * aqk;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  a(p, p) = std::real(a(p, p));
  a(q, q) = std::real(a(q, q));
  for (int k = 0; k < n; ++k) {  // V <- V U
    const cplx vkp = v(k, p);
    const cplx vkq = v(k, q);
    v(k, p) = c * vkp + s * vkq;
    v(k, q) = -sbar * vkp + c * vkq;
  }
}

}  // namespace detail

/// Full eigendecomposition of a Hermitian matrix by cyclic complex Jacobi
/// sweeps. Converged when the off-diagonal Frobenius norm drops below
/// tol::kJacobiOff; the dimensions here (at most 8) converge in a handful of
/// sweeps. Eigenvalues are returned in descending order.
inline EigenSystem hermitian_eigensystem(const ComplexMatrix& m) {
  if (m.hermiticity_error() > tol::kHermitian)
    throw std::invalid_argument("hermitian_eigensystem: matrix is not Hermitian");
  const int n = m.dim();
  ComplexMatrix a = 0.5 * (m + m.adjoint());  // exact symmetrization
  ComplexMatrix v = ComplexMatrix::identity(n);
  constexpr int kMaxSweeps = 100;
  bool converged = false;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    if (detail::offdiag_norm(a) <= tol::kJacobiOff) {
      converged = true;
      break;
    }
    for (int p = 0; p < n - 1; ++p)
      for (int q = p + 1; q < n; ++q) detail::jacobi_rotate(a, v, p, q);
  }
  if (!converged && detail::offdiag_norm(a) > tol::kJacobiOff)
    throw std::runtime_error("hermitian_eigensystem: Jacobi sweeps did not converge");

  std::vector<int> order(static_cast<size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&a](int x, int y) { return std::real(a(x, x)) > std::real(a(y, y)); });

  EigenSystem es{std::vector<double>(static_cast<size_t>(n)), ComplexMatrix(n)};
  for (int k = 0; k < n; ++k) {
    es.values[static_cast<size_t>(k)] = std::real(a(order[static_cast<size_t>(k)], order[static_cast<size_t>(k)]));
    for (int i = 0; i < n; ++i) es.vectors(i, k) = v(i, order[static_cast<size_t>(k)]);
  }
  return es;
}

inline std::vector<double> hermitian_eigs(const ComplexMatrix& m) {
  return hermitian_eigensystem(m).values;
}

/// Square root of a positive semidefinite Hermitian matrix. Eigenvalues in
/// [tol::kPsdSqrtFloor, 0) are rounding noise and clamp to zero; anything more
/// negative is a genuine domain error.
inline ComplexMatrix psd_sqrt(const ComplexMatrix& m) {
  EigenSystem es = hermitian_eigensystem(m);
  const int n = m.dim();
  std::vector<double> roots(static_cast<size_t>(n));
  for (int k = 0; k < n; ++k) {
    const double lam = es.values[static_cast<size_t>(k)];
    if (lam < tol::kPsdSqrtFloor)
      throw std::domain_error("psd_sqrt: negative eigenvalue beyond tolerance");
    roots[static_cast<size_t>(k)] = std::sqrt(std::max(lam, 0.0));
  }
  ComplexMatrix out(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      cplx s = 0.0;
      for (int k = 0; k < n; ++k)
        s += es.vectors(i, k) * roots[static_cast<size_t>(k)] * std::conj(es.vectors(j, k));
      out(i, j) = s;
    }
  return out;
}

namespace detail {

// Trace out qubits of an n-qubit matrix, keeping the listed positions
// (0 = most significant). Kept qubits preserve their relative order.
inline ComplexMatrix reduce_qubits(const ComplexMatrix& m, int n, const std::vector<int>& keep) {
  const int k = static_cast<int>(keep.size());
  const int r = n - k;
  std::vector<int> traced;
  for (int q = 0; q < n; ++q)
    if (std::find(keep.begin(), keep.end(), q) == keep.end()) traced.push_back(q);

  const int dk = 1 << k;
  const int dt = 1 << r;
  const auto full_index = [&](int kept_bits, int traced_bits) {
    int idx = 0;
    for (int j = 0; j < k; ++j)
      idx |= ((kept_bits >> (k - 1 - j)) & 1) << (n - 1 - keep[static_cast<size_t>(j)]);
    for (int j = 0; j < r; ++j)
      idx |= ((traced_bits >> (r - 1 - j)) & 1) << (n - 1 - traced[static_cast<size_t>(j)]);
    return idx;
  };

  ComplexMatrix out(dk);
  for (int row = 0; row < dk; ++row)
    for (int col = 0; col < dk; ++col) {
      cplx s = 0.0;
      for (int t = 0; t < dt; ++t) s += m(full_index(row, t), full_index(col, t));
      out(row, col) = s;
    }
  return out;
}

}  // namespace detail

/// Partial trace of a three-qubit density matrix onto the kept parties.
inline DensityMatrix partial_trace(const DensityMatrix& rho, PartySet keep) {
  if (rho.dim() != 8) throw std::invalid_argument("partial_trace: expected an 8x8 density matrix");
  if (keep.empty() || keep.size() == 3)
    throw std::invalid_argument("partial_trace: keep must be a nonempty proper subset of {A,B,C}");
  std::vector<int> positions;
  for (Party p : keep.members()) positions.push_back(static_cast<int>(p));
  return DensityMatrix(detail::reduce_qubits(rho.matrix(), 3, positions));
}

/// Single-qubit marginal of a two-qubit density matrix. keep_position 0 keeps
/// the most significant qubit, 1 the least significant.
inline DensityMatrix pair_marginal(const DensityMatrix& rho, int keep_position) {
  if (rho.dim() != 4) throw std::invalid_argument("pair_marginal: expected a 4x4 density matrix");
  if (keep_position != 0 && keep_position != 1)
    throw std::invalid_argument("pair_marginal: keep_position must be 0 or 1");
  return DensityMatrix(detail::reduce_qubits(rho.matrix(), 2, {keep_position}));
}

/// Shannon entropy of {x, 1-x} in bits.
inline double binary_entropy(double x) {
  if (x < -1e-12 || x > 1.0 + 1e-12)
    throw std::domain_error("binary_entropy: argument outside [0, 1]");
  x = std::clamp(x, 0.0, 1.0);
  double s = 0.0;
  if (x > 0.0) s -= x * std::log2(x);
  if (x < 1.0) s -= (1.0 - x) * std::log2(1.0 - x);
  return std::max(0.0, s);
}

/// Von Neumann entropy in bits. Eigenvalues inside [tol::kEigenNoiseFloor, 0)
/// clamp to zero; anything below the floor means the input was not a state.
inline double von_neumann_entropy(const DensityMatrix& rho) {
  double s = 0.0;
  for (double lam : hermitian_eigs(rho.matrix())) {
    if (lam < tol::kEigenNoiseFloor)
      throw std::runtime_error("von_neumann_entropy: eigenvalue below the noise floor");
    if (lam > 0.0) s -= lam * std::log2(lam);
  }
  return std::max(0.0, s);
}

}  // namespace monocone
