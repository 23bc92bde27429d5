#pragma once

// Shared test utilities: random matrices, independent eigenvalue and
// measurement-minimum oracles, and a two-sample Kolmogorov-Smirnov test.

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "monocone/bipartite.hpp"
#include "monocone/complex_matrix.hpp"
#include "monocone/rng.hpp"
#include "monocone/states.hpp"

namespace testutil {

using monocone::ComplexMatrix;
using monocone::cplx;
using monocone::DensityMatrix;
using monocone::RngStream;

inline ComplexMatrix random_gaussian_matrix(int dim, RngStream& rng) {
  ComplexMatrix m(dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      const auto [re, im] = rng.next_gaussian_pair();
      m(i, j) = cplx(re, im);
    }
  return m;
}

inline ComplexMatrix random_hermitian(int dim, RngStream& rng) {
  const ComplexMatrix g = random_gaussian_matrix(dim, rng);
  return 0.5 * (g + g.adjoint());
}

// Gram-Schmidt on Gaussian columns gives a Haar-distributed unitary.
inline ComplexMatrix random_unitary(int dim, RngStream& rng) {
  ComplexMatrix g = random_gaussian_matrix(dim, rng);
  for (int c = 0; c < dim; ++c) {
    for (int prev = 0; prev < c; ++prev) {
      cplx overlap = 0.0;
      for (int r = 0; r < dim; ++r) overlap += std::conj(g(r, prev)) * g(r, c);
      for (int r = 0; r < dim; ++r) g(r, c) -= overlap * g(r, prev);
    }
    double n2 = 0.0;
    for (int r = 0; r < dim; ++r) n2 += std::norm(g(r, c));
    const double inv = 1.0 / std::sqrt(n2);
    for (int r = 0; r < dim; ++r) g(r, c) *= inv;
  }
  return g;
}

// Full-rank generic mixed state G G' / tr(G G').
inline DensityMatrix random_mixed(int dim, RngStream& rng) {
  const ComplexMatrix g = random_gaussian_matrix(dim, rng);
  ComplexMatrix p = g * g.adjoint();
  p = (1.0 / std::real(p.trace())) * p;
  p = 0.5 * (p + p.adjoint());
  return DensityMatrix(p);
}

// Two-qubit reduction of a Haar-random pure three-qubit state.
inline DensityMatrix random_two_qubit_reduction(RngStream& rng) {
  const monocone::PureState3Q psi = monocone::sample_haar(rng);
  return psi.pair_reduction(monocone::Party::A, monocone::Party::B);
}

// Characteristic polynomial coefficients via Faddeev-LeVerrier:
// p(x) = x^n + c[0] x^{n-1} + ... + c[n-1].
inline std::vector<double> charpoly_coefficients(const ComplexMatrix& a) {
  const int n = a.dim();
  std::vector<double> c(static_cast<size_t>(n));
  ComplexMatrix m = a;
  for (int k = 1; k <= n; ++k) {
    const double ck = -std::real(m.trace()) / k;
    c[static_cast<size_t>(k - 1)] = ck;
    if (k < n) {
      ComplexMatrix shifted = m;
      for (int i = 0; i < n; ++i) shifted(i, i) += ck;
      m = a * shifted;
    }
  }
  return c;
}

// Real roots of the characteristic polynomial of a Hermitian matrix, found
// by sign-change scanning plus bisection over the Gershgorin interval.
// Assumes distinct eigenvalues (generic random input). Descending order.
inline std::vector<double> charpoly_eigenvalue_oracle(const ComplexMatrix& a) {
  const int n = a.dim();
  const std::vector<double> c = charpoly_coefficients(a);
  const auto p = [&](double x) {
    double v = 1.0;
    for (int k = 0; k < n; ++k) v = v * x + c[static_cast<size_t>(k)];
    return v;
  };
  double radius = 0.0;
  for (int i = 0; i < n; ++i) {
    double row = 0.0;
    for (int j = 0; j < n; ++j) row += std::abs(a(i, j));
    radius = std::max(radius, row);
  }
  const double lo = -radius - 1.0;
  const double hi = radius + 1.0;
  constexpr int kScan = 20000;
  std::vector<double> roots;
  double xprev = lo;
  double fprev = p(lo);
  for (int s = 1; s <= kScan; ++s) {
    const double x = lo + (hi - lo) * s / kScan;
    const double fx = p(x);
    if (fprev == 0.0) roots.push_back(xprev);
    else if (fprev * fx < 0.0) {
      double l = xprev, r = x, fl = fprev;
      for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (l + r);
        const double fm = p(mid);
        if (fl * fm <= 0.0) r = mid;
        else { l = mid; fl = fm; }
      }
      roots.push_back(0.5 * (l + r));
    }
    xprev = x;
    fprev = fx;
  }
  std::sort(roots.begin(), roots.end(), std::greater<>());
  return roots;
}

// Asymptotic two-sample Kolmogorov-Smirnov p-value.
inline double ks_two_sample_p(std::vector<double> s1, std::vector<double> s2) {
  std::sort(s1.begin(), s1.end());
  std::sort(s2.begin(), s2.end());
  const size_t n1 = s1.size(), n2 = s2.size();
  size_t i = 0, j = 0;
  double d = 0.0;
  while (i < n1 && j < n2) {
    if (s1[i] <= s2[j]) ++i;
    else ++j;
    const double f1 = static_cast<double>(i) / static_cast<double>(n1);
    const double f2 = static_cast<double>(j) / static_cast<double>(n2);
    d = std::max(d, std::abs(f1 - f2));
  }
  const double ne = static_cast<double>(n1) * static_cast<double>(n2) /
                    static_cast<double>(n1 + n2);
  const double lambda = (std::sqrt(ne) + 0.12 + 0.11 / std::sqrt(ne)) * d;
  double q = 0.0;
  for (int k = 1; k <= 100; ++k)
    q += 2.0 * (k % 2 == 1 ? 1.0 : -1.0) * std::exp(-2.0 * k * k * lambda * lambda);
  return std::clamp(q, 0.0, 1.0);
}

// Exhaustive measurement minimum on a dense direction grid, used as the
// oracle for the measurement optimizer.
inline double dense_grid_measurement_min(const DensityMatrix& rho, monocone::MeasuredSide side,
                                         int n_theta, int n_phi) {
  const monocone::MeasurementObjective obj(rho, side);
  std::vector<double> ct(static_cast<size_t>(n_theta)), st(static_cast<size_t>(n_theta));
  for (int i = 0; i < n_theta; ++i) {
    const double th = std::numbers::pi * i / (n_theta - 1);
    ct[static_cast<size_t>(i)] = std::cos(th);
    st[static_cast<size_t>(i)] = std::sin(th);
  }
  std::vector<double> cp(static_cast<size_t>(n_phi)), sp(static_cast<size_t>(n_phi));
  for (int j = 0; j < n_phi; ++j) {
    const double ph = 2.0 * std::numbers::pi * j / n_phi;
    cp[static_cast<size_t>(j)] = std::cos(ph);
    sp[static_cast<size_t>(j)] = std::sin(ph);
  }
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n_theta; ++i)
    for (int j = 0; j < n_phi; ++j)
      best = std::min(best, obj.direction(st[static_cast<size_t>(i)] * cp[static_cast<size_t>(j)],
                                          st[static_cast<size_t>(i)] * sp[static_cast<size_t>(j)],
                                          ct[static_cast<size_t>(i)]));
  return best;
}

// Apply a single-qubit unitary to one party of a pure three-qubit state.
inline monocone::PureState3Q apply_local_unitary(const monocone::PureState3Q& psi,
                                                 monocone::Party p, const ComplexMatrix& u) {
  const int shift = 2 - static_cast<int>(p);
  std::array<cplx, 8> out{};
  for (int idx = 0; idx < 8; ++idx) {
    const int bit = (idx >> shift) & 1;
    const int base = idx & ~(1 << shift);
    for (int src = 0; src < 2; ++src)
      out[static_cast<size_t>(idx)] +=
          u(bit, src) * psi.amp(base | (src << shift));
  }
  return monocone::PureState3Q::renormalized(out, psi.family());
}

inline double max_abs_diff(const ComplexMatrix& x, const ComplexMatrix& y) {
  double worst = 0.0;
  for (int i = 0; i < x.dim(); ++i)
    for (int j = 0; j < x.dim(); ++j) worst = std::max(worst, std::abs(x(i, j) - y(i, j)));
  return worst;
}

}  // namespace testutil
