#pragma once

// Two-qubit correlation measures: Wootters concurrence, tangle across a pure
// bipartition, entanglement of formation, mutual information, measured
// conditional entropy (optimized over rank-1 projective measurements),
// classical correlation and quantum discord.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "monocone/complex_matrix.hpp"
#include "monocone/nelder_mead.hpp"
#include "monocone/party.hpp"
#include "monocone/states.hpp"

namespace monocone {

// Which qubit of a 4x4 state carries the measurement.
enum class MeasuredSide { first, second };

// Measurement optimization: exhaustive coarse grid over the Bloch sphere,
// then simplex refinement from the best cell.
inline constexpr int kGridTheta = 64;
inline constexpr int kGridPhi = 128;
inline constexpr double kRefineTolBits = 1e-8;
inline constexpr int kRefineMaxIter = 500;
inline constexpr double kBranchProbFloor = 1e-15;
inline constexpr double kDiscordNoiseFloor = -1e-9;

/// Rank-1 projective measurement direction on the Bloch sphere.
struct Measurement1Q {
  double theta = 0.0;  // polar angle, [0, pi]
  double phi = 0.0;    // azimuth, [0, 2 pi)

  /// Projector (I + n.sigma)/2 for outcome 0, (I - n.sigma)/2 for outcome 1.
  ComplexMatrix projector(int outcome) const {
    if (outcome != 0 && outcome != 1)
      throw std::invalid_argument("Measurement1Q: outcome must be 0 or 1");
    const double sgn = outcome == 0 ? 1.0 : -1.0;
    const double st = std::sin(theta);
    const double nx = st * std::cos(phi);
    const double ny = st * std::sin(phi);
    const double nz = std::cos(theta);
    ComplexMatrix m(2);
    m(0, 0) = 0.5 * (1.0 + sgn * nz);
    m(1, 1) = 0.5 * (1.0 - sgn * nz);
    m(0, 1) = 0.5 * sgn * cplx(nx, -ny);
    m(1, 0) = 0.5 * sgn * cplx(nx, ny);
    return m;
  }
};

struct MeasuredBranch {
  double probability;
  DensityMatrix post_state;  // state of the unmeasured qubit
};

/// (sigma_y x sigma_y) rho* (sigma_y x sigma_y).
inline ComplexMatrix spin_flip(const DensityMatrix& rho) {
  if (rho.dim() != 4) throw std::invalid_argument("spin_flip: expected a 4x4 density matrix");
  const ComplexMatrix yy = tensor_product(pauli_y(), pauli_y());
  return yy * rho.matrix().conjugate() * yy;
}

// Density-matrix eigenvalues at or below this are treated as exact zero
// modes when factoring rho for the spin-flip spectrum. Keeping them in
// would turn rounding noise into sqrt(noise)-sized lambdas.
inline constexpr double kConcurrenceRankFloor = 1e-13;

/// Wootters concurrence. The spectrum of sqrt(rho) rho~ sqrt(rho) equals the
/// squared singular values of the symmetric matrix K = L^T (sy x sy) L for
/// any factorization rho = L L^+; building L from the eigendecomposition and
/// dropping zero modes keeps rank-deficient inputs (every two-qubit reduction
/// of a pure three-qubit state) at full working precision.
inline double concurrence(const DensityMatrix& rho) {
  if (rho.dim() != 4) throw std::invalid_argument("concurrence: expected a 4x4 density matrix");
  const EigenSystem es = hermitian_eigensystem(rho.matrix());
  if (es.values.back() < tol::kPsdSqrtFloor)
    throw std::domain_error("concurrence: negative eigenvalue beyond tolerance");

  int rank = 0;
  std::array<double, 4> scale{};
  while (rank < 4 && es.values[static_cast<size_t>(rank)] > kConcurrenceRankFloor) {
    scale[static_cast<size_t>(rank)] = std::sqrt(es.values[static_cast<size_t>(rank)]);
    ++rank;
  }
  if (rank == 0) return 0.0;  // unreachable for a unit-trace input

  const ComplexMatrix yy = tensor_product(pauli_y(), pauli_y());
  ComplexMatrix k(4);  // symmetric; rows and columns beyond the rank stay zero
  for (int i = 0; i < rank; ++i)
    for (int j = i; j < rank; ++j) {
      cplx s = 0.0;
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) s += es.vectors(a, i) * yy(a, b) * es.vectors(b, j);
      s *= scale[static_cast<size_t>(i)] * scale[static_cast<size_t>(j)];
      k(i, j) = s;
      k(j, i) = s;
    }

  double c = 0.0;
  if (rank == 1) {
    c = std::abs(k(0, 0));
  } else if (rank == 2) {
    // 2x2 singular values without cancellation: s1 s2 = |det K| and
    // s1^2 + s2^2 = |K|_F^2, so the small one is recovered by division.
    const double f = std::norm(k(0, 0)) + 2.0 * std::norm(k(0, 1)) + std::norm(k(1, 1));
    const double d = std::abs(k(0, 0) * k(1, 1) - k(0, 1) * k(0, 1));
    const double g = std::sqrt(std::max(0.0, f * f - 4.0 * d * d));
    const double s1 = std::sqrt(0.5 * (f + g));
    const double s2 = s1 > 0.0 ? d / s1 : 0.0;
    c = s1 - s2;
  } else {
    const std::vector<double> ev = hermitian_eigs(k.adjoint() * k);
    for (size_t i = 0; i < ev.size(); ++i) {
      const double s = std::sqrt(std::max(0.0, ev[i]));
      c += i == 0 ? s : -s;
    }
  }
  return std::max(0.0, c);
}

/// Tangle of the node : rest bipartition of a pure state, 4 det(rho_node).
inline double tangle_bipartition(const PureState3Q& psi, Party node) {
  const DensityMatrix rho = psi.marginal(node);
  const cplx det = rho(0, 0) * rho(1, 1) - rho(0, 1) * rho(1, 0);
  return 4.0 * std::real(det);
}

inline double eof_from_concurrence(double c) {
  if (c < -1e-12 || c > 1.0 + 1e-12)
    throw std::domain_error("eof_from_concurrence: concurrence outside [0, 1]");
  c = std::clamp(c, 0.0, 1.0);
  return binary_entropy(0.5 * (1.0 + std::sqrt(std::max(0.0, 1.0 - c * c))));
}

inline double eof_two_qubit(const DensityMatrix& rho) {
  return eof_from_concurrence(concurrence(rho));
}

/// I(rho) = S(first) + S(second) - S(rho), in bits.
inline double quantum_mutual_information(const DensityMatrix& rho) {
  if (rho.dim() != 4)
    throw std::invalid_argument("quantum_mutual_information: expected a 4x4 density matrix");
  return von_neumann_entropy(pair_marginal(rho, 0)) + von_neumann_entropy(pair_marginal(rho, 1)) -
         von_neumann_entropy(rho);
}

/// Post-measurement branches for a projective measurement on one side.
inline std::array<MeasuredBranch, 2> measurement_branches(const DensityMatrix& rho,
                                                          MeasuredSide side,
                                                          const Measurement1Q& meas) {
  if (rho.dim() != 4)
    throw std::invalid_argument("measurement_branches: expected a 4x4 density matrix");
  const ComplexMatrix eye = ComplexMatrix::identity(2);
  const auto make_branch = [&](int outcome) {
    const ComplexMatrix proj = meas.projector(outcome);
    const ComplexMatrix op =
        side == MeasuredSide::second ? tensor_product(eye, proj) : tensor_product(proj, eye);
    const ComplexMatrix sub = op * rho.matrix() * op;
    const double p = std::clamp(std::real(sub.trace()), 0.0, 1.0);
    const int unmeasured = side == MeasuredSide::second ? 0 : 1;
    if (p < kBranchProbFloor)
      return MeasuredBranch{0.0, DensityMatrix(0.5 * ComplexMatrix::identity(2))};
    ComplexMatrix post = detail::reduce_qubits(sub, 2, {unmeasured});
    post = (1.0 / std::real(post.trace())) * (0.5 * (post + post.adjoint()));
    return MeasuredBranch{p, DensityMatrix(post)};
  };
  return {make_branch(0), make_branch(1)};
}

/// Average post-measurement entropy sum_k p_k S(rho_k) via explicit branches.
inline double measurement_average_entropy(const DensityMatrix& rho, MeasuredSide side,
                                          const Measurement1Q& meas) {
  double s = 0.0;
  for (const MeasuredBranch& b : measurement_branches(rho, side, meas))
    if (b.probability > kBranchProbFloor) s += b.probability * von_neumann_entropy(b.post_state);
  return s;
}

namespace detail {

struct Bloch2Q {
  std::array<double, 3> a{};                  // first-qubit vector
  std::array<double, 3> b{};                  // second-qubit vector
  std::array<std::array<double, 3>, 3> t{};   // correlation matrix
};

inline Bloch2Q bloch_decompose(const DensityMatrix& rho) {
  struct Basis {
    std::array<ComplexMatrix, 3> first;
    std::array<ComplexMatrix, 3> second;
    std::array<std::array<ComplexMatrix, 3>, 3> both;
    Basis()
        : first{tensor_product(pauli_x(), ComplexMatrix::identity(2)),
                tensor_product(pauli_y(), ComplexMatrix::identity(2)),
                tensor_product(pauli_z(), ComplexMatrix::identity(2))},
          second{tensor_product(ComplexMatrix::identity(2), pauli_x()),
                 tensor_product(ComplexMatrix::identity(2), pauli_y()),
                 tensor_product(ComplexMatrix::identity(2), pauli_z())},
          both{{{tensor_product(pauli_x(), pauli_x()), tensor_product(pauli_x(), pauli_y()),
                 tensor_product(pauli_x(), pauli_z())},
                {tensor_product(pauli_y(), pauli_x()), tensor_product(pauli_y(), pauli_y()),
                 tensor_product(pauli_y(), pauli_z())},
                {tensor_product(pauli_z(), pauli_x()), tensor_product(pauli_z(), pauli_y()),
                 tensor_product(pauli_z(), pauli_z())}}} {}
  };
  static const Basis basis;
  Bloch2Q f;
  for (int i = 0; i < 3; ++i) {
    f.a[static_cast<size_t>(i)] = std::real(trace_product(rho.matrix(), basis.first[static_cast<size_t>(i)]));
    f.b[static_cast<size_t>(i)] = std::real(trace_product(rho.matrix(), basis.second[static_cast<size_t>(i)]));
    for (int j = 0; j < 3; ++j)
      f.t[static_cast<size_t>(i)][static_cast<size_t>(j)] =
          std::real(trace_product(rho.matrix(), basis.both[static_cast<size_t>(i)][static_cast<size_t>(j)]));
  }
  return f;
}

}  // namespace detail

/// Average post-measurement entropy as a closed-form function of the
/// measurement direction. For qubit branches the entropy depends only on the
/// branch Bloch length, so each evaluation costs a few flops; this is the
/// objective the measurement optimizer minimizes. Agrees with
/// measurement_average_entropy to rounding.
class MeasurementObjective {
 public:
  MeasurementObjective(const DensityMatrix& rho, MeasuredSide side) {
    if (rho.dim() != 4)
      throw std::invalid_argument("MeasurementObjective: expected a 4x4 density matrix");
    const detail::Bloch2Q f = detail::bloch_decompose(rho);
    if (side == MeasuredSide::second) {
      pvec_ = f.b;
      base_ = f.a;
      mat_ = f.t;
    } else {
      pvec_ = f.a;
      base_ = f.b;
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
          mat_[static_cast<size_t>(i)][static_cast<size_t>(j)] =
              f.t[static_cast<size_t>(j)][static_cast<size_t>(i)];
    }
  }

  double direction(double nx, double ny, double nz) const {
    const double pd = pvec_[0] * nx + pvec_[1] * ny + pvec_[2] * nz;
    const double mx = mat_[0][0] * nx + mat_[0][1] * ny + mat_[0][2] * nz;
    const double my = mat_[1][0] * nx + mat_[1][1] * ny + mat_[1][2] * nz;
    const double mz = mat_[2][0] * nx + mat_[2][1] * ny + mat_[2][2] * nz;
    double total = 0.0;
    for (double sgn : {1.0, -1.0}) {
      const double p = 0.5 * (1.0 + sgn * pd);
      if (p < kBranchProbFloor) continue;
      const double rx = base_[0] + sgn * mx;
      const double ry = base_[1] + sgn * my;
      const double rz = base_[2] + sgn * mz;
      double r = std::sqrt(rx * rx + ry * ry + rz * rz) / (2.0 * p);
      if (r > 1.0) r = 1.0;
      total += p * entropy_of_bloch_length(r);
    }
    return total;
  }

  double operator()(double theta, double phi) const {
    const double st = std::sin(theta);
    return direction(st * std::cos(phi), st * std::sin(phi), std::cos(theta));
  }

 private:
  static double entropy_of_bloch_length(double r) {
    const double x = 0.5 * (1.0 + r);
    const double y = 0.5 * (1.0 - r);
    double s = 0.0;
    if (x > 0.0) s -= x * std::log2(x);
    if (y > 0.0) s -= y * std::log2(y);
    return std::max(0.0, s);
  }

  std::array<double, 3> pvec_{};
  std::array<double, 3> base_{};
  std::array<std::array<double, 3>, 3> mat_{};
};

struct ConditionalEntropyResult {
  double bits;
  Measurement1Q optimum;
  int refine_iterations;
};

namespace detail {

inline Measurement1Q canonical_direction(double theta, double phi) {
  const double st = std::sin(theta);
  const double nx = st * std::cos(phi);
  const double ny = st * std::sin(phi);
  const double nz = std::cos(theta);
  const double tc = std::acos(std::clamp(nz, -1.0, 1.0));
  double pc = std::atan2(ny, nx);
  if (pc < 0.0) pc += 2.0 * std::numbers::pi;
  if (std::abs(nz) > 1.0 - 1e-15) pc = 0.0;  // azimuth is arbitrary at the poles
  return Measurement1Q{tc, pc};
}

}  // namespace detail

/// min over projective measurements of sum_k p_k S(rho_k), with the argmin.
inline ConditionalEntropyResult measured_conditional_entropy(const DensityMatrix& rho,
                                                             MeasuredSide side) {
  const MeasurementObjective obj(rho, side);

  struct Grid {
    std::array<double, kGridTheta> st, ct;
    std::array<double, kGridPhi> cp, sp;
    Grid() {
      for (int i = 0; i < kGridTheta; ++i) {
        const double th = std::numbers::pi * i / (kGridTheta - 1);
        st[static_cast<size_t>(i)] = std::sin(th);
        ct[static_cast<size_t>(i)] = std::cos(th);
      }
      for (int j = 0; j < kGridPhi; ++j) {
        const double ph = 2.0 * std::numbers::pi * j / kGridPhi;
        cp[static_cast<size_t>(j)] = std::cos(ph);
        sp[static_cast<size_t>(j)] = std::sin(ph);
      }
    }
  };
  static const Grid grid;

  double best = std::numeric_limits<double>::infinity();
  int bi = 0, bj = 0;
  for (int i = 0; i < kGridTheta; ++i) {
    const double st = grid.st[static_cast<size_t>(i)];
    const double ct = grid.ct[static_cast<size_t>(i)];
    for (int j = 0; j < kGridPhi; ++j) {
      const double f = obj.direction(st * grid.cp[static_cast<size_t>(j)],
                                     st * grid.sp[static_cast<size_t>(j)], ct);
      if (f < best) {
        best = f;
        bi = i;
        bj = j;
      }
    }
  }

  const double theta0 = std::numbers::pi * bi / (kGridTheta - 1);
  const double phi0 = 2.0 * std::numbers::pi * bj / kGridPhi;
  const double dtheta = std::numbers::pi / (kGridTheta - 1);
  const double dphi = 2.0 * std::numbers::pi / kGridPhi;
  const SimplexResult refined = nelder_mead_2d(
      [&obj](const std::array<double, 2>& x) { return obj(x[0], x[1]); },
      {theta0, phi0}, {0.5 * dtheta, 0.5 * dphi}, kRefineTolBits, kRefineMaxIter);

  double bits = best;
  double theta = theta0;
  double phi = phi0;
  if (refined.fx <= best) {
    bits = refined.fx;
    theta = refined.x[0];
    phi = refined.x[1];
  }
  return {bits, detail::canonical_direction(theta, phi), refined.iterations};
}

/// J(rho) = S(first) - min_meas sum_k p_k S(rho_k), measurement on `measured`.
inline double classical_correlation(const DensityMatrix& rho,
                                    MeasuredSide measured = MeasuredSide::second) {
  const int node_position = measured == MeasuredSide::second ? 0 : 1;
  const double s_node = von_neumann_entropy(pair_marginal(rho, node_position));
  const double j = s_node - measured_conditional_entropy(rho, measured).bits;
  if (j < kDiscordNoiseFloor)
    throw std::runtime_error("classical_correlation: negative beyond the noise floor");
  return std::max(0.0, j);
}

/// D(rho) = I(rho) - J(rho) with the measurement on the second qubit; the
/// first qubit is the node. Values inside [kDiscordNoiseFloor, 0) clamp to
/// zero; lower values indicate a failed measurement optimization.
inline double quantum_discord(const DensityMatrix& rho,
                              MeasuredSide measured = MeasuredSide::second) {
  const double i = quantum_mutual_information(rho);
  const double j = classical_correlation(rho, measured);
  const double d = i - j;
  if (d < kDiscordNoiseFloor)
    throw std::runtime_error("quantum_discord: negative beyond the noise floor");
  return std::max(0.0, d);
}

/// Discord of the pure node : rest cut, which collapses to S(rho_node).
inline double discord_pure_bipartition(const PureState3Q& psi, Party node) {
  return von_neumann_entropy(psi.marginal(node));
}

}  // namespace monocone
