#pragma once

// Pure three-qubit states: explicit construction, the generalized GHZ family
// and random samplers (Haar, GHZ class, W class). Reductions are computed by
// direct index contraction on the amplitudes.

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "monocone/complex_matrix.hpp"
#include "monocone/party.hpp"
#include "monocone/rng.hpp"

namespace monocone {

enum class StateFamily { haar, gen_ghz, ghz_class, w_class, explicit_state };

inline const char* family_name(StateFamily f) {
  switch (f) {
    case StateFamily::haar: return "haar";
    case StateFamily::gen_ghz: return "gen_ghz";
    case StateFamily::ghz_class: return "ghz_class";
    case StateFamily::w_class: return "w_class";
    case StateFamily::explicit_state: return "explicit";
  }
  return "?";
}

inline StateFamily family_from_name(const std::string& name) {
  if (name == "haar") return StateFamily::haar;
  if (name == "gen_ghz") return StateFamily::gen_ghz;
  if (name == "ghz_class") return StateFamily::ghz_class;
  if (name == "w_class") return StateFamily::w_class;
  if (name == "explicit") return StateFamily::explicit_state;
  throw std::invalid_argument("unknown state family: " + name);
}

// GHZ-class samples are rejected until their residual tangle clears this
// floor, so downstream consumers can rely on a strictly positive value.
inline constexpr double kGhzClassTangleFloor = 1.01e-8;

class PureState3Q {
 public:
  /// Amplitudes in basis order |000>, |001>, ..., |111>, qubit A most
  /// significant. The vector must already be normalized to 1e-12.
  static PureState3Q from_amplitudes(const std::array<cplx, 8>& amps,
                                     StateFamily fam = StateFamily::explicit_state) {
    PureState3Q s(amps, fam);
    if (std::abs(s.norm() - 1.0) > 1e-12)
      throw std::invalid_argument("PureState3Q: amplitudes are not normalized");
    return s;
  }

  /// Same, but rescales the input onto the unit sphere first.
  static PureState3Q renormalized(const std::array<cplx, 8>& amps,
                                  StateFamily fam = StateFamily::explicit_state) {
    double n2 = 0.0;
    for (const cplx& a : amps) n2 += std::norm(a);
    if (n2 < 1e-24) throw std::invalid_argument("PureState3Q: cannot normalize the zero vector");
    const double inv = 1.0 / std::sqrt(n2);
    std::array<cplx, 8> scaled;
    for (size_t i = 0; i < 8; ++i) scaled[i] = amps[i] * inv;
    return PureState3Q(scaled, fam);
  }

  const std::array<cplx, 8>& amplitudes() const { return a_; }
  cplx amp(int i) const { return a_[static_cast<size_t>(i)]; }
  StateFamily family() const { return family_; }

  double norm() const {
    double n2 = 0.0;
    for (const cplx& a : a_) n2 += std::norm(a);
    return std::sqrt(n2);
  }

  DensityMatrix density() const {
    ComplexMatrix m(8);
    for (int i = 0; i < 8; ++i)
      for (int j = 0; j < 8; ++j) m(i, j) = a_[static_cast<size_t>(i)] * std::conj(a_[static_cast<size_t>(j)]);
    return DensityMatrix(m);
  }

  DensityMatrix marginal(Party p) const {
    const int shift = 2 - static_cast<int>(p);
    ComplexMatrix m(2);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        cplx sum = 0.0;
        for (int rest = 0; rest < 4; ++rest) {
          const int hi = rest >> 1;
          const int lo = rest & 1;
          const int oi = insert_bit(hi, lo, shift, i);
          const int oj = insert_bit(hi, lo, shift, j);
          sum += a_[static_cast<size_t>(oi)] * std::conj(a_[static_cast<size_t>(oj)]);
        }
        m(i, j) = sum;
      }
    return DensityMatrix(m);
  }

  /// Two-qubit reduction with `first` on the most significant qubit of the
  /// result. Any ordered pair of distinct parties is valid.
  DensityMatrix pair_reduction(Party first, Party second) const {
    if (first == second) throw std::invalid_argument("pair_reduction: parties must differ");
    const int f = 2 - static_cast<int>(first);
    const int s = 2 - static_cast<int>(second);
    const int t = 3 - f - s;
    ComplexMatrix m(4);
    for (int i1 = 0; i1 < 2; ++i1)
      for (int i2 = 0; i2 < 2; ++i2)
        for (int j1 = 0; j1 < 2; ++j1)
          for (int j2 = 0; j2 < 2; ++j2) {
            cplx sum = 0.0;
            for (int k = 0; k < 2; ++k)
              sum += a_[static_cast<size_t>((i1 << f) | (i2 << s) | (k << t))] *
                     std::conj(a_[static_cast<size_t>((j1 << f) | (j2 << s) | (k << t))]);
            m(i1 * 2 + i2, j1 * 2 + j2) = sum;
          }
    return DensityMatrix(m);
  }

 private:
  PureState3Q(const std::array<cplx, 8>& amps, StateFamily fam) : a_(amps), family_(fam) {}

  // Distribute the two remaining bits around the party bit at `shift`.
  static int insert_bit(int hi, int lo, int shift, int bit) {
    int positions[3];
    int n = 0;
    for (int q = 2; q >= 0; --q)
      if (q != shift) positions[n++] = q;
    return (hi << positions[0]) | (lo << positions[1]) | (bit << shift);
  }

  std::array<cplx, 8> a_;
  StateFamily family_;
};

/// alpha |000> + sqrt(1 - alpha^2) |111> with alpha in [1/sqrt(2), 1].
inline PureState3Q generalized_ghz(double alpha) {
  const double lo = 1.0 / std::numbers::sqrt2;
  if (alpha < lo - 1e-12 || alpha > 1.0 + 1e-12)
    throw std::invalid_argument("generalized_ghz: alpha must lie in [1/sqrt(2), 1]");
  alpha = std::clamp(alpha, lo, 1.0);
  std::array<cplx, 8> amps{};
  amps[0] = alpha;
  amps[7] = std::sqrt(std::max(0.0, 1.0 - alpha * alpha));
  return PureState3Q::from_amplitudes(amps, StateFamily::gen_ghz);
}

/// Haar-uniform pure state: eight iid complex Gaussian amplitudes, normalized.
inline PureState3Q sample_haar(RngStream rng) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    std::array<cplx, 8> amps;
    double n2 = 0.0;
    for (size_t i = 0; i < 8; ++i) {
      const auto [re, im] = rng.next_gaussian_pair();
      amps[i] = cplx(re, im);
      n2 += std::norm(amps[i]);
    }
    if (n2 < 1e-24) continue;
    const double inv = 1.0 / std::sqrt(n2);
    for (cplx& a : amps) a *= inv;
    return PureState3Q::from_amplitudes(amps, StateFamily::haar);
  }
  throw std::runtime_error("sample_haar: degenerate draw");
}

/// Canonical-form GHZ-class sample
///   l0 |000> + l1 e^{i phi} |100> + l2 |101> + l3 |110> + l4 |111>,
/// coefficients uniform on the positive orthant of the 4-sphere and
/// phi uniform in [0, pi). Draws whose residual tangle 4 l0^2 l4^2 falls
/// below kGhzClassTangleFloor are rejected.
inline PureState3Q sample_ghz_class(RngStream rng) {
  for (int attempt = 0; attempt < 10000; ++attempt) {
    std::array<double, 5> lam{};
    double n2 = 0.0;
    for (size_t i = 0; i < 5; ++i) {
      lam[i] = std::abs(rng.next_gaussian());
      n2 += lam[i] * lam[i];
    }
    const double phi = std::numbers::pi * rng.next_unit();
    if (n2 < 1e-24) continue;
    const double inv = 1.0 / std::sqrt(n2);
    for (double& l : lam) l *= inv;
    const double tangle = 4.0 * lam[0] * lam[0] * lam[4] * lam[4];
    if (tangle <= kGhzClassTangleFloor) continue;
    std::array<cplx, 8> amps{};
    amps[0] = lam[0];
    amps[4] = lam[1] * cplx(std::cos(phi), std::sin(phi));
    amps[5] = lam[2];
    amps[6] = lam[3];
    amps[7] = lam[4];
    return PureState3Q::renormalized(amps, StateFamily::ghz_class);
  }
  throw std::runtime_error("sample_ghz_class: resample limit exceeded");
}

/// Canonical-form W-class sample l0 |000> + l1 |100> + l2 |101> + l3 |110>,
/// coefficients uniform on the positive orthant of the 3-sphere. The residual
/// tangle of every state in this family is identically zero.
inline PureState3Q sample_w_class(RngStream rng) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    std::array<double, 4> lam{};
    double n2 = 0.0;
    for (size_t i = 0; i < 4; ++i) {
      lam[i] = std::abs(rng.next_gaussian());
      n2 += lam[i] * lam[i];
    }
    if (n2 < 1e-24) continue;
    const double inv = 1.0 / std::sqrt(n2);
    for (double& l : lam) l *= inv;
    std::array<cplx, 8> amps{};
    amps[0] = lam[0];
    amps[4] = lam[1];
    amps[5] = lam[2];
    amps[6] = lam[3];
    return PureState3Q::renormalized(amps, StateFamily::w_class);
  }
  throw std::runtime_error("sample_w_class: degenerate draw");
}

}  // namespace monocone
