#pragma once

// Light-cone constraints tying the monogamy scores to the generalized
// geometric measure: boundary curves, membership verdicts and the boundary
// slopes at the cone tip.

#include <cmath>
#include <stdexcept>

#include "monocone/multipartite.hpp"

namespace monocone {

inline constexpr double kEntanglementConeTol = 1e-9;
inline constexpr double kDiscordConeTol = 1e-4;
inline constexpr double kDeltaCNoiseFloor = -1e-10;

enum class ConeKind { entanglement, discord };

struct ConeBoundary {
  ConeKind kind;
  double tolerance;
};

inline constexpr ConeBoundary kEntanglementCone{ConeKind::entanglement, kEntanglementConeTol};
inline constexpr ConeBoundary kDiscordCone{ConeKind::discord, kDiscordConeTol};

/// Minimum GGM compatible with a tangle monogamy score delta_c:
/// E = (1 - sqrt(1 - delta_c)) / 2.
inline double entanglement_boundary(double delta_c) {
  if (delta_c < -1e-12 || delta_c > 1.0 + 1e-12)
    throw std::domain_error("entanglement_boundary: delta_c outside [0, 1]");
  delta_c = std::clamp(delta_c, 0.0, 1.0);
  return 0.5 * (1.0 - std::sqrt(1.0 - delta_c));
}

/// Maximum |discord monogamy score| compatible with a GGM value: h(E).
inline double discord_bound(double e) {
  if (e < -1e-12 || e > 0.5 + 1e-12)
    throw std::domain_error("discord_bound: GGM outside [0, 1/2]");
  return binary_entropy(std::clamp(e, 0.0, 0.5));
}

/// d/dE of the discord bound, log2((1 - E) / E). Diverges at the cone tip.
inline double discord_bound_derivative(double e) {
  if (e <= 0.0 || e >= 1.0) throw std::domain_error("discord_bound_derivative: E outside (0, 1)");
  return std::log2((1.0 - e) / e);
}

struct ConeVerdict {
  bool inside;
  double margin;     // signed distance to the boundary; positive = strictly inside
  Party node_used;
};

inline double theorem1_margin(double delta_c, double e) {
  return e - entanglement_boundary(std::clamp(delta_c, 0.0, 1.0));
}

inline double theorem2_margin(double delta_d, double e) {
  return discord_bound(e) - std::abs(delta_d);
}

/// GGM >= entanglement_boundary(delta_C). The tangle score is node
/// independent; node A is evaluated.
inline ConeVerdict verify_theorem1(const PureState3Q& psi, double tolerance = kEntanglementConeTol) {
  const double delta_c = monogamy_score(MeasureTag::concurrence_squared, psi, Party::A).value;
  const double e = ggm(psi).ggm;
  const double margin = theorem1_margin(delta_c, e);
  return {margin >= -tolerance, margin, Party::A};
}

/// |delta_D| <= h(GGM) at the maximal-Schmidt node.
inline ConeVerdict verify_theorem2(const PureState3Q& psi, double tolerance = kDiscordConeTol) {
  const GgmResult g = ggm(psi);
  const double delta_d = monogamy_score(MeasureTag::discord, psi, g.max_schmidt_party).value;
  const double margin = theorem2_margin(delta_d, g.ggm);
  return {margin >= -tolerance, margin, g.max_schmidt_party};
}

struct ConeSlopes {
  double entanglement_slope;      // d(delta_c)/dE at the tip
  double tip_angle_tangent;       // dE/d(delta_c) at the tip
  bool discord_slope_unbounded;   // d(delta_d)/dE diverges at the tip
};

inline ConeSlopes cone_slopes() { return {4.0, 0.25, true}; }

}  // namespace monocone
