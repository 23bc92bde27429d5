#pragma once

// Multipartite quantities on pure three-qubit states: generalized geometric
// measure, monogamy scores for the tangle and for discord, the closed-form
// discord score through the entanglement-of-formation trade-off, and the
// three-way dissension.

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "monocone/bipartite.hpp"
#include "monocone/states.hpp"

namespace monocone {

// Marginal eigenvalues closer than this are reported as a tie; the smallest
// party label wins the tie-break.
inline constexpr double kSchmidtTieTol = 1e-12;

struct GgmResult {
  double ggm;                         // 1 - max_p lambda_p^2, in [0, 1/2]
  Party max_schmidt_party;            // ties broken toward A < B < C
  std::array<double, 3> eigen_triple; // largest marginal eigenvalue per party
  bool tie;                           // two parties within kSchmidtTieTol
};

/// Generalized geometric measure from the three single-party marginals.
inline GgmResult ggm(const PureState3Q& psi) {
  std::array<double, 3> triple{};
  for (Party p : kParties)
    triple[static_cast<size_t>(p)] = hermitian_eigs(psi.marginal(p).matrix()).front();
  Party best = Party::A;
  for (Party p : {Party::B, Party::C})
    if (triple[static_cast<size_t>(p)] > triple[static_cast<size_t>(best)] + kSchmidtTieTol)
      best = p;
  bool tie = false;
  for (Party p : kParties)
    if (p != best &&
        std::abs(triple[static_cast<size_t>(p)] - triple[static_cast<size_t>(best)]) <= kSchmidtTieTol)
      tie = true;
  const double lmax = std::max({triple[0], triple[1], triple[2]});
  return {1.0 - lmax, best, triple, tie};
}

enum class MeasureTag { concurrence_squared, discord };

inline const char* measure_name(MeasureTag tag) {
  return tag == MeasureTag::concurrence_squared ? "tangle" : "discord";
}

struct MonogamyScore {
  MeasureTag measure;
  Party node;
  double value;
};

/// delta_Q = Q(node : rest) - Q(node, partner1) - Q(node, partner2).
inline MonogamyScore monogamy_score(MeasureTag tag, const PureState3Q& psi, Party node) {
  const auto [p1, p2] = partners_of(node);
  double value = 0.0;
  if (tag == MeasureTag::concurrence_squared) {
    const double c1 = concurrence(psi.pair_reduction(node, p1));
    const double c2 = concurrence(psi.pair_reduction(node, p2));
    value = tangle_bipartition(psi, node) - c1 * c1 - c2 * c2;
  } else {
    value = discord_pure_bipartition(psi, node) -
            quantum_discord(psi.pair_reduction(node, p1)) -
            quantum_discord(psi.pair_reduction(node, p2));
  }
  return {tag, node, value};
}

/// Discord monogamy score without any measurement optimization:
/// S(rho_node) - E(node, partner1) - E(node, partner2). Coincides with
/// monogamy_score(discord, ...) for pure tripartite states.
inline double delta_d_koashi_winter(const PureState3Q& psi, Party node) {
  const auto [p1, p2] = partners_of(node);
  return von_neumann_entropy(psi.marginal(node)) -
         eof_two_qubit(psi.pair_reduction(node, p1)) -
         eof_two_qubit(psi.pair_reduction(node, p2));
}

/// | D(rho_AB) - (E(rho_AC) - S(A|B)) |, the trade-off identity residual.
inline double koashi_winter_residual(const PureState3Q& psi) {
  const DensityMatrix rho_ab = psi.pair_reduction(Party::A, Party::B);
  const DensityMatrix rho_ac = psi.pair_reduction(Party::A, Party::C);
  const double d_ab = quantum_discord(rho_ab);
  const double e_ac = eof_two_qubit(rho_ac);
  const double cond =
      von_neumann_entropy(rho_ab) - von_neumann_entropy(psi.marginal(Party::B));
  return std::abs(d_ab - (e_ac - cond));
}

/// Three-way dissension with node A: the gap between the unmeasured and
/// measured chain rules for I(A : B : C).
inline double dissension(const PureState3Q& psi) {
  const DensityMatrix rho_ab = psi.pair_reduction(Party::A, Party::B);
  const DensityMatrix rho_ac = psi.pair_reduction(Party::A, Party::C);

  const double s_a = von_neumann_entropy(psi.marginal(Party::A));
  const double s_b = von_neumann_entropy(psi.marginal(Party::B));
  const double s_c = von_neumann_entropy(psi.marginal(Party::C));
  const double s_ab = von_neumann_entropy(rho_ab);
  const double s_ac = von_neumann_entropy(rho_ac);
  const double s_bc = von_neumann_entropy(psi.pair_reduction(Party::B, Party::C));
  const double s_abc = von_neumann_entropy(psi.density());

  const double i_ab = s_a + s_b - s_ab;
  const double i_cond = (s_ac - s_c) - (s_abc - s_bc);
  const double i_three = i_ab - i_cond;

  const double j_ab = s_a - measured_conditional_entropy(rho_ab, MeasuredSide::second).bits;
  // Rank-1 measurements on BC leave A pure when the global state is pure, so
  // the measured S(A|BC) term vanishes.
  const double j_cond = measured_conditional_entropy(rho_ac, MeasuredSide::second).bits;
  const double j_three = j_ab - j_cond;

  return i_three - j_three;
}

}  // namespace monocone
