#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cmath>
#include <vector>

#include "helpers.hpp"
#include "monocone/multipartite.hpp"
#include "monocone/states.hpp"

using namespace monocone;
using testutil::max_abs_diff;

TEST_CASE("generalized GHZ family") {
  const PureState3Q sym = generalized_ghz(1.0 / std::sqrt(2.0));
  CHECK(max_abs_diff(sym.marginal(Party::A).matrix(), 0.5 * ComplexMatrix::identity(2)) < 1e-12);

  const PureState3Q prod = generalized_ghz(1.0);
  CHECK(std::abs(prod.amp(0) - 1.0) < 1e-15);
  CHECK(std::abs(prod.amp(7)) < 1e-15);

  const PureState3Q gg = generalized_ghz(std::sqrt(0.8));
  const DensityMatrix rho_a = gg.marginal(Party::A);
  CHECK(std::abs(rho_a(0, 0) - 0.8) < 1e-12);
  CHECK(std::abs(rho_a(1, 1) - 0.2) < 1e-12);

  CHECK_THROWS_AS(generalized_ghz(0.5), std::invalid_argument);
  CHECK_THROWS_AS(generalized_ghz(1.1), std::invalid_argument);
}

TEST_CASE("constructors enforce normalization") {
  std::array<cplx, 8> amps{};
  amps[0] = 0.5;
  CHECK_THROWS_AS(PureState3Q::from_amplitudes(amps), std::invalid_argument);
  const PureState3Q fixed = PureState3Q::renormalized(amps);
  CHECK(std::abs(fixed.norm() - 1.0) < 1e-12);
  CHECK(std::abs(fixed.amp(0) - 1.0) < 1e-12);

  std::array<cplx, 8> zero{};
  CHECK_THROWS_AS(PureState3Q::renormalized(zero), std::invalid_argument);
}

TEST_CASE("samplers are deterministic in (seed, stream)") {
  const PureState3Q a = sample_haar(RngStream::make(42, 7));
  const PureState3Q b = sample_haar(RngStream::make(42, 7));
  const PureState3Q c = sample_haar(RngStream::make(42, 8));
  double diff_ab = 0.0, diff_ac = 0.0;
  for (int i = 0; i < 8; ++i) {
    diff_ab = std::max(diff_ab, std::abs(a.amp(i) - b.amp(i)));
    diff_ac = std::max(diff_ac, std::abs(a.amp(i) - c.amp(i)));
  }
  CHECK(diff_ab == 0.0);
  CHECK(diff_ac > 1e-3);
}

TEST_CASE("all samplers emit normalized states of the right family") {
  for (uint64_t s = 0; s < 50; ++s) {
    CHECK(std::abs(sample_haar(RngStream::make(1, s)).norm() - 1.0) < 1e-12);
    CHECK(std::abs(sample_ghz_class(RngStream::make(2, s)).norm() - 1.0) < 1e-12);
    CHECK(std::abs(sample_w_class(RngStream::make(3, s)).norm() - 1.0) < 1e-12);
  }
  CHECK(sample_haar(RngStream::make(1, 0)).family() == StateFamily::haar);
  CHECK(sample_ghz_class(RngStream::make(1, 0)).family() == StateFamily::ghz_class);
  CHECK(sample_w_class(RngStream::make(1, 0)).family() == StateFamily::w_class);
  CHECK(generalized_ghz(0.9).family() == StateFamily::gen_ghz);
}

TEST_CASE("haar amplitudes are uniform on average") {
  constexpr int kSamples = 100000;
  std::array<double, 8> mean{};
  for (uint64_t s = 0; s < kSamples; ++s) {
    const PureState3Q psi = sample_haar(RngStream::make(90, s));
    for (int i = 0; i < 8; ++i) mean[static_cast<size_t>(i)] += std::norm(psi.amp(i));
  }
  // |a_i|^2 has mean 1/8 and variance (1/8)(7/8)/... bounded by a Bernoulli;
  // 3 sigma of the sample mean is ~3.1e-3 at this sample size.
  const double bound = 3.0 * std::sqrt((1.0 / 8.0) * (7.0 / 8.0) / kSamples);
  for (int i = 0; i < 8; ++i)
    CHECK(std::abs(mean[static_cast<size_t>(i)] / kSamples - 0.125) < bound);
}

TEST_CASE("haar GGM distribution is invariant under a fixed local unitary") {
  constexpr int kSamples = 10000;
  ComplexMatrix u(2);
  {
    const double th = 0.7, ph = 1.3, ps = 2.1;
    u(0, 0) = std::cos(th);
    u(0, 1) = -cplx(std::cos(ps), std::sin(ps)) * std::sin(th);
    u(1, 0) = cplx(std::cos(ph), std::sin(ph)) * std::sin(th);
    u(1, 1) = cplx(std::cos(ph + ps), std::sin(ph + ps)) * std::cos(th);
  }
  std::vector<double> plain, rotated;
  plain.reserve(kSamples);
  rotated.reserve(kSamples);
  for (uint64_t s = 0; s < kSamples; ++s) {
    const PureState3Q psi = sample_haar(RngStream::make(91, s));
    plain.push_back(ggm(psi).ggm);
    rotated.push_back(ggm(testutil::apply_local_unitary(psi, Party::B, u)).ggm);
  }
  CHECK(testutil::ks_two_sample_p(plain, rotated) > 0.01);
}

TEST_CASE("ghz_class samples clear the tangle floor") {
  for (uint64_t s = 0; s < 200; ++s) {
    const PureState3Q psi = sample_ghz_class(RngStream::make(92, s));
    const double delta_c = monogamy_score(MeasureTag::concurrence_squared, psi, Party::A).value;
    CHECK(delta_c > 1e-8);
  }
}

TEST_CASE("w_class samples have vanishing residual tangle") {
  for (uint64_t s = 0; s < 200; ++s) {
    const PureState3Q psi = sample_w_class(RngStream::make(93, s));
    const double delta_c = monogamy_score(MeasureTag::concurrence_squared, psi, Party::A).value;
    CHECK(std::abs(delta_c) <= 1e-8);
  }
}

TEST_CASE("relabeled W state has the canonical W marginals") {
  // (|000> + |101> + |110>)/sqrt(3) is the W state up to a flip on A.
  const double inv = 1.0 / std::sqrt(3.0);
  std::array<cplx, 8> amps{};
  amps[0] = inv;
  amps[5] = inv;
  amps[6] = inv;
  const PureState3Q psi = PureState3Q::from_amplitudes(amps);
  for (Party p : kParties) {
    const std::vector<double> ev = hermitian_eigs(psi.marginal(p).matrix());
    CHECK(ev[0] == Catch::Approx(2.0 / 3.0).margin(1e-12));
    CHECK(ev[1] == Catch::Approx(1.0 / 3.0).margin(1e-12));
  }
  CHECK(ggm(psi).ggm == Catch::Approx(1.0 / 3.0).margin(1e-12));
  CHECK(std::abs(monogamy_score(MeasureTag::concurrence_squared, psi, Party::A).value) <= 1e-8);
}

TEST_CASE("density and reductions are consistent") {
  for (uint64_t s = 0; s < 10; ++s) {
    const PureState3Q psi = sample_haar(RngStream::make(94, s));
    const DensityMatrix rho = psi.density();

    // Purity.
    CHECK(std::abs(std::real(trace_product(rho.matrix(), rho.matrix())) - 1.0) < 1e-12);

    // Direct-contraction reductions match the generic partial trace.
    CHECK(max_abs_diff(psi.pair_reduction(Party::A, Party::B).matrix(),
                       partial_trace(rho, {Party::A, Party::B}).matrix()) < 1e-13);
    CHECK(max_abs_diff(psi.pair_reduction(Party::B, Party::C).matrix(),
                       partial_trace(rho, {Party::B, Party::C}).matrix()) < 1e-13);
    CHECK(max_abs_diff(psi.marginal(Party::B).matrix(),
                       partial_trace(rho, {Party::B}).matrix()) < 1e-13);

    // Swapped pair order transposes the qubit layout.
    const DensityMatrix ab = psi.pair_reduction(Party::A, Party::B);
    const DensityMatrix ba = psi.pair_reduction(Party::B, Party::A);
    for (int i1 = 0; i1 < 2; ++i1)
      for (int i2 = 0; i2 < 2; ++i2)
        for (int j1 = 0; j1 < 2; ++j1)
          for (int j2 = 0; j2 < 2; ++j2)
            CHECK(std::abs(ab(2 * i1 + i2, 2 * j1 + j2) - ba(2 * i2 + i1, 2 * j2 + j1)) < 1e-15);
  }
  CHECK_THROWS_AS(sample_haar(RngStream::make(0, 0)).pair_reduction(Party::A, Party::A),
                  std::invalid_argument);
}

TEST_CASE("ghz state built from explicit amplitudes matches the family") {
  std::array<cplx, 8> amps{};
  amps[0] = 1.0 / std::sqrt(2.0);
  amps[7] = 1.0 / std::sqrt(2.0);
  const PureState3Q ghz = PureState3Q::from_amplitudes(amps);
  const PureState3Q fam = generalized_ghz(1.0 / std::sqrt(2.0));
  double diff = 0.0;
  for (int i = 0; i < 8; ++i) diff = std::max(diff, std::abs(ghz.amp(i) - fam.amp(i)));
  CHECK(diff < 1e-15);
}
