#pragma once

// Two-parameter Nelder-Mead simplex descent. Standard coefficients
// (reflection 1, expansion 2, contraction 0.5, shrink 0.5); terminates when
// the simplex function spread falls below ftol or the iteration cap is hit.

#include <algorithm>
#include <array>
#include <cmath>

namespace monocone {

struct SimplexResult {
  std::array<double, 2> x;
  double fx;
  int iterations;
  bool converged;
};

template <typename F>
SimplexResult nelder_mead_2d(F&& f, std::array<double, 2> x0, std::array<double, 2> step,
                             double ftol, int max_iter) {
  constexpr double kReflect = 1.0;
  constexpr double kExpand = 2.0;
  constexpr double kContract = 0.5;
  constexpr double kShrink = 0.5;

  std::array<std::array<double, 2>, 3> v{{x0,
                                          {x0[0] + step[0], x0[1]},
                                          {x0[0], x0[1] + step[1]}}};
  std::array<double, 3> fv{f(v[0]), f(v[1]), f(v[2])};

  const auto sort_vertices = [&] {
    if (fv[0] > fv[1]) { std::swap(fv[0], fv[1]); std::swap(v[0], v[1]); }
    if (fv[1] > fv[2]) { std::swap(fv[1], fv[2]); std::swap(v[1], v[2]); }
    if (fv[0] > fv[1]) { std::swap(fv[0], fv[1]); std::swap(v[0], v[1]); }
  };

  int iter = 0;
  bool converged = false;
  for (; iter < max_iter; ++iter) {
    sort_vertices();
    if (fv[2] - fv[0] <= ftol) {
      converged = true;
      break;
    }
    const std::array<double, 2> centroid{0.5 * (v[0][0] + v[1][0]), 0.5 * (v[0][1] + v[1][1])};
    const auto blend = [&](double coeff) {
      return std::array<double, 2>{centroid[0] + coeff * (centroid[0] - v[2][0]),
                                   centroid[1] + coeff * (centroid[1] - v[2][1])};
    };

    const std::array<double, 2> xr = blend(kReflect);
    const double fr = f(xr);
    if (fr < fv[0]) {
      const std::array<double, 2> xe = blend(kExpand);
      const double fe = f(xe);
      if (fe < fr) { v[2] = xe; fv[2] = fe; }
      else { v[2] = xr; fv[2] = fr; }
      continue;
    }
    if (fr < fv[1]) {
      v[2] = xr;
      fv[2] = fr;
      continue;
    }
    if (fr < fv[2]) {  // outside contraction
      const std::array<double, 2> xc = blend(kReflect * kContract);
      const double fc = f(xc);
      if (fc <= fr) { v[2] = xc; fv[2] = fc; continue; }
    } else {  // inside contraction
      const std::array<double, 2> xc = blend(-kContract);
      const double fc = f(xc);
      if (fc < fv[2]) { v[2] = xc; fv[2] = fc; continue; }
    }
    for (int i = 1; i < 3; ++i) {  // shrink toward the best vertex
      v[i][0] = v[0][0] + kShrink * (v[i][0] - v[0][0]);
      v[i][1] = v[0][1] + kShrink * (v[i][1] - v[0][1]);
      fv[i] = f(v[i]);
    }
  }
  sort_vertices();
  return {v[0], fv[0], iter, converged};
}

}  // namespace monocone
