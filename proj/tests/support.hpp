#pragma once

#include <cmath>
#include <numbers>
#include <random>

#include "pointspec/u2param.hpp"

namespace pstest {

using pointspec::cdouble;
using pointspec::U2Params;

inline constexpr double kPi = std::numbers::pi;

// High-precision reference values, computed once with 40-digit arithmetic
// and frozen here.
namespace frozen {
// 2 cosh 10 - 2 sinh 10 = 2 e^{-10}
inline constexpr double kSymmetricNegativeResidual = 9.0799859524969703071e-05;
// roots of 2k cosh(10k) - (1 + k^2) sinh(10k)
inline constexpr double kSymmetricKappaLow = 0.99990912171523255094;
inline constexpr double kSymmetricKappaHigh = 1.0000907216367819733;
// xi = 0.4, alpha = 0.3 + 0.2i, beta = 0.1 + i sqrt(0.86), l = L0 = 1
inline constexpr double kGenericPositive[5] = {
    3.3986387410138770094, 5.923356582952426035, 9.5172576149255263959,
    12.392810918669500391, 15.763835458600230296};
inline constexpr double kGenericKappa = 1.6248072444914672287;
// smooth circle, l = hbar = m = 1, tau = 0.1, coincident points:
// sqrt(1/(2 pi tau)) sum_n cos(theta n) e^{-n^2/(2 tau)}
inline constexpr double kCircleDiagonal[3] = {
    1.278566999415684445475859,   // theta = 0
    1.270066625012318497036992,   // theta = pi/3
    1.244565533005603078080065};  // theta = pi
}  // namespace frozen

inline U2Params generic_point() {
  return pointspec::make_u2(0.4, {0.3, 0.2},
                            {0.1, std::sqrt(1.0 - 0.09 - 0.04 - 0.01)});
}

// Uniform point on U(2): xi uniform, (alpha, beta) uniform on S^3.
inline U2Params random_point(std::mt19937_64& rng, double L0 = 1.0) {
  std::normal_distribution<double> n(0.0, 1.0);
  std::uniform_real_distribution<double> u(0.0, kPi);
  double v[4];
  double s = 0.0;
  for (double& x : v) {
    x = n(rng);
    s += x * x;
  }
  s = std::sqrt(s);
  return pointspec::make_u2(u(rng), {v[0] / s, v[1] / s}, {v[2] / s, v[3] / s},
                            L0);
}

// Point on the F2 slice xi = pi/2, alpha_R = 0 with |beta_I| <= limit.
inline U2Params random_f2(std::mt19937_64& rng, double limit = 0.95) {
  std::uniform_real_distribution<double> bi(-limit, limit);
  std::uniform_real_distribution<double> ang(0.0, 2.0 * kPi);
  const double b_im = bi(rng);
  const double r = std::sqrt(1.0 - b_im * b_im);
  const double t = ang(rng);
  return pointspec::make_u2(kPi / 2, {0.0, r * std::cos(t)},
                            {r * std::sin(t), b_im});
}

// Circle point theta in [0, pi]: alpha = 0, beta = -sin(theta) - i cos(theta).
inline U2Params circle(double theta) {
  return pointspec::make_u2(kPi / 2, 0.0,
                            {-std::sin(theta), -std::cos(theta)});
}

inline U2Params dirichlet() { return pointspec::make_u2(0.0, -1.0, 0.0); }
inline U2Params neumann() { return pointspec::make_u2(0.0, 1.0, 0.0); }
// (L+, L-) = (0, inf) and (inf, 0)
inline U2Params dirichlet_neumann() {
  return pointspec::make_u2(kPi / 2, {0.0, 1.0}, 0.0);
}
inline U2Params neumann_dirichlet() {
  return pointspec::make_u2(kPi / 2, {0.0, -1.0}, 0.0);
}

}  // namespace pstest
