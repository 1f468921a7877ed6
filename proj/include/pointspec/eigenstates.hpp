#pragma once

#include <array>
#include <vector>

#include "pointspec/spectral.hpp"
#include "pointspec/u2param.hpp"

namespace pointspec {

/// One eigenfunction on [0, l]:
///   positive: A e^{ikx} + B e^{-ikx}
///   negative: A e^{kappa x} + B e^{-kappa x}
///   zero:     A x + B
struct Mode {
  Sector sector = Sector::Positive;
  double parameter = 0.0;  // k or kappa; unused for the zero mode
  cdouble coeff_a{0.0, 0.0};
  cdouble coeff_b{0.0, 0.0};
  bool normalized = false;
};

cdouble mode_value(const Mode& m, double x);
cdouble mode_derivative(const Mode& m, double x);

/// <m1, m2> = int_0^l conj(psi1) psi2 dx, from closed-form antiderivatives.
cdouble inner_product(const Mode& m1, const Mode& m2, const BoxGeometry& g);
double norm(const Mode& m, const BoxGeometry& g);

/// Psi = (psi(0), psi(l)), Psi' = (psi'(0), -psi'(l)).
struct BoundaryData {
  std::array<cdouble, 2> psi;
  std::array<cdouble, 2> dpsi;
};

BoundaryData boundary_data(const Mode& m, const BoxGeometry& g);

/// |(U - I) Psi + i L0 (U + I) Psi'| / |(Psi, L0 Psi')|
double boundary_residual(const Mode& m, const U2Params& p,
                         const BoxGeometry& g);

/// The 2x2 boundary system for (A_k, B_k) written with K+- = 1 +- k L0. It is
/// e^{-i xi} times the generic (U - I) Psi + i L0 (U + I) Psi' matrix.
Matrix2c positive_boundary_matrix(const U2Params& p, const BoxGeometry& g,
                                  double k);

inline constexpr double kNullspaceTolerance = 1e-8;

/// Orthonormal basis of eigenfunctions at a root k of the positive condition:
/// one mode for a simple root, two for a degenerate one. The nullspace is
/// taken from the SVD of positive_boundary_matrix; singular values below
/// 1e-8 * 2(1 + k L0) count as zero. Throws Error(NoNullspace) when k is not
/// a root.
std::vector<Mode> solve_coefficients(const U2Params& p, const BoxGeometry& g,
                                     double k);

/// Normalized A x + B. Throws Error(NoZeroMode) when none exists.
Mode zero_mode(const U2Params& p, const BoxGeometry& g);
std::vector<Mode> zero_modes(const U2Params& p, const BoxGeometry& g);

/// Normalized bound state at a root kappa of the negative condition.
Mode negative_mode(const U2Params& p, const BoxGeometry& g, double kappa);
std::vector<Mode> negative_modes(const U2Params& p, const BoxGeometry& g,
                                 double kappa);

/// All orthonormal modes belonging to one level of a spectrum.
std::vector<Mode> modes_for_level(const U2Params& p, const BoxGeometry& g,
                                  const Level& level);

/// Closed-form F2 amplitudes
///   A+- = [(1 + alpha_I) + (beta_I - i beta_R) e^{-+i theta}]
///         / (2 sqrt(l (1 + alpha_I)(1 + beta_I cos theta)))
/// for the branch s = +1 (n >= 0) or s = -1 (n <= -1). Throws
/// Error(NotInF2) off F2 and Error(OutOfDomain) at alpha_I = -1,
/// beta_I = +-1 or for an n outside the branch.
struct F2Coefficients {
  cdouble a_plus;
  cdouble a_minus;
};

F2Coefficients f2_coefficients(const U2Params& p, const BoxGeometry& g, int s,
                               int n);

/// psi_n^s = A_s e^{i k_n^s x} - A_{-s} e^{-i k_n^s x}, k_n^s = s (theta + 2 n pi)/l,
/// rewritten with positive momentum. No phase convention is applied.
Mode f2_mode(const U2Params& p, const BoxGeometry& g, int s, int n);

/// Unit norm, then rotated so the first nonvanishing of psi(0), psi'(0) is
/// real and positive. Throws Error(ZeroFunction) for the zero function.
Mode normalize(const Mode& m, const BoxGeometry& g);

/// j(x) = (hbar/m) Im(psi* psi').
double probability_current(const Mode& m, const BoxGeometry& g, double x);

}  // namespace pointspec
