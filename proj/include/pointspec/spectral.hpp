#pragma once

#include <vector>

#include "pointspec/u2param.hpp"

namespace pointspec {

/// Interval [0, l] and the constants fixing E = hbar^2 k^2 / 2m.
struct BoxGeometry {
  double l = 1.0;
  double hbar = 1.0;
  double mass = 1.0;

  /// Throws Error(ConstraintViolation) unless all three are positive.
  void validate() const;

  /// hbar^2 / 2m
  double energy_unit() const noexcept { return hbar * hbar / (2.0 * mass); }
};

enum class Sector { Positive, Zero, Negative };

const char* to_string(Sector s) noexcept;

struct Level {
  Sector sector = Sector::Positive;
  double parameter = 0.0;  // k, kappa, or 0 for the zero mode
  double energy = 0.0;
  int multiplicity = 1;
};

struct Spectrum {
  std::vector<Level> levels;  // ascending energy
  double k_max = 0.0;
};

struct Root {
  double value = 0.0;
  int multiplicity = 1;
  // Set for tangential negative roots; their physical reading is unsettled.
  bool needs_review = false;
};

inline constexpr double kZeroModeTolerance = 1e-9;

/// Left side of the positive-energy condition at momentum k (any sign).
double positive_condition(const U2Params& p, const BoxGeometry& g, double k);

/// Same condition continued to k = -i kappa. Throws Error(Domain) for
/// kappa <= 0.
double negative_condition(const U2Params& p, const BoxGeometry& g,
                          double kappa);

/// (beta_I + sin xi) - (l / 2 L0)(alpha_R - cos xi)
double zero_mode_lhs(const U2Params& p, const BoxGeometry& g);

bool zero_mode_exists(const U2Params& p, const BoxGeometry& g,
                      double tol = kZeroModeTolerance);

/// Dimension of the space of A x + B satisfying the boundary conditions
/// (0 when no zero mode exists).
int zero_mode_multiplicity(const U2Params& p, const BoxGeometry& g,
                           double tol = kZeroModeTolerance);

/// All roots of positive_condition in (0, k_max], ascending, each of
/// multiplicity 1 or 2.
///
/// The search runs in u = k l with lambda = L0 / l over a uniform grid of
/// step pi/16. Sign changes are bisected to machine precision. Inside cells
/// without a sign change, local extrema of the residual are located from
/// the derivative; an extremum that crosses zero yields two simple roots and
/// one that only touches zero (|residual| <= 1e-10 max(1, (u lambda)^2))
/// yields a root of multiplicity 2.
std::vector<Root> find_positive_roots(const U2Params& p, const BoxGeometry& g,
                                      double k_max);

/// The 0, 1 or 2 negative-energy roots kappa > 0. Throws
/// Error(InternalContradiction) if more than two are detected.
std::vector<Root> find_negative_roots(const U2Params& p, const BoxGeometry& g);

/// The n_levels lowest distinct levels (negative, zero, positive).
Spectrum spectrum(const U2Params& p, const BoxGeometry& g, int n_levels);

/// Every level whose momentum does not exceed k_max, plus all negative and
/// zero levels.
Spectrum spectrum_up_to(const U2Params& p, const BoxGeometry& g, double k_max);

/// Energies repeated by multiplicity, ascending.
std::vector<double> expanded_energies(const Spectrum& s);

struct SpectralFingerprint {
  double xi;
  double alpha_re;
  double beta_im;

  bool operator==(const SpectralFingerprint&) const = default;
};

SpectralFingerprint spectral_fingerprint(const U2Params& p);

}  // namespace pointspec
