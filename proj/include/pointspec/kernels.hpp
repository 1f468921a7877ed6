#pragma once

#include <utility>
#include <vector>

#include "pointspec/eigenstates.hpp"
#include "pointspec/spectral.hpp"
#include "pointspec/u2param.hpp"

namespace pointspec {

/// Wick-rotated time, T = -i tau.
class EuclideanTime {
 public:
  /// Throws Error(Domain) unless tau > 0.
  explicit EuclideanTime(double tau);
  double value() const noexcept { return tau_; }

 private:
  double tau_;
};

/// sqrt(m / (2 pi hbar tau))
double free_prefactor(const BoxGeometry& g, EuclideanTime tau);

enum class PrefactorRule { FreeGaussian };

enum class DisplacementFamily {
  Difference,  // (b - a) + offset
  Sum,         // (b + a) + offset
};

struct KernelTerm {
  cdouble weight;
  DisplacementFamily family;
  int image_index;  // nu
  double offset;    // nu * period

  double displacement(double a, double b) const noexcept {
    return (family == DisplacementFamily::Difference ? b - a : b + a) + offset;
  }
};

/// Image-sum representation K = prefactor * sum_nu w_nu exp(-m d_nu^2 / 2 hbar tau).
/// At real time the same list gives exp(i m d^2 / 2 hbar T) terms.
struct KernelTermList {
  PrefactorRule prefactor_rule = PrefactorRule::FreeGaussian;
  std::vector<KernelTerm> terms;
  BoxGeometry geometry;
  int n_images = 0;
  double period = 0.0;  // 2l for separated walls, l for F2
};

inline constexpr double kKernelTailTolerance = 1e-10;
inline constexpr double kKernelAutoTolerance = 1e-12;

/// Image terms for the four scale-free separated cases (L+, L-) in
/// {0, inf}^2 and for F2 (which contains F3), for |nu| <= n_images.
/// Throws Error(UnsupportedFamily) elsewhere.
KernelTermList build_image_terms(const U2Params& p, const BoxGeometry& g,
                                 int n_images);

/// Smallest image count whose Gaussian tail, relative to the prefactor, is
/// below tol.
int required_images(const BoxGeometry& g, EuclideanTime tau, double period,
                    double tol = kKernelAutoTolerance);

/// Relative tail bound of an image sum truncated at |nu| <= n_images.
double image_tail_bound(const BoxGeometry& g, EuclideanTime tau, double period,
                        int n_images);

/// Truncated image sum; Throws Error(TailBoundNotMet) when the omitted
/// images exceed 1e-10 of the prefactor.
cdouble image_heat_kernel(const KernelTermList& terms, double a, double b,
                          EuclideanTime tau, int n_images);

/// Weights of the F2 image sum:
///   C_n = |A+|^2 e^{-i theta n} + |A-|^2 e^{i theta n},
///   D_n = A+ A-* e^{-i theta n} + A- A+* e^{i theta n}.
std::pair<cdouble, cdouble> cn_dn(const F2Coefficients& c, double theta, int n);

/// Spectral sum sum_levels e^{-E tau/hbar} sum_modes psi(b) psi*(a) with the
/// modes computed once. Negative levels enter with their e^{+|E| tau/hbar}
/// growth. The kernel is Hermitian, K(a, b) = conj K(b, a); it is real only
/// for real boundary conditions.
class SpectralKernel {
 public:
  /// Lowest n_levels levels. Throws Error(TailBoundNotMet) when the omitted
  /// levels may contribute more than 1e-10 of the prefactor.
  SpectralKernel(const U2Params& p, const BoxGeometry& g, EuclideanTime tau,
                 int n_levels);

  /// Chooses the momentum cutoff so the tail bound is below tol.
  static SpectralKernel with_tolerance(const U2Params& p, const BoxGeometry& g,
                                       EuclideanTime tau,
                                       double tol = kKernelAutoTolerance);

  cdouble operator()(double a, double b) const;

  const Spectrum& spectrum() const noexcept { return spectrum_; }
  double tail_bound() const noexcept { return tail_; }

 private:
  SpectralKernel(const U2Params& p, const BoxGeometry& g, EuclideanTime tau,
                 Spectrum s);

  struct Weighted {
    double weight;  // e^{-E tau / hbar}
    Mode mode;
  };
  BoxGeometry g_;
  Spectrum spectrum_;
  std::vector<Weighted> modes_;
  double tail_ = 0.0;
};

/// Relative bound on the levels above momentum k_cut.
double spectral_tail_bound(const BoxGeometry& g, EuclideanTime tau,
                           double k_cut);

cdouble spectral_heat_kernel(const U2Params& p, const BoxGeometry& g, double a,
                             double b, EuclideanTime tau, int n_levels);

/// theta_3(z, tau) = sum_n exp(i pi tau n^2 + 2 i n pi z). Throws
/// Error(Domain) unless Im(tau) > 0.
cdouble theta3(cdouble z, cdouble tau);

enum class WallCase { Dirichlet, Neumann };

/// Half-line kernel for L = 0 (Dirichlet) or L = inf (Neumann):
/// prefactor * (exp(-m(b-a)^2/2 hbar tau) -+ exp(-m(b+a)^2/2 hbar tau)).
double halfline_image_kernel(WallCase wall, double a, double b,
                             EuclideanTime tau, double hbar = 1.0,
                             double mass = 1.0);

}  // namespace pointspec
