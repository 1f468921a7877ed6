#pragma once

#include <complex>

#include "pointspec/kernels.hpp"
#include "pointspec/u2param.hpp"

namespace pointspec {

/// Wall condition psi(0) + L psi'(0) = 0 on x >= 0, L = L0 cot(phi).
class WallParam {
 public:
  /// phi in [0, pi), L0 > 0. phi = 0 gives L = inf, phi = pi/2 gives L = 0.
  static WallParam from_angle(double phi, double L0 = 1.0);
  /// Any real L or infinity; phi is derived with L0.
  static WallParam from_length(ExtendedLength L, double L0 = 1.0);

  const ExtendedLength& L() const noexcept { return L_; }
  double phi() const noexcept { return phi_; }
  double L0() const noexcept { return L0_; }

 private:
  WallParam(ExtendedLength L, double phi, double L0)
      : L_(L), phi_(phi), L0_(L0) {}
  ExtendedLength L_;
  double phi_;
  double L0_;
};

/// R(k) = (ikL - 1)/(1 + ikL), R = 1 at L = inf. This is the coefficient for
/// which e^{-ikx} + R e^{ikx} satisfies the wall condition; it is -1 at L = 0.
cdouble reflection_coefficient(const WallParam& w, double k);

/// (1/sqrt(2 pi)) [e^{-ikx} + R(k) e^{ikx}]. Throws Error(Domain) unless
/// k > 0 and x >= 0.
cdouble scattering_state(const WallParam& w, double k, double x);
cdouble scattering_derivative(const WallParam& w, double k, double x);

struct HalflineBoundState {
  double energy;  // -hbar^2 / 2 m L^2
  double L;

  double value(double x) const;       // sqrt(2/L) e^{-x/L}
  double derivative(double x) const;
};

/// Throws Error(NoBoundState) unless 0 < L < inf.
HalflineBoundState bound_state(const WallParam& w, double hbar = 1.0,
                               double mass = 1.0);

/// j = (hbar/m) Im(conj(psi) psi').
double halfline_current(cdouble psi, cdouble dpsi, double hbar = 1.0,
                        double mass = 1.0);

/// Euclidean kernel from the continuum, int_0^inf dk e^{-hbar k^2 tau/2m}
/// psi_k(b) conj(psi_k(a)), plus the bound-state term for 0 < L < inf. The
/// k-integral is adaptive Gauss-Kronrod up to a cutoff whose Gaussian tail is
/// below tol relative to the free prefactor.
double halfline_spectral_kernel(const WallParam& w, double a, double b,
                                EuclideanTime tau, double hbar = 1.0,
                                double mass = 1.0, double tol = 1e-12);

}  // namespace pointspec
