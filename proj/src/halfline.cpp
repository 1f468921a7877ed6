#include "pointspec/halfline.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/erf.hpp>
#include <cmath>
#include <numbers>

#include "pointspec/error.hpp"

namespace pointspec {

namespace {

constexpr double kPi = std::numbers::pi;
const double kInvSqrt2Pi = 1.0 / std::sqrt(2.0 * kPi);

void check_L0(double L0) {
  if (!(L0 > 0.0) || !std::isfinite(L0)) {
    throw Error(ErrorCode::ConstraintViolation, "wall L0 must be positive");
  }
}

}  // namespace

WallParam WallParam::from_angle(double phi, double L0) {
  check_L0(L0);
  if (!(phi >= 0.0 && phi < kPi)) {
    throw Error(ErrorCode::ConstraintViolation, "wall phi must be in [0, pi)");
  }
  if (phi == 0.0) return WallParam(ExtendedLength::infinity(), phi, L0);
  const double L = std::abs(phi - kPi / 2) < 1e-15 ? 0.0 : L0 / std::tan(phi);
  return WallParam(ExtendedLength::finite(L), phi, L0);
}

WallParam WallParam::from_length(ExtendedLength L, double L0) {
  check_L0(L0);
  if (L.is_infinite()) return WallParam(L, 0.0, L0);
  if (!std::isfinite(L.value())) {
    throw Error(ErrorCode::ConstraintViolation, "wall L must be finite or inf");
  }
  // cot phi = L / L0 with phi in (0, pi)
  return WallParam(L, std::atan2(L0, L.value()), L0);
}

cdouble reflection_coefficient(const WallParam& w, double k) {
  if (w.L().is_infinite()) return 1.0;
  const cdouble ikL(0.0, k * w.L().value());
  return (ikL - 1.0) / (1.0 + ikL);
}

cdouble scattering_state(const WallParam& w, double k, double x) {
  if (!(k > 0.0) || !(x >= 0.0)) {
    throw Error(ErrorCode::Domain, "scattering state needs k > 0 and x >= 0");
  }
  const cdouble r = reflection_coefficient(w, k);
  return kInvSqrt2Pi * (std::polar(1.0, -k * x) + r * std::polar(1.0, k * x));
}

cdouble scattering_derivative(const WallParam& w, double k, double x) {
  if (!(k > 0.0) || !(x >= 0.0)) {
    throw Error(ErrorCode::Domain, "scattering state needs k > 0 and x >= 0");
  }
  const cdouble ik(0.0, k);
  const cdouble r = reflection_coefficient(w, k);
  return kInvSqrt2Pi *
         (-ik * std::polar(1.0, -k * x) + ik * r * std::polar(1.0, k * x));
}

double HalflineBoundState::value(double x) const {
  return std::sqrt(2.0 / L) * std::exp(-x / L);
}

double HalflineBoundState::derivative(double x) const {
  return -value(x) / L;
}

HalflineBoundState bound_state(const WallParam& w, double hbar, double mass) {
  if (w.L().is_infinite() || !(w.L().value() > 0.0)) {
    throw Error(ErrorCode::NoBoundState,
                "a wall bound state needs 0 < L < inf");
  }
  const double L = w.L().value();
  return {-hbar * hbar / (2.0 * mass * L * L), L};
}

double halfline_current(cdouble psi, cdouble dpsi, double hbar, double mass) {
  return hbar / mass * std::imag(std::conj(psi) * dpsi);
}

double halfline_spectral_kernel(const WallParam& w, double a, double b,
                                EuclideanTime tau, double hbar, double mass,
                                double tol) {
  if (!(a >= 0.0) || !(b >= 0.0)) {
    throw Error(ErrorCode::Domain, "half-line kernel needs a, b >= 0");
  }
  const double c = hbar * tau.value() / (2.0 * mass);
  const double k_cut = boost::math::erfc_inv(tol / 2.0) / std::sqrt(c);
  auto integrand = [&](double k) {
    const cdouble r = reflection_coefficient(w, k);
    const double direct = std::cos(k * (b - a));
    const double reflected = std::real(r * std::polar(1.0, k * (a + b)));
    return (direct + reflected) * std::exp(-c * k * k) / kPi;
  };
  // Panels no wider than one oscillation of the reflected term.
  const double panel = 2.0 * kPi / std::max(1.0, a + b);
  const int n_panels = static_cast<int>(std::ceil(k_cut / panel));
  double sum = 0.0;
  using Quad = boost::math::quadrature::gauss_kronrod<double, 61>;
  for (int i = 0; i < n_panels; ++i) {
    const double lo = i * panel;
    const double hi = std::min(k_cut, lo + panel);
    sum += Quad::integrate(integrand, lo, hi, 15, 1e-14);
  }
  if (!w.L().is_infinite() && w.L().value() > 0.0) {
    const HalflineBoundState bs = bound_state(w, hbar, mass);
    sum += std::exp(-bs.energy * tau.value() / hbar) * bs.value(a) * bs.value(b);
  }
  return sum;
}

}  // namespace pointspec
