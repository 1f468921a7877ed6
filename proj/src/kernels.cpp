#include "pointspec/kernels.hpp"

#include <boost/math/special_functions/erf.hpp>
#include <cmath>
#include <limits>
#include <numbers>

#include "pointspec/error.hpp"

namespace pointspec {

namespace {

constexpr double kPi = std::numbers::pi;

enum class WallKind { Dirichlet, Neumann, Other };

WallKind wall_kind(const ExtendedLength& L, double L0) {
  if (L.is_infinite()) return WallKind::Neumann;
  if (std::abs(L.value()) < kClassifyTolerance * L0) return WallKind::Dirichlet;
  return WallKind::Other;
}

void add_term(KernelTermList& list, cdouble w, DisplacementFamily fam, int nu,
              double period) {
  list.terms.push_back({w, fam, nu, nu * period});
}

}  // namespace

EuclideanTime::EuclideanTime(double tau) : tau_(tau) {
  if (!(tau > 0.0) || !std::isfinite(tau)) {
    throw Error(ErrorCode::Domain, "Euclidean time needs tau > 0");
  }
}

double free_prefactor(const BoxGeometry& g, EuclideanTime tau) {
  return std::sqrt(g.mass / (2.0 * kPi * g.hbar * tau.value()));
}

KernelTermList build_image_terms(const U2Params& p, const BoxGeometry& g,
                                 int n_images) {
  g.validate();
  if (n_images < 0) throw Error(ErrorCode::Domain, "n_images must be >= 0");
  const SubfamilyFlags flags = classify(p);
  KernelTermList list;
  list.geometry = g;
  list.n_images = n_images;

  if (flags.in_f1) {
    const SeparatedLengths sl = separated_lengths(p);
    const WallKind left = wall_kind(sl.l_plus, p.L0());
    const WallKind right = wall_kind(sl.l_minus, p.L0());
    if (left == WallKind::Other || right == WallKind::Other) {
      throw Error(ErrorCode::UnsupportedFamily,
                  "image sums exist only for walls with L in {0, inf}");
    }
    // Direct paths carry (-1)^nu when exactly one wall is Dirichlet; the
    // reflected family carries the phase of a hit on the left wall.
    const bool mixed = left != right;
    const double reflect = left == WallKind::Dirichlet ? -1.0 : 1.0;
    list.period = 2.0 * g.l;
    for (int nu = -n_images; nu <= n_images; ++nu) {
      const double sign = mixed && (nu % 2 != 0) ? -1.0 : 1.0;
      add_term(list, sign, DisplacementFamily::Difference, nu, list.period);
      add_term(list, sign * reflect, DisplacementFamily::Sum, nu, list.period);
    }
    return list;
  }

  if (flags.in_f2) {
    const double theta = f2_theta(p);
    list.period = g.l;
    if (std::abs(1.0 - std::abs(p.beta_im())) < kClassifyTolerance) {
      // beta_I = +-1 forces alpha = 0: periodic (theta = 0) or antiperiodic
      // (theta = pi) circle, where the closed amplitudes degenerate.
      for (int nu = -n_images; nu <= n_images; ++nu) {
        add_term(list, std::polar(1.0, -theta * nu),
                 DisplacementFamily::Difference, nu, list.period);
      }
      return list;
    }
    const F2Coefficients c = f2_coefficients(p, g, 1, 0);
    for (int nu = -n_images; nu <= n_images; ++nu) {
      const auto [cn, dn] = cn_dn(c, theta, nu);
      add_term(list, g.l * cn, DisplacementFamily::Difference, nu, list.period);
      add_term(list, -g.l * dn, DisplacementFamily::Sum, nu, list.period);
    }
    return list;
  }

  throw Error(ErrorCode::UnsupportedFamily,
              "image sums are available for F2 and the scale-free separated "
              "cases only");
}

double image_tail_bound(const BoxGeometry& g, EuclideanTime tau, double period,
                        int n_images) {
  const double d0 = (n_images + 1) * period - 2.0 * g.l;
  if (d0 <= 0.0) return std::numeric_limits<double>::infinity();
  const double alpha = g.mass / (2.0 * g.hbar * tau.value());
  const double ratio = std::exp(-2.0 * alpha * d0 * period);
  // Two families, |w| <= 2, both signs of nu.
  return 8.0 * std::exp(-alpha * d0 * d0) / (1.0 - ratio);
}

int required_images(const BoxGeometry& g, EuclideanTime tau, double period,
                    double tol) {
  int n = 1;
  while (image_tail_bound(g, tau, period, n) > tol) {
    ++n;
    if (n > 1000000) {
      throw Error(ErrorCode::TailBoundNotMet, "image count does not converge");
    }
  }
  return n;
}

cdouble image_heat_kernel(const KernelTermList& terms, double a, double b,
                          EuclideanTime tau, int n_images) {
  const BoxGeometry& g = terms.geometry;
  const int n = std::min(n_images, terms.n_images);
  if (image_tail_bound(g, tau, terms.period, n) > kKernelTailTolerance) {
    throw Error(ErrorCode::TailBoundNotMet,
                "too few images for the requested Euclidean time");
  }
  const double alpha = g.mass / (2.0 * g.hbar * tau.value());
  cdouble sum = 0.0;
  for (const KernelTerm& t : terms.terms) {
    if (std::abs(t.image_index) > n) continue;
    const double d = t.displacement(a, b);
    sum += t.weight * std::exp(-alpha * d * d);
  }
  return free_prefactor(g, tau) * sum;
}

std::pair<cdouble, cdouble> cn_dn(const F2Coefficients& c, double theta,
                                  int n) {
  const cdouble em = std::polar(1.0, -theta * n);
  const cdouble ep = std::polar(1.0, theta * n);
  const cdouble cn = std::norm(c.a_plus) * em + std::norm(c.a_minus) * ep;
  const cdouble dn = c.a_plus * std::conj(c.a_minus) * em +
                     c.a_minus * std::conj(c.a_plus) * ep;
  return {cn, dn};
}

double spectral_tail_bound(const BoxGeometry& g, EuclideanTime tau,
                           double k_cut) {
  // Level density l/pi per unit k, up to two modes of |psi|^2 <= 2/l each,
  // integrated against the Gaussian weight and divided by the prefactor.
  const double c = g.hbar * tau.value() / (2.0 * g.mass);
  return 8.0 * std::erfc(std::max(0.0, k_cut) * std::sqrt(c));
}

SpectralKernel::SpectralKernel(const U2Params& p, const BoxGeometry& g,
                               EuclideanTime tau, Spectrum s)
    : g_(g), spectrum_(std::move(s)) {
  double k_top = 0.0;
  for (const Level& lv : spectrum_.levels) {
    if (lv.sector == Sector::Positive) k_top = std::max(k_top, lv.parameter);
    const double w = std::exp(-lv.energy * tau.value() / g.hbar);
    for (const Mode& m : modes_for_level(p, g, lv)) modes_.push_back({w, m});
  }
  tail_ = spectral_tail_bound(g, tau, std::max(k_top, spectrum_.k_max));
}

SpectralKernel::SpectralKernel(const U2Params& p, const BoxGeometry& g,
                               EuclideanTime tau, int n_levels)
    : SpectralKernel(p, g, tau, [&] {
        Spectrum s = pointspec::spectrum(p, g, n_levels);
        s.k_max = 0.0;  // the tail starts at the last level actually kept
        return s;
      }()) {
  if (tail_ > kKernelTailTolerance) {
    throw Error(ErrorCode::TailBoundNotMet,
                "too few levels for the requested Euclidean time");
  }
}

SpectralKernel SpectralKernel::with_tolerance(const U2Params& p,
                                              const BoxGeometry& g,
                                              EuclideanTime tau, double tol) {
  g.validate();
  const double c = g.hbar * tau.value() / (2.0 * g.mass);
  // slightly past the exact cutoff so the rounded bound stays below tol
  const double k_cut = boost::math::erfc_inv(tol / 8.0) / std::sqrt(c) * (1.0 + 1e-9);
  return SpectralKernel(p, g, tau, spectrum_up_to(p, g, k_cut));
}

cdouble SpectralKernel::operator()(double a, double b) const {
  cdouble sum = 0.0;
  for (const Weighted& w : modes_) {
    sum += w.weight * mode_value(w.mode, b) * std::conj(mode_value(w.mode, a));
  }
  return sum;
}

cdouble spectral_heat_kernel(const U2Params& p, const BoxGeometry& g, double a,
                             double b, EuclideanTime tau, int n_levels) {
  return SpectralKernel(p, g, tau, n_levels)(a, b);
}

cdouble theta3(cdouble z, cdouble tau) {
  if (!(tau.imag() > 0.0)) {
    throw Error(ErrorCode::Domain, "theta3 needs Im(tau) > 0");
  }
  const cdouble i1(0.0, 1.0);
  auto term = [&](double n) {
    return std::exp(i1 * kPi * tau * n * n + 2.0 * i1 * kPi * n * z);
  };
  // |term(n)| peaks at n = -Im z / Im tau; sum outward from there.
  const double center = std::round(-z.imag() / tau.imag());
  cdouble sum = term(center);
  for (int j = 1; j < 100000; ++j) {
    const cdouble up = term(center + j);
    const cdouble down = term(center - j);
    sum += up + down;
    if (std::abs(up) < 1e-17 && std::abs(down) < 1e-17) break;
  }
  return sum;
}

double halfline_image_kernel(WallCase wall, double a, double b,
                             EuclideanTime tau, double hbar, double mass) {
  const double alpha = mass / (2.0 * hbar * tau.value());
  const double pref = std::sqrt(mass / (2.0 * kPi * hbar * tau.value()));
  const double direct = std::exp(-alpha * (b - a) * (b - a));
  const double reflected = std::exp(-alpha * (b + a) * (b + a));
  return pref * (wall == WallCase::Dirichlet ? direct - reflected
                                             : direct + reflected);
}

}  // namespace pointspec
