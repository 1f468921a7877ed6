#include "pointspec/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

#include "pointspec/error.hpp"

namespace pointspec {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEps = std::numeric_limits<double>::epsilon();

// Everything below works in u = k l (or v = kappa l) with lambda = L0 / l;
// the conditions depend only on (u, lambda, xi, alpha_R, beta_I).
struct Reduced {
  double lambda;
  double sin_xi;
  double a;  // cos xi - alpha_R
  double b;  // cos xi + alpha_R
  double beta_im;
};

Reduced reduce(const U2Params& p, const BoxGeometry& g) {
  const double c = std::cos(p.xi());
  return {p.L0() / g.l, std::sin(p.xi()), c - p.alpha_re(), c + p.alpha_re(),
          p.beta_im()};
}

double sinc(double u) {
  if (std::abs(u) < 1e-4) return 1.0 - u * u / 6.0;
  return std::sin(u) / u;
}

double sinc_prime(double u) {
  if (std::abs(u) < 1e-3) return -u / 3.0 + u * u * u / 30.0;
  return (u * std::cos(u) - std::sin(u)) / (u * u);
}

// f(u) / u for the positive condition; same sign as f on u > 0 and free of
// the trivial root at u = 0.
double pos_reduced(const Reduced& r, double u) {
  const double lu = r.lambda * u;
  return 2.0 * r.lambda * (r.beta_im + r.sin_xi * std::cos(u)) +
         (r.a + r.b * lu * lu) * sinc(u);
}

double pos_reduced_prime(const Reduced& r, double u) {
  const double lu = r.lambda * u;
  return -2.0 * r.lambda * r.sin_xi * std::sin(u) +
         2.0 * r.b * r.lambda * lu * sinc(u) +
         (r.a + r.b * lu * lu) * sinc_prime(u);
}

// -expm1(-2v) / v, with its v -> 0 limit.
double damp_ratio(double v) {
  if (v < 1e-8) return 2.0 - 2.0 * v;
  return -std::expm1(-2.0 * v) / v;
}

double damp_ratio_prime(double v) {
  if (v < 1e-4) return -2.0 + (8.0 / 3.0) * v;
  return (2.0 * v * std::exp(-2.0 * v) + std::expm1(-2.0 * v)) / (v * v);
}

// 2 e^{-v} f(-i v/l) / v for the negative condition, written in decaying
// exponentials only. Near-degenerate bound-state pairs differ from a double
// root by e^{-2v}-small terms that the cosh/sinh form loses to cancellation.
double neg_reduced(const Reduced& r, double v) {
  const double lv = r.lambda * v;
  return 2.0 * r.lambda * r.sin_xi * (1.0 + std::exp(-2.0 * v)) +
         (r.a - r.b * lv * lv) * damp_ratio(v) +
         4.0 * r.lambda * r.beta_im * std::exp(-v);
}

double neg_reduced_prime(const Reduced& r, double v) {
  const double lv = r.lambda * v;
  return -4.0 * r.lambda * r.sin_xi * std::exp(-2.0 * v) -
         2.0 * r.b * r.lambda * lv * damp_ratio(v) +
         (r.a - r.b * lv * lv) * damp_ratio_prime(v) -
         4.0 * r.lambda * r.beta_im * std::exp(-v);
}

double neg_reduced_scale(const Reduced& r, double v) {
  const double lv = r.lambda * v;
  return 2.0 * r.lambda * std::abs(r.sin_xi) * 2.0 +
         (std::abs(r.a) + std::abs(r.b) * lv * lv) * 2.0 +
         4.0 * r.lambda * std::abs(r.beta_im);
}

using Fn = std::function<double(double)>;

bool positive_sign(const Fn& f, double x, double value, double nudge) {
  // An exact zero at a grid point takes the sign just to its right so that
  // touching zeros are not reported twice.
  if (value == 0.0) value = f(x + nudge);
  return value > 0.0;
}

double bisect(const Fn& f, double lo, double hi) {
  double flo = f(lo);
  if (flo == 0.0) return lo;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
    if (hi - lo <= 4.0 * kEps * std::max(1.0, std::abs(hi))) break;
  }
  return 0.5 * (lo + hi);
}

struct ScanResult {
  std::vector<Root> roots;
};

// Scans f over the ascending grid. `touches` decides whether an extremum
// value counts as a tangential zero.
ScanResult scan_grid(const std::vector<double>& grid, const Fn& f,
                     const Fn& df,
                     const std::function<bool(double, double)>& touches,
                     bool flag_tangential) {
  ScanResult out;
  const std::size_t n = grid.size();
  if (n < 2) return out;
  std::vector<double> fv(n), dv(n);
  std::vector<bool> fs(n), ds(n);
  for (std::size_t i = 0; i < n; ++i) {
    fv[i] = f(grid[i]);
    dv[i] = df(grid[i]);
  }
  for (std::size_t i = 0; i < n; ++i) {
    const double step =
        i + 1 < n ? grid[i + 1] - grid[i] : grid[i] - grid[i - 1];
    const double nudge = 1e-9 * step;
    fs[i] = positive_sign(f, grid[i], fv[i], nudge);
    ds[i] = positive_sign(df, grid[i], dv[i], nudge);
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double lo = grid[i], hi = grid[i + 1];
    if (fs[i] != fs[i + 1]) {
      // A rounding-level odd term can split a touching zero into two sign
      // changes a few ulps apart; a flat crossing is that double root.
      const double x = bisect(f, lo, hi);
      const bool flat = touches(x, df(x) * (hi - lo));
      out.roots.push_back({x, flat ? 2 : 1, flat && flag_tangential});
      continue;
    }
    if (ds[i] == ds[i + 1]) continue;
    const double ext = bisect(df, lo, hi);
    const double fe = f(ext);
    if (touches(ext, fe)) {
      out.roots.push_back({ext, 2, flag_tangential});
    } else if ((fe > 0.0) != fs[i]) {
      out.roots.push_back({bisect(f, lo, ext), 1, false});
      out.roots.push_back({bisect(f, ext, hi), 1, false});
    }
  }
  std::sort(out.roots.begin(), out.roots.end(),
            [](const Root& x, const Root& y) { return x.value < y.value; });
  // Merge duplicates produced at cell boundaries; keep the higher multiplicity.
  std::vector<Root> merged;
  for (const Root& r : out.roots) {
    if (!merged.empty() &&
        std::abs(r.value - merged.back().value) <=
            1e-9 * std::max(1.0, r.value)) {
      if (r.multiplicity > merged.back().multiplicity) merged.back() = r;
      continue;
    }
    merged.push_back(r);
  }
  out.roots = std::move(merged);
  return out;
}

// Start of the scan when a zero mode is present: the reduced function then
// vanishes at the origin and the neighbourhood belongs to the zero level.
constexpr double kZeroModeExclusion = 1e-4;

std::vector<Root> positive_roots_reduced(const U2Params& p,
                                         const BoxGeometry& g, double u_max) {
  const Reduced r = reduce(p, g);
  const double step = kPi / 16.0;
  std::vector<double> grid;
  const double u0 = zero_mode_exists(p, g) ? kZeroModeExclusion : 0.0;
  if (u_max <= u0) return {};
  grid.push_back(u0);
  const auto cells = static_cast<std::size_t>(std::ceil(u_max / step));
  for (std::size_t i = 1; i < cells; ++i) {
    const double u = static_cast<double>(i) * step;
    if (u > u0) grid.push_back(u);
  }
  grid.push_back(u_max);
  const Fn f = [&r](double u) { return pos_reduced(r, u); };
  const Fn df = [&r](double u) { return pos_reduced_prime(r, u); };
  const auto touches = [&r](double u, double fe) {
    const double lu = u * r.lambda;
    return std::abs(u * fe) <= 1e-10 * std::max(1.0, lu * lu);
  };
  return scan_grid(grid, f, df, touches, false).roots;
}

std::vector<double> negative_grid(double v0, double v_end) {
  std::vector<double> grid;
  double v = v0;
  const double fine = 1.0 / 64.0;
  while (v < v_end) {
    grid.push_back(v);
    v = v < 8.0 ? v + fine : v * 1.005;
  }
  grid.push_back(v_end);
  return grid;
}

}  // namespace

void BoxGeometry::validate() const {
  if (!(l > 0.0) || !(hbar > 0.0) || !(mass > 0.0) || !std::isfinite(l) ||
      !std::isfinite(hbar) || !std::isfinite(mass)) {
    throw Error(ErrorCode::ConstraintViolation,
                "geometry needs l > 0, hbar > 0, mass > 0");
  }
}

const char* to_string(Sector s) noexcept {
  switch (s) {
    case Sector::Positive: return "positive";
    case Sector::Zero: return "zero";
    case Sector::Negative: return "negative";
  }
  return "unknown";
}

double positive_condition(const U2Params& p, const BoxGeometry& g, double k) {
  const double kl0 = k * p.L0();
  const double c = std::cos(p.xi());
  const double kl = k * g.l;
  return 2.0 * kl0 * (p.beta_im() + std::sin(p.xi()) * std::cos(kl)) +
         ((c - p.alpha_re()) + (c + p.alpha_re()) * kl0 * kl0) * std::sin(kl);
}

double negative_condition(const U2Params& p, const BoxGeometry& g,
                          double kappa) {
  if (!(kappa > 0.0)) {
    throw Error(ErrorCode::Domain, "negative condition needs kappa > 0");
  }
  const double kl0 = kappa * p.L0();
  const double c = std::cos(p.xi());
  const double kl = kappa * g.l;
  return 2.0 * kl0 * (p.beta_im() + std::sin(p.xi()) * std::cosh(kl)) +
         ((c - p.alpha_re()) - (c + p.alpha_re()) * kl0 * kl0) * std::sinh(kl);
}

double zero_mode_lhs(const U2Params& p, const BoxGeometry& g) {
  return (p.beta_im() + std::sin(p.xi())) -
         g.l / (2.0 * p.L0()) * (p.alpha_re() - std::cos(p.xi()));
}

bool zero_mode_exists(const U2Params& p, const BoxGeometry& g, double tol) {
  return std::abs(zero_mode_lhs(p, g)) < tol;
}

int zero_mode_multiplicity(const U2Params& p, const BoxGeometry& g,
                           double tol) {
  if (!zero_mode_exists(p, g, tol)) return 0;
  // Columns for psi = A' x / l and psi = B: the mode space is two-dimensional
  // only if the whole 2x2 boundary matrix vanishes.
  const Matrix2c U = to_matrix(p);
  const double lambda = p.L0() / g.l;
  const cdouble i1(0.0, 1.0);
  double norm2 = 0.0;
  for (int row = 0; row < 2; ++row) {
    const cdouble um = U[row][0] - (row == 0 ? 1.0 : 0.0);
    const cdouble un = U[row][1] - (row == 1 ? 1.0 : 0.0);
    const cdouble up = U[row][0] + (row == 0 ? 1.0 : 0.0);
    const cdouble uq = U[row][1] + (row == 1 ? 1.0 : 0.0);
    const cdouble col_a = un + i1 * lambda * (up - uq);
    const cdouble col_b = um + un;
    norm2 += std::norm(col_a) + std::norm(col_b);
  }
  return std::sqrt(norm2) < tol * std::max(1.0, lambda) ? 2 : 1;
}

std::vector<Root> find_positive_roots(const U2Params& p, const BoxGeometry& g,
                                      double k_max) {
  g.validate();
  if (!(k_max > 0.0)) return {};
  auto roots = positive_roots_reduced(p, g, k_max * g.l);
  for (Root& r : roots) r.value /= g.l;
  return roots;
}

std::vector<Root> find_negative_roots(const U2Params& p, const BoxGeometry& g) {
  g.validate();
  const Reduced r = reduce(p, g);
  const Fn f = [&r](double v) { return neg_reduced(r, v); };
  const Fn df = [&r](double v) { return neg_reduced_prime(r, v); };

  // Beyond v_max the quadratic term dominates; push the window out until
  // the sign survives a full doubling.
  double v_max = std::max({10.0, 4.0 / r.lambda, 4.0 * r.lambda});
  for (int it = 0; it < 60; ++it) {
    const double ref = f(v_max);
    bool stable = ref != 0.0;
    for (int j = 1; j <= 256 && stable; ++j) {
      const double v = v_max * (1.0 + j / 256.0);
      stable = (f(v) > 0.0) == (ref > 0.0);
    }
    if (stable) break;
    v_max *= 2.0;
  }

  const double v0 = zero_mode_exists(p, g) ? kZeroModeExclusion : 0.0;
  const auto touches = [&r](double v, double fe) {
    return std::abs(fe) <= 64.0 * kEps * neg_reduced_scale(r, v);
  };
  auto roots = scan_grid(negative_grid(v0, v_max), f, df, touches, true).roots;
  roots.erase(std::remove_if(roots.begin(), roots.end(),
                             [v0](const Root& x) { return x.value <= v0; }),
              roots.end());
  if (roots.size() > 2) {
    throw Error(ErrorCode::InternalContradiction,
                "more than two negative-energy roots detected");
  }
  for (Root& x : roots) x.value /= g.l;
  return roots;
}

namespace {

void append_nonpositive(const U2Params& p, const BoxGeometry& g,
                        std::vector<Level>& levels) {
  const double unit = g.energy_unit();
  auto neg = find_negative_roots(p, g);
  // Deepest first.
  std::sort(neg.begin(), neg.end(),
            [](const Root& x, const Root& y) { return x.value > y.value; });
  for (const Root& r : neg) {
    levels.push_back({Sector::Negative, r.value, -unit * r.value * r.value,
                      r.multiplicity});
  }
  if (const int m = zero_mode_multiplicity(p, g); m > 0) {
    levels.push_back({Sector::Zero, 0.0, 0.0, m});
  }
}

}  // namespace

Spectrum spectrum(const U2Params& p, const BoxGeometry& g, int n_levels) {
  g.validate();
  if (n_levels < 1) {
    throw Error(ErrorCode::Domain, "spectrum needs n_levels >= 1");
  }
  Spectrum s;
  append_nonpositive(p, g, s.levels);
  const auto have = static_cast<int>(s.levels.size());
  if (have >= n_levels) {
    s.levels.resize(static_cast<std::size_t>(n_levels));
    return s;
  }
  const int need = n_levels - have;
  double k_max = (need + 2) * kPi / g.l;
  std::vector<Root> pos;
  for (int it = 0; it < 40; ++it) {
    pos = find_positive_roots(p, g, k_max);
    if (static_cast<int>(pos.size()) >= need) break;
    k_max *= 2.0;
  }
  if (static_cast<int>(pos.size()) < need) {
    throw Error(ErrorCode::InternalContradiction,
                "positive spectrum exhausted before n_levels were found");
  }
  const double unit = g.energy_unit();
  for (int i = 0; i < need; ++i) {
    const Root& r = pos[static_cast<std::size_t>(i)];
    s.levels.push_back(
        {Sector::Positive, r.value, unit * r.value * r.value, r.multiplicity});
  }
  s.k_max = k_max;
  return s;
}

Spectrum spectrum_up_to(const U2Params& p, const BoxGeometry& g, double k_max) {
  g.validate();
  Spectrum s;
  append_nonpositive(p, g, s.levels);
  const double unit = g.energy_unit();
  for (const Root& r : find_positive_roots(p, g, k_max)) {
    s.levels.push_back(
        {Sector::Positive, r.value, unit * r.value * r.value, r.multiplicity});
  }
  s.k_max = k_max;
  return s;
}

std::vector<double> expanded_energies(const Spectrum& s) {
  std::vector<double> e;
  for (const Level& lv : s.levels) {
    for (int m = 0; m < lv.multiplicity; ++m) e.push_back(lv.energy);
  }
  return e;
}

SpectralFingerprint spectral_fingerprint(const U2Params& p) {
  return {p.xi(), p.alpha_re(), p.beta_im()};
}

}  // namespace pointspec
