#include "pointspec/eigenstates.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "pointspec/error.hpp"

namespace pointspec {

namespace {

constexpr cdouble kI{0.0, 1.0};

// coef * x^power * e^{rate (x - anchor)}; anchors keep every term bounded
// on [0, l] so large kappa l neither overflows nor cancels.
struct Term {
  cdouble coef;
  cdouble rate;
  double anchor;
  int power;
};

std::vector<Term> terms_of(const Mode& m, double l) {
  switch (m.sector) {
    case Sector::Positive: {
      const double k = m.parameter;
      return {{m.coeff_a, cdouble(0.0, k), 0.0, 0},
              {m.coeff_b, cdouble(0.0, -k), 0.0, 0}};
    }
    case Sector::Negative: {
      const double kap = m.parameter;
      return {{m.coeff_a * std::exp(kap * l), cdouble(kap, 0.0), l, 0},
              {m.coeff_b, cdouble(-kap, 0.0), 0.0, 0}};
    }
    case Sector::Zero:
      return {{m.coeff_a, 0.0, 0.0, 1}, {m.coeff_b, 0.0, 0.0, 0}};
  }
  return {};
}

// int_0^l x^p e^{c (x - s)} dx for p <= 2.
cdouble moment(int p, cdouble c, double s, double l) {
  const cdouble cl = c * l;
  if (std::abs(cl) < 1.0) {
    // sum_j c^j l^{p+j+1} / (j! (p+j+1)), times e^{-c s}
    cdouble sum = 0.0;
    cdouble pow_term = std::pow(l, p + 1);  // c^j l^{p+j+1} / j!
    for (int j = 0; j < 40; ++j) {
      sum += pow_term / static_cast<double>(p + j + 1);
      pow_term *= cl / static_cast<double>(j + 1);
      if (std::abs(pow_term) < 1e-18 * std::abs(sum)) break;
    }
    return sum * std::exp(-c * s);
  }
  auto anti = [&](double x) -> cdouble {
    const cdouble e = std::exp(c * (x - s));
    switch (p) {
      case 0: return e / c;
      case 1: return e * (x / c - 1.0 / (c * c));
      default: return e * (x * x / c - 2.0 * x / (c * c) + 2.0 / (c * c * c));
    }
  };
  return anti(l) - anti(0.0);
}

cdouble term_product_integral(const Term& t1, const Term& t2, double l) {
  const cdouble c = std::conj(t1.rate) + t2.rate;
  const double s = c.real() > 0.0 ? l : 0.0;
  const cdouble offset =
      std::exp(c * s - std::conj(t1.rate) * t1.anchor - t2.rate * t2.anchor);
  return std::conj(t1.coef) * t2.coef * offset *
         moment(t1.power + t2.power, c, s, l);
}

Eigen::Matrix2cd to_eigen(const Matrix2c& m) {
  Eigen::Matrix2cd e;
  e << m[0][0], m[0][1], m[1][0], m[1][1];
  return e;
}

// Columns are Psi and L0 Psi' for two basis functions; returns
// (U - I) Psi + i (U + I) (L0 Psi').
Eigen::Matrix2cd generic_boundary_matrix(const U2Params& p,
                                         const Eigen::Matrix2cd& psi,
                                         const Eigen::Matrix2cd& l0_dpsi) {
  const Eigen::Matrix2cd U = to_eigen(to_matrix(p));
  const Eigen::Matrix2cd I = Eigen::Matrix2cd::Identity();
  return (U - I) * psi + kI * (U + I) * l0_dpsi;
}

std::vector<Eigen::Vector2cd> nullspace(const Eigen::Matrix2cd& m, double scale,
                                        bool force_one) {
  Eigen::JacobiSVD<Eigen::Matrix2cd> svd(m, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();  // descending
  std::vector<Eigen::Vector2cd> out;
  const double cut = kNullspaceTolerance * scale;
  if (sv(0) < cut) {
    out.push_back(svd.matrixV().col(0));
    out.push_back(svd.matrixV().col(1));
  } else if (sv(1) < cut || force_one) {
    out.push_back(svd.matrixV().col(1));
  }
  return out;
}

Mode with_coeffs(Sector sector, double parameter, cdouble a, cdouble b) {
  return {sector, parameter, a, b, false};
}

Mode scaled(const Mode& m, cdouble factor) {
  Mode out = m;
  out.coeff_a *= factor;
  out.coeff_b *= factor;
  return out;
}

// Gram-Schmidt in L2, then normalize() each for the phase convention.
std::vector<Mode> orthonormalize(std::vector<Mode> modes, const BoxGeometry& g) {
  std::vector<Mode> out;
  for (Mode m : modes) {
    for (const Mode& q : out) {
      const cdouble overlap = inner_product(q, m, g);
      m.coeff_a -= overlap * q.coeff_a;
      m.coeff_b -= overlap * q.coeff_b;
    }
    const double n = norm(m, g);
    m = scaled(m, 1.0 / n);
    m.normalized = true;
    out.push_back(m);
  }
  for (Mode& m : out) m = normalize(m, g);
  return out;
}

std::vector<Mode> modes_from_nullspace(const BoxGeometry& g, Sector sector,
                                       double parameter,
                                       const std::vector<Eigen::Vector2cd>& ns,
                                       double a_scale) {
  std::vector<Mode> modes;
  for (const auto& v : ns) {
    modes.push_back(
        with_coeffs(sector, parameter, v(0) * a_scale, v(1)));
  }
  return orthonormalize(std::move(modes), g);
}

}  // namespace

cdouble mode_value(const Mode& m, double x) {
  switch (m.sector) {
    case Sector::Positive:
      return m.coeff_a * std::polar(1.0, m.parameter * x) +
             m.coeff_b * std::polar(1.0, -m.parameter * x);
    case Sector::Negative:
      return m.coeff_a * std::exp(m.parameter * x) +
             m.coeff_b * std::exp(-m.parameter * x);
    case Sector::Zero:
      return m.coeff_a * x + m.coeff_b;
  }
  return 0.0;
}

cdouble mode_derivative(const Mode& m, double x) {
  switch (m.sector) {
    case Sector::Positive:
      return kI * m.parameter *
             (m.coeff_a * std::polar(1.0, m.parameter * x) -
              m.coeff_b * std::polar(1.0, -m.parameter * x));
    case Sector::Negative:
      return m.parameter * (m.coeff_a * std::exp(m.parameter * x) -
                            m.coeff_b * std::exp(-m.parameter * x));
    case Sector::Zero:
      return m.coeff_a;
  }
  return 0.0;
}

cdouble inner_product(const Mode& m1, const Mode& m2, const BoxGeometry& g) {
  cdouble sum = 0.0;
  for (const Term& t1 : terms_of(m1, g.l)) {
    for (const Term& t2 : terms_of(m2, g.l)) {
      sum += term_product_integral(t1, t2, g.l);
    }
  }
  return sum;
}

double norm(const Mode& m, const BoxGeometry& g) {
  return std::sqrt(std::max(0.0, inner_product(m, m, g).real()));
}

BoundaryData boundary_data(const Mode& m, const BoxGeometry& g) {
  return {{mode_value(m, 0.0), mode_value(m, g.l)},
          {mode_derivative(m, 0.0), -mode_derivative(m, g.l)}};
}

double boundary_residual(const Mode& m, const U2Params& p,
                         const BoxGeometry& g) {
  const BoundaryData bd = boundary_data(m, g);
  const Eigen::Matrix2cd U = to_eigen(to_matrix(p));
  const Eigen::Matrix2cd I = Eigen::Matrix2cd::Identity();
  const Eigen::Vector2cd psi(bd.psi[0], bd.psi[1]);
  const Eigen::Vector2cd l0_dpsi = p.L0() * Eigen::Vector2cd(bd.dpsi[0], bd.dpsi[1]);
  const Eigen::Vector2cd r = (U - I) * psi + kI * (U + I) * l0_dpsi;
  const double scale = std::sqrt(psi.squaredNorm() + l0_dpsi.squaredNorm());
  if (scale == 0.0) return 0.0;
  return r.norm() / scale;
}

Matrix2c positive_boundary_matrix(const U2Params& p, const BoxGeometry& g,
                                  double k) {
  const double kp = 1.0 + k * p.L0();
  const double km = 1.0 - k * p.L0();
  const cdouble a = p.alpha();
  const cdouble b = p.beta();
  const cdouble e_plus = std::polar(1.0, k * g.l);
  const cdouble e_minus = std::polar(1.0, -k * g.l);
  const cdouble eix = std::polar(1.0, -p.xi());
  return {{{a * km + (b * e_plus - eix) * kp, a * kp + (b * e_minus - eix) * km},
           {std::conj(a) * e_plus * kp - (std::conj(b) + eix * e_plus) * km,
            std::conj(a) * e_minus * km - (std::conj(b) + eix * e_minus) * kp}}};
}

std::vector<Mode> solve_coefficients(const U2Params& p, const BoxGeometry& g,
                                     double k) {
  g.validate();
  const Eigen::Matrix2cd m = to_eigen(positive_boundary_matrix(p, g, k));
  const double scale = 2.0 * (1.0 + std::abs(k) * p.L0());
  const auto ns = nullspace(m, scale, false);
  if (ns.empty()) {
    throw Error(ErrorCode::NoNullspace,
                "boundary system has full rank: k is not an eigenmomentum");
  }
  return modes_from_nullspace(g, Sector::Positive, k, ns, 1.0);
}

std::vector<Mode> zero_modes(const U2Params& p, const BoxGeometry& g) {
  g.validate();
  if (!zero_mode_exists(p, g)) {
    throw Error(ErrorCode::NoZeroMode,
                "zero-energy condition does not hold for this point");
  }
  // Basis A' x / l and B; Psi = (B, A' + B), L0 Psi' = lambda (A', -A').
  const double lambda = p.L0() / g.l;
  Eigen::Matrix2cd psi, l0_dpsi;
  psi << 0.0, 1.0, 1.0, 1.0;
  l0_dpsi << lambda, 0.0, -lambda, 0.0;
  const Eigen::Matrix2cd m = generic_boundary_matrix(p, psi, l0_dpsi);
  const auto ns = nullspace(m, 2.0 * std::max(1.0, lambda), true);
  return modes_from_nullspace(g, Sector::Zero, 0.0, ns, 1.0 / g.l);
}

Mode zero_mode(const U2Params& p, const BoxGeometry& g) {
  return zero_modes(p, g).front();
}

std::vector<Mode> negative_modes(const U2Params& p, const BoxGeometry& g,
                                 double kappa) {
  g.validate();
  if (!(kappa > 0.0)) {
    throw Error(ErrorCode::Domain, "negative modes need kappa > 0");
  }
  // Basis e^{kappa (x - l)} and e^{-kappa x}.
  const double d = std::exp(-kappa * g.l);
  const double kl0 = kappa * p.L0();
  Eigen::Matrix2cd psi, l0_dpsi;
  psi << d, 1.0, 1.0, d;
  l0_dpsi << kl0 * d, -kl0, -kl0, kl0 * d;
  const Eigen::Matrix2cd m = generic_boundary_matrix(p, psi, l0_dpsi);
  const auto ns = nullspace(m, 2.0 * (1.0 + kl0), false);
  if (ns.empty()) {
    throw Error(ErrorCode::NoNullspace,
                "boundary system has full rank: kappa is not a bound-state root");
  }
  return modes_from_nullspace(g, Sector::Negative, kappa, ns, d);
}

Mode negative_mode(const U2Params& p, const BoxGeometry& g, double kappa) {
  return negative_modes(p, g, kappa).front();
}

std::vector<Mode> modes_for_level(const U2Params& p, const BoxGeometry& g,
                                  const Level& level) {
  switch (level.sector) {
    case Sector::Positive: return solve_coefficients(p, g, level.parameter);
    case Sector::Negative: return negative_modes(p, g, level.parameter);
    case Sector::Zero: return zero_modes(p, g);
  }
  return {};
}

F2Coefficients f2_coefficients(const U2Params& p, const BoxGeometry& g, int s,
                               int n) {
  g.validate();
  const double theta = f2_theta(p);
  const double ai = p.alpha_im();
  const double br = p.beta_re();
  const double bi = p.beta_im();
  if (std::abs(1.0 + ai) < kClassifyTolerance) {
    throw Error(ErrorCode::OutOfDomain, "closed F2 amplitudes need alpha_I != -1");
  }
  if (std::abs(1.0 - std::abs(bi)) < kClassifyTolerance) {
    throw Error(ErrorCode::OutOfDomain,
                "closed F2 amplitudes are undetermined at beta_I = +-1");
  }
  if ((s != 1 && s != -1) || (s == 1 && n < 0) || (s == -1 && n > -1)) {
    throw Error(ErrorCode::OutOfDomain,
                "F2 branch needs s = +1 with n >= 0 or s = -1 with n <= -1");
  }
  const double denom =
      2.0 * std::sqrt(g.l * (1.0 + ai) * (1.0 + bi * std::cos(theta)));
  const cdouble c(bi, -br);
  return {((1.0 + ai) + c * std::polar(1.0, -theta)) / denom,
          ((1.0 + ai) + c * std::polar(1.0, theta)) / denom};
}

Mode f2_mode(const U2Params& p, const BoxGeometry& g, int s, int n) {
  const F2Coefficients c = f2_coefficients(p, g, s, n);
  const double theta = f2_theta(p);
  const double k = s * (theta + 2.0 * std::numbers::pi * n) / g.l;
  Mode m;
  m.sector = Sector::Positive;
  m.parameter = k;
  m.coeff_a = s == 1 ? c.a_plus : c.a_minus;
  m.coeff_b = s == 1 ? -c.a_minus : -c.a_plus;
  m.normalized = true;
  return m;
}

Mode normalize(const Mode& m, const BoxGeometry& g) {
  const double n = norm(m, g);
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw Error(ErrorCode::ZeroFunction, "cannot normalize the zero function");
  }
  Mode out = scaled(m, 1.0 / n);
  const cdouble v0 = mode_value(out, 0.0);
  const cdouble d0 = mode_derivative(out, 0.0);
  const double ref = std::abs(v0) + g.l * std::abs(d0);
  const cdouble pick = std::abs(v0) > 1e-9 * ref ? v0 : d0;
  if (std::abs(pick) > 0.0) out = scaled(out, std::conj(pick) / std::abs(pick));
  out.normalized = true;
  return out;
}

double probability_current(const Mode& m, const BoxGeometry& g, double x) {
  const cdouble z = std::conj(mode_value(m, x)) * mode_derivative(m, x);
  return g.hbar / g.mass * z.imag();
}

}  // namespace pointspec
