#include "pointspec/u2param.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "pointspec/error.hpp"

namespace pointspec {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::ConstraintViolation: return "constraint-violation";
    case ErrorCode::Domain: return "domain";
    case ErrorCode::NotSeparated: return "not-separated";
    case ErrorCode::NotInF2: return "not-in-F2";
    case ErrorCode::NoNullspace: return "no-nullspace";
    case ErrorCode::NoZeroMode: return "no-zero-mode";
    case ErrorCode::NoBoundState: return "no-bound-state";
    case ErrorCode::ZeroFunction: return "zero-function";
    case ErrorCode::TailBoundNotMet: return "tail-bound-not-met";
    case ErrorCode::UnsupportedFamily: return "unsupported-family";
    case ErrorCode::OutOfDomain: return "out-of-domain";
    case ErrorCode::InternalContradiction: return "internal-contradiction";
    case ErrorCode::EigensolverFailure: return "eigensolver-failure";
  }
  return "unknown";
}

U2Params make_u2(double xi, cdouble alpha, cdouble beta, double L0) {
  const double norm2 = std::norm(alpha) + std::norm(beta);
  if (!std::isfinite(norm2) || std::abs(norm2 - 1.0) > kNormTolerance) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "|alpha|^2 + |beta|^2 = 1 violated (got " << norm2 << ")";
    throw Error(ErrorCode::ConstraintViolation, msg.str());
  }
  if (!(xi >= 0.0 && xi < std::numbers::pi)) {
    throw Error(ErrorCode::ConstraintViolation, "xi must lie in [0, pi)");
  }
  if (!(L0 > 0.0) || !std::isfinite(L0)) {
    throw Error(ErrorCode::ConstraintViolation, "L0 must be strictly positive");
  }
  return U2Params(xi, alpha, beta, L0);
}

Matrix2c to_matrix(const U2Params& p) {
  const cdouble phase = std::polar(1.0, p.xi());
  const cdouble a = p.alpha();
  const cdouble b = p.beta();
  return {{{phase * a, phase * b}, {-phase * std::conj(b), phase * std::conj(a)}}};
}

SubfamilyFlags classify(const U2Params& p, double tol) {
  const double half_pi = std::numbers::pi / 2;
  SubfamilyFlags f;
  f.in_f1 = std::abs(p.beta()) < tol;
  f.in_f2 = std::abs(p.xi() - half_pi) < tol && std::abs(p.alpha_re()) < tol;
  f.in_f3 = f.in_f2 && std::abs(p.alpha_im()) < tol;
  f.in_f4 = std::abs(p.xi()) < tol && std::abs(p.beta_im()) < tol;
  const double s = std::sin(p.xi());
  f.in_f5_plus = std::abs(s - p.beta_im()) < tol;
  f.in_f5_minus = std::abs(s + p.beta_im()) < tol;
  return f;
}

namespace {

ExtendedLength cot_length(double L0, double angle, double tol) {
  const double s = std::sin(angle);
  if (std::abs(s) < tol) return ExtendedLength::infinity();
  return ExtendedLength::finite(L0 * std::cos(angle) / s);
}

}  // namespace

SeparatedLengths separated_lengths(const U2Params& p, double tol) {
  if (std::abs(p.beta()) >= tol) {
    throw Error(ErrorCode::NotSeparated,
                "separated lengths need beta = 0 (diagonal U)");
  }
  const double phi = std::arg(p.alpha());
  return {cot_length(p.L0(), 0.5 * (p.xi() + phi), tol),
          cot_length(p.L0(), 0.5 * (p.xi() - phi), tol)};
}

double f2_theta(const U2Params& p, double tol) {
  if (!classify(p, tol).in_f2) {
    throw Error(ErrorCode::NotInF2,
                "theta is defined on F2 only (xi = pi/2, alpha_R = 0)");
  }
  return std::acos(std::clamp(-p.beta_im(), -1.0, 1.0));
}

}  // namespace pointspec
