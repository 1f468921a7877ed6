#pragma once

#include <array>
#include <complex>
#include <optional>

namespace pointspec {

using cdouble = std::complex<double>;
using Matrix2c = std::array<std::array<cdouble, 2>, 2>;

inline constexpr double kNormTolerance = 1e-12;
inline constexpr double kClassifyTolerance = 1e-9;

/// A point on U(2) written as U = e^{i xi} [[alpha, beta], [-beta*, alpha*]],
/// together with the length constant L0 of the boundary condition
/// (U - I) Psi + i L0 (U + I) Psi' = 0.
///
/// Instances are only produced by make_u2(), which validates
/// |alpha|^2 + |beta|^2 = 1, xi in [0, pi) and L0 > 0.
class U2Params {
 public:
  double xi() const noexcept { return xi_; }
  cdouble alpha() const noexcept { return alpha_; }
  cdouble beta() const noexcept { return beta_; }
  double L0() const noexcept { return L0_; }

  double alpha_re() const noexcept { return alpha_.real(); }
  double alpha_im() const noexcept { return alpha_.imag(); }
  double beta_re() const noexcept { return beta_.real(); }
  double beta_im() const noexcept { return beta_.imag(); }

  friend U2Params make_u2(double xi, cdouble alpha, cdouble beta, double L0);

 private:
  U2Params(double xi, cdouble alpha, cdouble beta, double L0)
      : xi_(xi), alpha_(alpha), beta_(beta), L0_(L0) {}

  double xi_;
  cdouble alpha_;
  cdouble beta_;
  double L0_;
};

/// Throws Error(ConstraintViolation) naming the violated invariant.
U2Params make_u2(double xi, cdouble alpha, cdouble beta, double L0 = 1.0);

Matrix2c to_matrix(const U2Params& p);

struct SubfamilyFlags {
  bool in_f1 = false;  // separated: beta = 0
  bool in_f2 = false;  // scale independent: xi = pi/2, alpha_R = 0
  bool in_f3 = false;  // smooth circle: F2 with alpha = 0
  bool in_f4 = false;  // isospectral: xi = 0, beta_I = 0
  bool in_f5_plus = false;   // sin xi = +beta_I
  bool in_f5_minus = false;  // sin xi = -beta_I
};

SubfamilyFlags classify(const U2Params& p, double tol = kClassifyTolerance);

/// Element of R u {infinity}. Infinity is a tag, never a floating-point inf.
class ExtendedLength {
 public:
  static ExtendedLength finite(double value) { return ExtendedLength(value); }
  static ExtendedLength infinity() { return ExtendedLength(); }

  bool is_infinite() const noexcept { return !value_.has_value(); }
  /// Precondition: !is_infinite().
  double value() const { return *value_; }

 private:
  ExtendedLength() = default;
  explicit ExtendedLength(double v) : value_(v) {}
  std::optional<double> value_;
};

struct SeparatedLengths {
  ExtendedLength l_plus;
  ExtendedLength l_minus;
};

/// L+- = L0 cot((xi +- phi)/2) with alpha = e^{i phi}. The resulting walls are
/// psi(0) + L+ psi'(0) = 0 and psi(l) - L- psi'(l) = 0 (outward derivative at
/// the right wall). Throws Error(NotSeparated) when |beta| > tol.
SeparatedLengths separated_lengths(const U2Params& p,
                                   double tol = kClassifyTolerance);

/// theta = arccos(-beta_I) in [0, pi]. Throws Error(NotInF2) outside F2.
double f2_theta(const U2Params& p, double tol = kClassifyTolerance);

}  // namespace pointspec
