#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pointspec/error.hpp"
#include "pointspec/spectral.hpp"
#include "pointspec/u2param.hpp"
#include "support.hpp"

using namespace pointspec;
using namespace pstest;

namespace {

double unitarity_defect(const Matrix2c& u) {
  double worst = 0.0;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      cdouble s = 0.0;
      for (int k = 0; k < 2; ++k) s += std::conj(u[k][i]) * u[k][j];
      worst = std::max(worst, std::abs(s - (i == j ? 1.0 : 0.0)));
    }
  }
  return worst;
}

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::InternalContradiction;
}

}  // namespace

TEST_CASE("make_u2 accepts identity and minus identity") {
  CHECK_NOTHROW(make_u2(0.0, 1.0, 0.0, 1.0));
  CHECK_NOTHROW(make_u2(0.0, -1.0, 0.0, 1.0));
}

TEST_CASE("make_u2 rejects broken invariants") {
  CHECK(code_of([] { make_u2(0.0, 0.5, 0.5, 1.0); }) ==
        ErrorCode::ConstraintViolation);
  CHECK(code_of([] { make_u2(kPi, 1.0, 0.0, 1.0); }) ==
        ErrorCode::ConstraintViolation);
  CHECK(code_of([] { make_u2(-0.1, 1.0, 0.0, 1.0); }) ==
        ErrorCode::ConstraintViolation);
  CHECK(code_of([] { make_u2(0.0, 1.0, 0.0, 0.0); }) ==
        ErrorCode::ConstraintViolation);
  CHECK(code_of([] { make_u2(0.0, 1.0 + 1e-11, 0.0, 1.0); }) ==
        ErrorCode::ConstraintViolation);
  CHECK_NOTHROW(make_u2(0.0, 1.0 + 1e-13, 0.0, 1.0));
}

TEST_CASE("error messages name the invariant") {
  try {
    make_u2(0.0, 0.5, 0.5, 1.0);
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("|alpha|^2 + |beta|^2") != std::string::npos);
  }
}

TEST_CASE("to_matrix examples") {
  const Matrix2c id = to_matrix(neumann());
  CHECK(std::abs(id[0][0] - 1.0) < 1e-15);
  CHECK(std::abs(id[0][1]) < 1e-15);
  CHECK(std::abs(id[1][1] - 1.0) < 1e-15);

  const Matrix2c swap = to_matrix(make_u2(kPi / 2, 0.0, {0.0, -1.0}));
  CHECK(std::abs(swap[0][0]) < 1e-15);
  CHECK(std::abs(swap[0][1] - 1.0) < 1e-15);
  CHECK(std::abs(swap[1][0] - 1.0) < 1e-15);
  CHECK(std::abs(swap[1][1]) < 1e-15);

  const Matrix2c d = to_matrix(make_u2(0.0, {0.0, 1.0}, 0.0));
  CHECK(std::abs(d[0][0] - cdouble(0, 1)) < 1e-15);
  CHECK(std::abs(d[1][1] - cdouble(0, -1)) < 1e-15);
}

TEST_CASE("to_matrix is unitary and Hermitian with eigenvalues +-1 on F2") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 1000; ++i) {
    CHECK(unitarity_defect(to_matrix(random_point(rng))) < 1e-12);
  }
  for (int i = 0; i < 200; ++i) {
    const Matrix2c u = to_matrix(random_f2(rng, 1.0));
    CHECK(std::abs(u[0][1] - std::conj(u[1][0])) < 1e-12);
    CHECK(std::abs(u[0][0].imag()) < 1e-12);
    CHECK(std::abs(u[1][1].imag()) < 1e-12);
    // Hermitian, unitary and traceless: eigenvalues +1 and -1.
    const cdouble tr = u[0][0] + u[1][1];
    const cdouble det = u[0][0] * u[1][1] - u[0][1] * u[1][0];
    CHECK(std::abs(tr) < 1e-10);
    CHECK(std::abs(det + 1.0) < 1e-10);
  }
}

TEST_CASE("classify examples") {
  const SubfamilyFlags f3 =
      classify(make_u2(kPi / 2, 0.0, std::polar(1.0, kPi / 3)));
  CHECK(f3.in_f2);
  CHECK(f3.in_f3);

  const SubfamilyFlags id = classify(neumann());
  CHECK(id.in_f1);
  CHECK(id.in_f4);
  CHECK(id.in_f5_plus);
  CHECK(id.in_f5_minus);
  CHECK_FALSE(id.in_f2);

  // beta_I = sin xi forced, the rest of the norm carried by alpha.
  const double xi = kPi / 4;
  const double b_im = std::sin(xi);
  const cdouble alpha = std::polar(std::sqrt(1.0 - b_im * b_im), kPi / 5);
  const SubfamilyFlags f5 = classify(make_u2(xi, alpha, {0.0, b_im}));
  CHECK(f5.in_f5_plus);
  CHECK_FALSE(f5.in_f5_minus);
  CHECK_FALSE(f5.in_f1);
  CHECK_FALSE(f5.in_f2);
  CHECK_FALSE(f5.in_f3);
  CHECK_FALSE(f5.in_f4);
}

TEST_CASE("classify invariants hold on random points") {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 500; ++i) {
    const U2Params p = i % 2 ? random_point(rng) : random_f2(rng, 1.0);
    const SubfamilyFlags f = classify(p);
    if (f.in_f3) CHECK(f.in_f2);
    if (f.in_f4) CHECK((f.in_f5_plus && f.in_f5_minus));
    const SubfamilyFlags g = classify(p);
    CHECK(f.in_f2 == g.in_f2);
    // Generic points sit far from every family boundary; doubling or
    // halving the tolerance changes nothing.
    if (i % 2) {
      const SubfamilyFlags a = classify(p, 2e-9);
      const SubfamilyFlags b = classify(p, 5e-10);
      CHECK(a.in_f1 == b.in_f1);
      CHECK(a.in_f2 == b.in_f2);
      CHECK(a.in_f5_plus == b.in_f5_plus);
    }
  }
}

TEST_CASE("separated lengths") {
  const SeparatedLengths d = separated_lengths(make_u2(0.0, -1.0, 0.0));
  REQUIRE_FALSE(d.l_plus.is_infinite());
  REQUIRE_FALSE(d.l_minus.is_infinite());
  CHECK(std::abs(d.l_plus.value()) < 1e-15);
  CHECK(std::abs(d.l_minus.value()) < 1e-15);

  const SeparatedLengths n = separated_lengths(neumann());
  CHECK(n.l_plus.is_infinite());
  CHECK(n.l_minus.is_infinite());

  const SeparatedLengths r = separated_lengths(make_u2(kPi / 2, 1.0, 0.0));
  CHECK(r.l_plus.value() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(r.l_minus.value() == doctest::Approx(1.0).epsilon(1e-14));

  CHECK(code_of([] { separated_lengths(generic_point()); }) ==
        ErrorCode::NotSeparated);
}

TEST_CASE("separated lengths reproduce the wall conditions") {
  // For a diagonal U the two rows of (U - I) Psi + i L0 (U + I) Psi' = 0 are
  // psi(0) + L+ psi'(0) = 0 and psi(l) - L- psi'(l) = 0. Evaluate both forms
  // on smooth test data and require they vanish together.
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  int agree = 0;
  for (int i = 0; i < 1000; ++i) {
    const double xi = 0.1 + 2.9 * (u(rng) + 1.0) / 2.0;
    const double phi = kPi * u(rng);
    const U2Params p = make_u2(xi, std::polar(1.0, phi), 0.0);
    const SeparatedLengths s = separated_lengths(p);
    const Matrix2c m = to_matrix(p);
    // Boundary data satisfying the separated form half the time.
    const cdouble psi0 = u(rng), dpsi0 = u(rng);
    cdouble psil = u(rng), dpsil = u(rng);
    cdouble p0 = psi0, d0 = dpsi0;
    const bool make_valid = i % 2 == 0;
    if (make_valid) {
      // choose data on the separated conditions
      if (s.l_plus.is_infinite()) {
        d0 = 0.0;
      } else {
        p0 = -s.l_plus.value() * d0;
      }
      if (s.l_minus.is_infinite()) {
        dpsil = 0.0;
      } else {
        psil = s.l_minus.value() * dpsil;
      }
    }
    const cdouble Psi[2] = {p0, psil};
    const cdouble dPsi[2] = {d0, -dpsil};
    double r_u = 0.0;
    for (int row = 0; row < 2; ++row) {
      cdouble v = 0.0;
      for (int c = 0; c < 2; ++c) {
        const cdouble uu = m[row][c];
        const cdouble id = row == c ? 1.0 : 0.0;
        v += (uu - id) * Psi[c] + cdouble(0, 1) * p.L0() * (uu + id) * dPsi[c];
      }
      r_u += std::norm(v);
    }
    r_u = std::sqrt(r_u);
    auto wall = [](const ExtendedLength& L, cdouble f, cdouble df, double sign) {
      return L.is_infinite() ? std::abs(df) : std::abs(f + sign * L.value() * df);
    };
    const double r_s = wall(s.l_plus, p0, d0, 1.0) + wall(s.l_minus, psil, dpsil, -1.0);
    if ((r_u < 1e-9) == (r_s < 1e-9)) ++agree;
    if (make_valid) CHECK(r_u < 1e-9);
  }
  CHECK(agree == 1000);
}

TEST_CASE("f2_theta") {
  CHECK(f2_theta(make_u2(kPi / 2, 0.0, {0.0, -1.0})) == doctest::Approx(0.0));
  CHECK(f2_theta(make_u2(kPi / 2, 0.0, {1.0, 0.0})) ==
        doctest::Approx(kPi / 2).epsilon(1e-15));
  CHECK(f2_theta(make_u2(kPi / 2, 0.0, {0.0, 1.0})) ==
        doctest::Approx(kPi).epsilon(1e-15));
  CHECK(code_of([] { f2_theta(neumann()); }) == ErrorCode::NotInF2);
}

TEST_CASE("fingerprint of a diagonal phase") {
  // diag(1, e^{2 i chi}) = e^{i chi} diag(e^{-i chi}, e^{i chi})
  for (double chi : {0.0, 0.2, 1.1}) {
    const U2Params p = make_u2(chi, std::polar(1.0, -chi), 0.0);
    const Matrix2c m = to_matrix(p);
    CHECK(std::abs(m[0][0] - 1.0) < 1e-14);
    CHECK(std::abs(m[1][1] - std::polar(1.0, 2 * chi)) < 1e-14);
    const bool same = spectral_fingerprint(p) == spectral_fingerprint(neumann());
    CHECK(same == (chi == 0.0));
  }
}
