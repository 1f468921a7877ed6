#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "pointspec/eigenstates.hpp"
#include "pointspec/error.hpp"
#include "support.hpp"

using namespace pointspec;
using namespace pstest;

namespace {

const BoxGeometry kUnit{};
const cdouble kI{0.0, 1.0};

Mode positive(double k, cdouble a, cdouble b) {
  return {Sector::Positive, k, a, b, false};
}

double quad_norm2(const Mode& m, const BoxGeometry& g) {
  using Q = boost::math::quadrature::gauss_kronrod<double, 61>;
  return Q::integrate([&](double x) { return std::norm(mode_value(m, x)); }, 0.0,
                      g.l, 15, 1e-13);
}

double overlap(const Mode& a, const Mode& b, const BoxGeometry& g) {
  return std::abs(inner_product(a, b, g));
}

}  // namespace

TEST_CASE("boundary data") {
  const BoundaryData s = boundary_data(positive(kPi, 1.0 / (2.0 * kI), -1.0 / (2.0 * kI)), kUnit);
  CHECK(std::abs(s.psi[0]) < 1e-15);
  CHECK(std::abs(s.psi[1]) < 1e-15);
  CHECK(std::abs(s.dpsi[0] - kPi) < 1e-14);
  CHECK(std::abs(s.dpsi[1] - kPi) < 1e-14);

  const BoundaryData c = boundary_data({Sector::Zero, 0.0, 0.0, 2.5, false}, kUnit);
  CHECK(std::abs(c.psi[0] - 2.5) < 1e-15);
  CHECK(std::abs(c.psi[1] - 2.5) < 1e-15);
  CHECK(std::abs(c.dpsi[0]) < 1e-15);
  CHECK(std::abs(c.dpsi[1]) < 1e-15);

  const BoundaryData e = boundary_data({Sector::Negative, 1.0, 0.0, 1.0, false}, kUnit);
  CHECK(std::abs(e.psi[0] - 1.0) < 1e-15);
  CHECK(std::abs(e.psi[1] - std::exp(-1.0)) < 1e-15);
  CHECK(std::abs(e.dpsi[0] + 1.0) < 1e-15);
  CHECK(std::abs(e.dpsi[1] - std::exp(-1.0)) < 1e-15);
}

TEST_CASE("boundary residual") {
  for (int n = 1; n <= 4; ++n) {
    const double k = n * kPi;
    const Mode s = positive(k, 1.0 / (2.0 * kI), -1.0 / (2.0 * kI));
    const Mode c = positive(k, 0.5, 0.5);
    CHECK(boundary_residual(s, dirichlet(), kUnit) < 1e-12);
    CHECK(boundary_residual(c, neumann(), kUnit) < 1e-12);
  }
  CHECK(boundary_residual(positive(kPi, 0.5, 0.5), dirichlet(), kUnit) > 0.1);
}

TEST_CASE("solve_coefficients") {
  for (int n = 1; n <= 3; ++n) {
    const auto m = solve_coefficients(dirichlet(), kUnit, n * kPi);
    REQUIRE(m.size() == 1);
    // normalized sin(n pi x) is sqrt 2 sin: A = -B = sqrt2/(2i) up to phase;
    // the phase rule makes psi'(0) > 0.
    CHECK(std::abs(mode_value(m[0], 0.25) - std::sqrt(2.0) * std::sin(n * kPi / 4)) < 1e-12);
  }

  const auto d = solve_coefficients(make_u2(kPi / 2, 0.0, {0.0, 1.0}), kUnit, kPi);
  REQUIRE(d.size() == 2);
  CHECK(overlap(d[0], d[1], kUnit) < 1e-12);

  // theta = pi/2 circle: a single plane wave.
  const U2Params c = circle(kPi / 2);
  const auto w = solve_coefficients(c, kUnit, kPi / 2);
  REQUIRE(w.size() == 1);
  const bool plane = (std::abs(w[0].coeff_b) < 1e-12 && std::abs(std::abs(w[0].coeff_a) - 1.0) < 1e-12) ||
                     (std::abs(w[0].coeff_a) < 1e-12 && std::abs(std::abs(w[0].coeff_b) - 1.0) < 1e-12);
  CHECK(plane);

  CHECK_THROWS_AS(solve_coefficients(dirichlet(), kUnit, 1.0), Error);
}

TEST_CASE("zero modes") {
  const Mode n = zero_mode(neumann(), BoxGeometry{4.0, 1.0, 1.0});
  CHECK(std::abs(n.coeff_a) < 1e-15);
  CHECK(std::abs(n.coeff_b - 0.5) < 1e-14);
  const Mode c = zero_mode(make_u2(kPi / 2, 0.0, {0.0, -1.0}), kUnit);
  CHECK(std::abs(c.coeff_b - 1.0) < 1e-14);
  CHECK_THROWS_AS(zero_mode(dirichlet(), kUnit), Error);
  try {
    zero_mode(dirichlet(), kUnit);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NoZeroMode);
  }
}

TEST_CASE("negative modes of the symmetric box") {
  const BoxGeometry g{10.0, 1.0, 1.0};
  const U2Params p = make_u2(kPi / 2, 1.0, 0.0);
  const auto roots = find_negative_roots(p, g);
  REQUIRE(roots.size() == 2);
  const Mode lo = negative_mode(p, g, roots[0].value);
  const Mode hi = negative_mode(p, g, roots[1].value);
  CHECK(boundary_residual(lo, p, g) < 1e-9);
  CHECK(boundary_residual(hi, p, g) < 1e-9);
  CHECK(norm(lo, g) == doctest::Approx(1.0).epsilon(1e-12));
  // Parity under x -> l - x.
  double even_lo = 0, odd_lo = 0, even_hi = 0, odd_hi = 0;
  for (double x : {0.0, 0.5, 2.0, 3.7}) {
    even_lo += std::abs(mode_value(lo, x) - mode_value(lo, g.l - x));
    odd_lo += std::abs(mode_value(lo, x) + mode_value(lo, g.l - x));
    even_hi += std::abs(mode_value(hi, x) - mode_value(hi, g.l - x));
    odd_hi += std::abs(mode_value(hi, x) + mode_value(hi, g.l - x));
  }
  CHECK((std::min(even_lo, odd_lo) < 1e-9 && std::min(even_hi, odd_hi) < 1e-9));
  CHECK((even_lo < 1e-9) != (even_hi < 1e-9));
  CHECK(overlap(lo, hi, g) < 1e-9);
  // Bulk dominated by the two wall-localized exponentials.
  CHECK(std::abs(mode_value(lo, 5.0)) < 1e-2 * std::abs(mode_value(lo, 0.0)));

  CHECK_THROWS_AS(negative_mode(dirichlet(), kUnit, 1.0), Error);
}

TEST_CASE("F2 closed-form amplitudes") {
  for (double theta : {0.3, 1.0, 2.0, 3.0}) {
    const F2Coefficients c = f2_coefficients(circle(theta), kUnit, 1, 0);
    CHECK(std::abs(std::abs(c.a_plus) - 1.0) < 1e-12);
    CHECK(std::abs(c.a_minus) < 1e-12);
  }
  const U2Params q = make_u2(kPi / 2, {0.0, 1.0}, 0.0);
  CHECK_NOTHROW(f2_coefficients(q, kUnit, 1, 0));
  CHECK_THROWS_AS(f2_coefficients(make_u2(kPi / 2, 0.0, {0.0, 1.0}), kUnit, 1, 0), Error);
  CHECK_THROWS_AS(f2_coefficients(make_u2(kPi / 2, {0.0, -1.0}, 0.0), kUnit, 1, 0), Error);
  CHECK_THROWS_AS(f2_coefficients(neumann(), kUnit, 1, 0), Error);
  CHECK_THROWS_AS(f2_coefficients(q, kUnit, 1, -1), Error);
  CHECK_THROWS_AS(f2_coefficients(q, kUnit, -1, 0), Error);
}

TEST_CASE("F2 closed form matches the nullspace modes") {
  std::mt19937_64 rng(31);
  const BoxGeometry g{1.7, 1.0, 1.0};
  for (int i = 0; i < 40; ++i) {
    const U2Params p = random_f2(rng);
    if (p.alpha_im() < -0.95) continue;
    for (int s : {1, -1}) {
      for (int n : {0, 1, 2}) {
        const int nn = s > 0 ? n : -n - 1;
        const Mode closed = normalize(f2_mode(p, g, s, nn), g);
        CHECK(boundary_residual(closed, p, g) < 1e-10);
        CHECK(norm(f2_mode(p, g, s, nn), g) == doctest::Approx(1.0).epsilon(1e-10));
        const auto ns = solve_coefficients(p, g, closed.parameter);
        REQUIRE(ns.size() == 1);
        CHECK(overlap(closed, ns[0], g) > 1 - 1e-9);
      }
    }
  }
}

TEST_CASE("normalize") {
  const Mode s = normalize(positive(kPi, 1.0, -1.0), kUnit);
  CHECK(norm(s, kUnit) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(std::abs(s.coeff_a) - std::sqrt(2.0) / 2) < 1e-14);
  CHECK(mode_derivative(s, 0.0).real() > 0.0);
  CHECK(std::abs(mode_derivative(s, 0.0).imag()) < 1e-14);

  const Mode c = normalize({Sector::Zero, 0.0, 0.0, 3.0, false}, BoxGeometry{4.0, 1.0, 1.0});
  CHECK(std::abs(c.coeff_b - 0.5) < 1e-15);

  const Mode w = normalize(positive(2.0, 1.0, 0.0), kUnit);
  CHECK(std::abs(w.coeff_a - 1.0) < 1e-15);
  CHECK(std::abs(w.coeff_b) < 1e-15);
  CHECK(w.normalized);

  CHECK_THROWS_AS(normalize(positive(1.0, 0.0, 0.0), kUnit), Error);
}

TEST_CASE("closed-form norms agree with quadrature") {
  std::mt19937_64 rng(32);
  const BoxGeometry g{2.3, 1.0, 1.0};
  for (int i = 0; i < 20; ++i) {
    const U2Params p = random_point(rng);
    for (const Level& lv : spectrum(p, g, 4).levels) {
      for (const Mode& m : modes_for_level(p, g, lv)) {
        CHECK(quad_norm2(m, g) == doctest::Approx(1.0).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("probability current") {
  const Mode s = positive(kPi, 1.0 / (2.0 * kI), -1.0 / (2.0 * kI));
  CHECK(std::abs(probability_current(s, kUnit, 0.3)) < 1e-15);
  const BoxGeometry g{2.0, 1.5, 0.5};
  const Mode w = positive(3.0, 1.0 / std::sqrt(g.l), 0.0);
  CHECK(probability_current(w, g, 0.7) ==
        doctest::Approx(g.hbar * 3.0 / (g.mass * g.l)).epsilon(1e-14));
}

TEST_CASE("modes are orthonormal, satisfy the conditions and conserve current") {
  std::mt19937_64 rng(33);
  const BoxGeometry g{1.3, 1.0, 1.0};
  for (int i = 0; i < 60; ++i) {
    const U2Params p = i % 3 == 0 ? random_f2(rng, 1.0) : random_point(rng);
    const bool separated = classify(p).in_f1;
    std::vector<Mode> all;
    const Spectrum s = spectrum(p, g, 6);
    for (const Level& lv : s.levels) {
      const auto m = modes_for_level(p, g, lv);
      CHECK(static_cast<int>(m.size()) == lv.multiplicity);
      for (const Mode& x : m) {
        CHECK(boundary_residual(x, p, g) < 1e-9);
        const double j0 = probability_current(x, g, 0.0);
        const double jl = probability_current(x, g, g.l);
        CHECK(std::abs(j0 - jl) < 1e-10);
        if (separated) CHECK(std::abs(j0) < 1e-10);
        all.push_back(x);
      }
    }
    for (std::size_t a = 0; a < all.size(); ++a) {
      CHECK(norm(all[a], g) == doctest::Approx(1.0).epsilon(1e-10));
      for (std::size_t b = a + 1; b < all.size(); ++b) {
        CHECK(overlap(all[a], all[b], g) < 1e-8);
      }
    }
  }
}

TEST_CASE("mixed walls match their closed eigenfunctions") {
  // (0, inf): sqrt(2/l) sin((n + 1/2) pi x / l); (inf, 0): sqrt(2/l) cos(...)
  const BoxGeometry g{1.0, 1.0, 1.0};
  for (int which = 0; which < 2; ++which) {
    const U2Params p = which == 0 ? dirichlet_neumann() : neumann_dirichlet();
    const Spectrum s = spectrum(p, g, 5);
    for (int n = 0; n < 5; ++n) {
      const auto m = modes_for_level(p, g, s.levels[n]);
      REQUIRE(m.size() == 1);
      const double k = (n + 0.5) * kPi;
      const Mode ref = which == 0 ? positive(k, 1.0 / (std::sqrt(2.0) * kI), -1.0 / (std::sqrt(2.0) * kI))
                                  : positive(k, 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0));
      const Mode d{Sector::Positive, k, m[0].coeff_a - ref.coeff_a, m[0].coeff_b - ref.coeff_b, false};
      CHECK(norm(d, g) < 1e-10);
    }
  }
}
