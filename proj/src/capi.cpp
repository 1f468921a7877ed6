#include "pointspec/pointspec.h"

#include <new>
#include <string>
#include <vector>

#include "pointspec/eigenstates.hpp"
#include "pointspec/error.hpp"
#include "pointspec/halfline.hpp"
#include "pointspec/kernels.hpp"
#include "pointspec/oracle.hpp"
#include "pointspec/spectral.hpp"
#include "pointspec/u2param.hpp"

using namespace pointspec;

struct ps_point {
  U2Params value;
};

struct ps_spectrum {
  Spectrum value;
};

struct ps_modes {
  BoxGeometry geometry;
  std::vector<Mode> value;
};

struct ps_kernel {
  SpectralKernel value;
};

namespace {

thread_local std::string last_error;

ps_status status_of(ErrorCode c) {
  switch (c) {
    case ErrorCode::ConstraintViolation: return PS_CONSTRAINT_VIOLATION;
    case ErrorCode::Domain: return PS_DOMAIN;
    case ErrorCode::NotSeparated: return PS_NOT_SEPARATED;
    case ErrorCode::NotInF2: return PS_NOT_IN_F2;
    case ErrorCode::NoNullspace: return PS_NO_NULLSPACE;
    case ErrorCode::NoZeroMode: return PS_NO_ZERO_MODE;
    case ErrorCode::NoBoundState: return PS_NO_BOUND_STATE;
    case ErrorCode::ZeroFunction: return PS_ZERO_FUNCTION;
    case ErrorCode::TailBoundNotMet: return PS_TAIL_BOUND_NOT_MET;
    case ErrorCode::UnsupportedFamily: return PS_UNSUPPORTED_FAMILY;
    case ErrorCode::OutOfDomain: return PS_OUT_OF_DOMAIN;
    case ErrorCode::InternalContradiction: return PS_INTERNAL_CONTRADICTION;
    case ErrorCode::EigensolverFailure: return PS_EIGENSOLVER_FAILURE;
  }
  return PS_UNKNOWN;
}

ps_status fail(ps_status s, std::string msg) {
  last_error = std::move(msg);
  return s;
}

template <class F>
ps_status guard(F&& f) {
  try {
    f();
    return PS_OK;
  } catch (const Error& e) {
    return fail(status_of(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(PS_UNKNOWN, "out of memory");
  } catch (const std::exception& e) {
    return fail(PS_UNKNOWN, e.what());
  }
}

BoxGeometry geometry(const ps_geometry* g) {
  if (!g) return {};
  BoxGeometry out{g->l, g->hbar, g->mass};
  out.validate();
  return out;
}

ps_sector to_c(Sector s) {
  switch (s) {
    case Sector::Positive: return PS_SECTOR_POSITIVE;
    case Sector::Zero: return PS_SECTOR_ZERO;
    case Sector::Negative: return PS_SECTOR_NEGATIVE;
  }
  return PS_SECTOR_POSITIVE;
}

Sector from_c(ps_sector s) {
  switch (s) {
    case PS_SECTOR_POSITIVE: return Sector::Positive;
    case PS_SECTOR_ZERO: return Sector::Zero;
    case PS_SECTOR_NEGATIVE: return Sector::Negative;
  }
  throw Error(ErrorCode::Domain, "unknown sector");
}

void put(cdouble z, double* out) {
  out[0] = z.real();
  out[1] = z.imag();
}

void copy_roots(const std::vector<Root>& r, double* roots, int* mult,
                size_t cap, size_t* count) {
  for (size_t i = 0; i < r.size() && i < cap; ++i) {
    if (roots) roots[i] = r[i].value;
    if (mult) mult[i] = r[i].multiplicity;
  }
  *count = r.size();
}

const Mode& mode_at(const ps_modes* m, size_t i) {
  if (i >= m->value.size()) {
    throw Error(ErrorCode::Domain, "mode index out of range");
  }
  return m->value[i];
}

#define PS_REQUIRE(ptr)                                        \
  do {                                                         \
    if (!(ptr)) return fail(PS_NULL_ARGUMENT, #ptr " is NULL"); \
  } while (0)

}  // namespace

extern "C" {

const char* ps_last_error(void) { return last_error.c_str(); }

const char* ps_status_name(ps_status s) {
  switch (s) {
    case PS_OK: return "ok";
    case PS_NULL_ARGUMENT: return "null-argument";
    case PS_INDEX_OUT_OF_RANGE: return "index-out-of-range";
    case PS_BUFFER_TOO_SMALL: return "buffer-too-small";
    case PS_UNKNOWN: return "unknown";
    case PS_CONSTRAINT_VIOLATION: return to_string(ErrorCode::ConstraintViolation);
    case PS_DOMAIN: return to_string(ErrorCode::Domain);
    case PS_NOT_SEPARATED: return to_string(ErrorCode::NotSeparated);
    case PS_NOT_IN_F2: return to_string(ErrorCode::NotInF2);
    case PS_NO_NULLSPACE: return to_string(ErrorCode::NoNullspace);
    case PS_NO_ZERO_MODE: return to_string(ErrorCode::NoZeroMode);
    case PS_NO_BOUND_STATE: return to_string(ErrorCode::NoBoundState);
    case PS_ZERO_FUNCTION: return to_string(ErrorCode::ZeroFunction);
    case PS_TAIL_BOUND_NOT_MET: return to_string(ErrorCode::TailBoundNotMet);
    case PS_UNSUPPORTED_FAMILY: return to_string(ErrorCode::UnsupportedFamily);
    case PS_OUT_OF_DOMAIN: return to_string(ErrorCode::OutOfDomain);
    case PS_INTERNAL_CONTRADICTION:
      return to_string(ErrorCode::InternalContradiction);
    case PS_EIGENSOLVER_FAILURE: return to_string(ErrorCode::EigensolverFailure);
  }
  return "unknown";
}

ps_status ps_point_create(double xi, double alpha_re, double alpha_im,
                          double beta_re, double beta_im, double L0,
                          ps_point** out) {
  PS_REQUIRE(out);
  *out = nullptr;
  return guard([&] {
    *out = new ps_point{make_u2(xi, {alpha_re, alpha_im}, {beta_re, beta_im}, L0)};
  });
}

void ps_point_destroy(ps_point* p) { delete p; }

ps_status ps_point_components(const ps_point* p, double out[6]) {
  PS_REQUIRE(p);
  PS_REQUIRE(out);
  const U2Params& u = p->value;
  out[0] = u.xi();
  out[1] = u.alpha_re();
  out[2] = u.alpha_im();
  out[3] = u.beta_re();
  out[4] = u.beta_im();
  out[5] = u.L0();
  return PS_OK;
}

ps_status ps_point_matrix(const ps_point* p, double out[8]) {
  PS_REQUIRE(p);
  PS_REQUIRE(out);
  const Matrix2c m = to_matrix(p->value);
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) put(m[r][c], out + 2 * (2 * r + c));
  }
  return PS_OK;
}

ps_status ps_classify(const ps_point* p, double tol, ps_flags* out) {
  PS_REQUIRE(p);
  PS_REQUIRE(out);
  return guard([&] {
    const SubfamilyFlags f = classify(p->value, tol > 0.0 ? tol : kClassifyTolerance);
    *out = {f.in_f1, f.in_f2, f.in_f3, f.in_f4, f.in_f5_plus, f.in_f5_minus};
  });
}

ps_status ps_f2_theta(const ps_point* p, double* out) {
  PS_REQUIRE(p);
  PS_REQUIRE(out);
  return guard([&] { *out = f2_theta(p->value); });
}

ps_status ps_separated_lengths(const ps_point* p, double* l_plus, int* plus_inf,
                               double* l_minus, int* minus_inf) {
  PS_REQUIRE(p);
  PS_REQUIRE(l_plus);
  PS_REQUIRE(plus_inf);
  PS_REQUIRE(l_minus);
  PS_REQUIRE(minus_inf);
  return guard([&] {
    const SeparatedLengths s = separated_lengths(p->value);
    *plus_inf = s.l_plus.is_infinite();
    *l_plus = *plus_inf ? 0.0 : s.l_plus.value();
    *minus_inf = s.l_minus.is_infinite();
    *l_minus = *minus_inf ? 0.0 : s.l_minus.value();
  });
}

ps_status ps_fingerprint(const ps_point* p, double out[3]) {
  PS_REQUIRE(p);
  PS_REQUIRE(out);
  const SpectralFingerprint f = spectral_fingerprint(p->value);
  out[0] = f.xi;
  out[1] = f.alpha_re;
  out[2] = f.beta_im;
  return PS_OK;
}

ps_status ps_positive_condition(const ps_point* p, const ps_geometry* g,
                                double k, double* out) {
  PS_REQUIRE(p);
  PS_REQUIRE(out);
  return guard([&] { *out = positive_condition(p->value, geometry(g), k); });
}

ps_status ps_negative_condition(const ps_point* p, const ps_geometry* g,
                                double kappa, double* out) {
  PS_REQUIRE(p);
  PS_REQUIRE(out);
  return guard([&] { *out = negative_condition(p->value, geometry(g), kappa); });
}

ps_status ps_zero_mode_exists(const ps_point* p, const ps_geometry* g,
                              int* out) {
  PS_REQUIRE(p);
  PS_REQUIRE(out);
  return guard([&] { *out = zero_mode_exists(p->value, geometry(g)); });
}

ps_status ps_positive_roots(const ps_point* p, const ps_geometry* g,
                            double k_max, double* roots, int* mult, size_t cap,
                            size_t* count) {
  PS_REQUIRE(p);
  PS_REQUIRE(count);
  return guard([&] {
    copy_roots(find_positive_roots(p->value, geometry(g), k_max), roots, mult,
               cap, count);
  });
}

ps_status ps_negative_roots(const ps_point* p, const ps_geometry* g,
                            double* roots, int* mult, size_t cap,
                            size_t* count) {
  PS_REQUIRE(p);
  PS_REQUIRE(count);
  return guard([&] {
    copy_roots(find_negative_roots(p->value, geometry(g)), roots, mult, cap,
               count);
  });
}

ps_status ps_spectrum_create(const ps_point* p, const ps_geometry* g,
                             int n_levels, ps_spectrum** out) {
  PS_REQUIRE(p);
  PS_REQUIRE(out);
  *out = nullptr;
  return guard([&] {
    *out = new ps_spectrum{spectrum(p->value, geometry(g), n_levels)};
  });
}

ps_status ps_spectrum_up_to(const ps_point* p, const ps_geometry* g,
                            double k_max, ps_spectrum** out) {
  PS_REQUIRE(p);
  PS_REQUIRE(out);
  *out = nullptr;
  return guard([&] {
    *out = new ps_spectrum{spectrum_up_to(p->value, geometry(g), k_max)};
  });
}

void ps_spectrum_destroy(ps_spectrum* s) { delete s; }

size_t ps_spectrum_size(const ps_spectrum* s) {
  return s ? s->value.levels.size() : 0;
}

ps_status ps_spectrum_level(const ps_spectrum* s, size_t i, ps_level* out) {
  PS_REQUIRE(s);
  PS_REQUIRE(out);
  if (i >= s->value.levels.size()) {
    return fail(PS_INDEX_OUT_OF_RANGE, "level index out of range");
  }
  const Level& lv = s->value.levels[i];
  *out = {to_c(lv.sector), lv.parameter, lv.energy, lv.multiplicity};
  return PS_OK;
}

ps_status ps_spectrum_energies(const ps_spectrum* s, double* out, size_t cap,
                               size_t* count) {
  PS_REQUIRE(s);
  PS_REQUIRE(count);
  const std::vector<double> e = expanded_energies(s->value);
  for (size_t i = 0; i < e.size() && i < cap; ++i) {
    if (out) out[i] = e[i];
  }
  *count = e.size();
  return PS_OK;
}

ps_status ps_modes_for_level(const ps_point* p, const ps_geometry* g,
                             const ps_level* level, ps_modes** out) {
  PS_REQUIRE(p);
  PS_REQUIRE(level);
  PS_REQUIRE(out);
  *out = nullptr;
  return guard([&] {
    const BoxGeometry box = geometry(g);
    const Level lv{from_c(level->sector), level->parameter, level->energy,
                   level->multiplicity};
    *out = new ps_modes{box, modes_for_level(p->value, box, lv)};
  });
}

ps_status ps_f2_mode(const ps_point* p, const ps_geometry* g, int s, int n,
                     ps_modes** out) {
  PS_REQUIRE(p);
  PS_REQUIRE(out);
  *out = nullptr;
  return guard([&] {
    const BoxGeometry box = geometry(g);
    *out = new ps_modes{box, {normalize(f2_mode(p->value, box, s, n), box)}};
  });
}

void ps_modes_destroy(ps_modes* m) { delete m; }

size_t ps_modes_size(const ps_modes* m) { return m ? m->value.size() : 0; }

ps_status ps_mode_coefficients(const ps_modes* m, size_t i, double out[4]) {
  PS_REQUIRE(m);
  PS_REQUIRE(out);
  if (i >= m->value.size()) return fail(PS_INDEX_OUT_OF_RANGE, "mode index");
  put(m->value[i].coeff_a, out);
  put(m->value[i].coeff_b, out + 2);
  return PS_OK;
}

ps_status ps_mode_value(const ps_modes* m, size_t i, double x, double out[2]) {
  PS_REQUIRE(m);
  PS_REQUIRE(out);
  if (i >= m->value.size()) return fail(PS_INDEX_OUT_OF_RANGE, "mode index");
  return guard([&] { put(mode_value(mode_at(m, i), x), out); });
}

ps_status ps_mode_derivative(const ps_modes* m, size_t i, double x,
                             double out[2]) {
  PS_REQUIRE(m);
  PS_REQUIRE(out);
  if (i >= m->value.size()) return fail(PS_INDEX_OUT_OF_RANGE, "mode index");
  return guard([&] { put(mode_derivative(mode_at(m, i), x), out); });
}

ps_status ps_mode_norm(const ps_modes* m, size_t i, double* out) {
  PS_REQUIRE(m);
  PS_REQUIRE(out);
  if (i >= m->value.size()) return fail(PS_INDEX_OUT_OF_RANGE, "mode index");
  return guard([&] { *out = norm(mode_at(m, i), m->geometry); });
}

ps_status ps_mode_residual(const ps_modes* m, size_t i, const ps_point* p,
                           double* out) {
  PS_REQUIRE(m);
  PS_REQUIRE(p);
  PS_REQUIRE(out);
  if (i >= m->value.size()) return fail(PS_INDEX_OUT_OF_RANGE, "mode index");
  return guard(
      [&] { *out = boundary_residual(mode_at(m, i), p->value, m->geometry); });
}

ps_status ps_mode_current(const ps_modes* m, size_t i, double x, double* out) {
  PS_REQUIRE(m);
  PS_REQUIRE(out);
  if (i >= m->value.size()) return fail(PS_INDEX_OUT_OF_RANGE, "mode index");
  return guard(
      [&] { *out = probability_current(mode_at(m, i), m->geometry, x); });
}

ps_status ps_spectral_kernel_create(const ps_point* p, const ps_geometry* g,
                                    double tau, double tol, ps_kernel** out) {
  PS_REQUIRE(p);
  PS_REQUIRE(out);
  *out = nullptr;
  return guard([&] {
    const double t = tol > 0.0 ? tol : kKernelAutoTolerance;
    *out = new ps_kernel{SpectralKernel::with_tolerance(
        p->value, geometry(g), EuclideanTime(tau), t)};
  });
}

void ps_kernel_destroy(ps_kernel* k) { delete k; }

ps_status ps_kernel_eval(const ps_kernel* k, double a, double b,
                         double out[2]) {
  PS_REQUIRE(k);
  PS_REQUIRE(out);
  return guard([&] { put(k->value(a, b), out); });
}

ps_status ps_kernel_tail_bound(const ps_kernel* k, double* out) {
  PS_REQUIRE(k);
  PS_REQUIRE(out);
  *out = k->value.tail_bound();
  return PS_OK;
}

ps_status ps_image_kernel(const ps_point* p, const ps_geometry* g, double a,
                          double b, double tau, double out[2]) {
  PS_REQUIRE(p);
  PS_REQUIRE(out);
  return guard([&] {
    const BoxGeometry box = geometry(g);
    const EuclideanTime t(tau);
    // The period depends on the family; build once to learn it.
    const double period = build_image_terms(p->value, box, 0).period;
    const int n = required_images(box, t, period);
    put(image_heat_kernel(build_image_terms(p->value, box, n), a, b, t, n), out);
  });
}

ps_status ps_free_prefactor(const ps_geometry* g, double tau, double* out) {
  PS_REQUIRE(out);
  return guard([&] { *out = free_prefactor(geometry(g), EuclideanTime(tau)); });
}

ps_status ps_theta3(double z_re, double z_im, double tau_re, double tau_im,
                    double out[2]) {
  PS_REQUIRE(out);
  return guard([&] { put(theta3({z_re, z_im}, {tau_re, tau_im}), out); });
}

ps_status ps_halfline_reflection(double L, int L_inf, double k,
                                 double out[2]) {
  PS_REQUIRE(out);
  return guard([&] {
    const WallParam w = WallParam::from_length(
        L_inf ? ExtendedLength::infinity() : ExtendedLength::finite(L));
    put(reflection_coefficient(w, k), out);
  });
}

ps_status ps_halfline_bound_energy(double L, int L_inf, double hbar,
                                   double mass, double* out) {
  PS_REQUIRE(out);
  return guard([&] {
    const WallParam w = WallParam::from_length(
        L_inf ? ExtendedLength::infinity() : ExtendedLength::finite(L));
    *out = bound_state(w, hbar, mass).energy;
  });
}

ps_status ps_fd_spectrum(const ps_point* p, const ps_geometry* g, int n_points,
                         double shift, int n_levels, double* out) {
  PS_REQUIRE(p);
  PS_REQUIRE(out);
  return guard([&] {
    const std::vector<double> e =
        fd_spectrum(p->value, geometry(g), FdConfig{n_points, shift}, n_levels);
    std::copy(e.begin(), e.end(), out);
  });
}

}  // extern "C"
