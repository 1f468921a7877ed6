/* C interface to the point-interaction spectral library.
 *
 * Every fallible call returns a ps_status; on failure ps_last_error() holds a
 * message for the calling thread until its next failing call. Handles are
 * opaque and owned by the caller, who releases them with the matching
 * *_destroy function (NULL is accepted). Complex numbers are written as two
 * consecutive doubles (re, im). A NULL geometry means l = hbar = m = 1. */
#ifndef POINTSPEC_H
#define POINTSPEC_H

#include <stddef.h>

#if defined(_WIN32)
#define PS_API __declspec(dllexport)
#else
#define PS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ps_status {
  PS_OK = 0,
  PS_CONSTRAINT_VIOLATION = 1,
  PS_DOMAIN = 2,
  PS_NOT_SEPARATED = 3,
  PS_NOT_IN_F2 = 4,
  PS_NO_NULLSPACE = 5,
  PS_NO_ZERO_MODE = 6,
  PS_NO_BOUND_STATE = 7,
  PS_ZERO_FUNCTION = 8,
  PS_TAIL_BOUND_NOT_MET = 9,
  PS_UNSUPPORTED_FAMILY = 10,
  PS_OUT_OF_DOMAIN = 11,
  PS_INTERNAL_CONTRADICTION = 12,
  PS_EIGENSOLVER_FAILURE = 13,
  PS_NULL_ARGUMENT = 20,
  PS_INDEX_OUT_OF_RANGE = 21,
  PS_BUFFER_TOO_SMALL = 22,
  PS_UNKNOWN = 99
} ps_status;

typedef enum ps_sector {
  PS_SECTOR_POSITIVE = 0,
  PS_SECTOR_ZERO = 1,
  PS_SECTOR_NEGATIVE = 2
} ps_sector;

typedef struct ps_geometry {
  double l;
  double hbar;
  double mass;
} ps_geometry;

typedef struct ps_flags {
  int f1, f2, f3, f4, f5_plus, f5_minus;
} ps_flags;

typedef struct ps_level {
  ps_sector sector;
  double parameter; /* k or kappa */
  double energy;
  int multiplicity;
} ps_level;

typedef struct ps_point ps_point;
typedef struct ps_spectrum ps_spectrum;
typedef struct ps_modes ps_modes;
typedef struct ps_kernel ps_kernel;

PS_API const char* ps_last_error(void);
PS_API const char* ps_status_name(ps_status s);

/* Points of U(2) */
PS_API ps_status ps_point_create(double xi, double alpha_re, double alpha_im,
                                 double beta_re, double beta_im, double L0,
                                 ps_point** out);
PS_API void ps_point_destroy(ps_point* p);
/* xi, alpha_re, alpha_im, beta_re, beta_im, L0 */
PS_API ps_status ps_point_components(const ps_point* p, double out[6]);
/* U row-major, 4 complex entries */
PS_API ps_status ps_point_matrix(const ps_point* p, double out[8]);
PS_API ps_status ps_classify(const ps_point* p, double tol, ps_flags* out);
PS_API ps_status ps_f2_theta(const ps_point* p, double* out);
/* Infinite lengths are reported with the *_inf flag set and the value 0. */
PS_API ps_status ps_separated_lengths(const ps_point* p, double* l_plus,
                                      int* plus_inf, double* l_minus,
                                      int* minus_inf);
PS_API ps_status ps_fingerprint(const ps_point* p, double out[3]);

/* Spectral conditions */
PS_API ps_status ps_positive_condition(const ps_point* p,
                                       const ps_geometry* g, double k,
                                       double* out);
PS_API ps_status ps_negative_condition(const ps_point* p,
                                       const ps_geometry* g, double kappa,
                                       double* out);
PS_API ps_status ps_zero_mode_exists(const ps_point* p, const ps_geometry* g,
                                     int* out);
/* Writes min(cap, count) roots; *count is the total. */
PS_API ps_status ps_positive_roots(const ps_point* p, const ps_geometry* g,
                                   double k_max, double* roots, int* mult,
                                   size_t cap, size_t* count);
PS_API ps_status ps_negative_roots(const ps_point* p, const ps_geometry* g,
                                   double* roots, int* mult, size_t cap,
                                   size_t* count);

/* Spectra */
PS_API ps_status ps_spectrum_create(const ps_point* p, const ps_geometry* g,
                                    int n_levels, ps_spectrum** out);
PS_API ps_status ps_spectrum_up_to(const ps_point* p, const ps_geometry* g,
                                   double k_max, ps_spectrum** out);
PS_API void ps_spectrum_destroy(ps_spectrum* s);
PS_API size_t ps_spectrum_size(const ps_spectrum* s);
PS_API ps_status ps_spectrum_level(const ps_spectrum* s, size_t i,
                                   ps_level* out);
/* Energies repeated by multiplicity. */
PS_API ps_status ps_spectrum_energies(const ps_spectrum* s, double* out,
                                      size_t cap, size_t* count);

/* Eigenfunctions */
PS_API ps_status ps_modes_for_level(const ps_point* p, const ps_geometry* g,
                                    const ps_level* level, ps_modes** out);
/* Closed-form F2 mode, normalized with the phase convention. */
PS_API ps_status ps_f2_mode(const ps_point* p, const ps_geometry* g, int s,
                            int n, ps_modes** out);
PS_API void ps_modes_destroy(ps_modes* m);
PS_API size_t ps_modes_size(const ps_modes* m);
/* A, B (complex) */
PS_API ps_status ps_mode_coefficients(const ps_modes* m, size_t i,
                                      double out[4]);
PS_API ps_status ps_mode_value(const ps_modes* m, size_t i, double x,
                               double out[2]);
PS_API ps_status ps_mode_derivative(const ps_modes* m, size_t i, double x,
                                    double out[2]);
PS_API ps_status ps_mode_norm(const ps_modes* m, size_t i, double* out);
PS_API ps_status ps_mode_residual(const ps_modes* m, size_t i,
                                  const ps_point* p, double* out);
PS_API ps_status ps_mode_current(const ps_modes* m, size_t i, double x,
                                 double* out);

/* Euclidean kernels */
PS_API ps_status ps_spectral_kernel_create(const ps_point* p,
                                           const ps_geometry* g, double tau,
                                           double tol, ps_kernel** out);
PS_API void ps_kernel_destroy(ps_kernel* k);
PS_API ps_status ps_kernel_eval(const ps_kernel* k, double a, double b,
                                double out[2]);
PS_API ps_status ps_kernel_tail_bound(const ps_kernel* k, double* out);
/* Image sum with the image count chosen for a 1e-12 tail. */
PS_API ps_status ps_image_kernel(const ps_point* p, const ps_geometry* g,
                                 double a, double b, double tau,
                                 double out[2]);
PS_API ps_status ps_free_prefactor(const ps_geometry* g, double tau,
                                   double* out);
PS_API ps_status ps_theta3(double z_re, double z_im, double tau_re,
                           double tau_im, double out[2]);

/* Half line, wall psi(0) + L psi'(0) = 0; L_inf selects L = inf. */
PS_API ps_status ps_halfline_reflection(double L, int L_inf, double k,
                                        double out[2]);
PS_API ps_status ps_halfline_bound_energy(double L, int L_inf, double hbar,
                                          double mass, double* out);

/* Finite-difference oracle */
PS_API ps_status ps_fd_spectrum(const ps_point* p, const ps_geometry* g,
                                int n_points, double shift, int n_levels,
                                double* out);

#ifdef __cplusplus
}
#endif

#endif
