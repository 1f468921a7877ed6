#pragma once

#include <vector>

#include "pointspec/spectral.hpp"
#include "pointspec/u2param.hpp"

namespace pointspec {

struct FdConfig {
  int n_points = 2000;
  /// Energy offset, in units of hbar^2/(2 m l^2), subtracted from the first
  /// trial shift when bracketing the lowest level.
  double shift = 0.0;

  /// Throws Error(ConstraintViolation) unless n_points >= 16.
  void validate() const;
};

/// Lowest n_levels energies of -(hbar^2/2m) d^2/dx^2 discretized on
/// n_points nodes x_i = i h with the boundary conditions of p.
///
/// The operator is the lumped-mass linear element form
///   int |psi'|^2 - Psi^dagger M Psi,  M = sum_j tan(theta_j/2)/L0 v_j v_j^dagger
/// over the eigenpairs (e^{i theta_j}, v_j) of U, with directions at
/// theta_j = pi imposed as constraints Psi . v_j = 0. Lumping makes the
/// interior rows the standard three-point stencil and the boundary rows a
/// second-order ghost-point closure. Eigenvalues are isolated by bisection
/// on Sylvester inertia counts, one tridiagonal factorization plus a
/// Schur complement of at most two boundary unknowns per count, so the
/// Hermitian structure is exact and each level costs O(n_points log(1/eps)).
/// Throws Error(EigensolverFailure) when bracketing fails.
std::vector<double> fd_spectrum(const U2Params& p, const BoxGeometry& g,
                                const FdConfig& cfg, int n_levels);

/// Number of discrete eigenvalues below energy e.
int fd_count_below(const U2Params& p, const BoxGeometry& g,
                   const FdConfig& cfg, double e);

}  // namespace pointspec
