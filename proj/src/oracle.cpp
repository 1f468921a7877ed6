#include "pointspec/oracle.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <string>

#include "pointspec/error.hpp"

namespace pointspec {

namespace {

// Boundary data of the discrete form: the admissible subspace of
// (psi_0, psi_N), spanned by the columns of p, and the boundary matrix m.
struct Boundary {
  Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
  Eigen::MatrixXcd p;  // 2 x r isometry
};

Boundary boundary_from(const U2Params& params) {
  const Matrix2c u = to_matrix(params);
  Eigen::Matrix2cd U;
  U << u[0][0], u[0][1], u[1][0], u[1][1];
  Eigen::ComplexEigenSolver<Eigen::Matrix2cd> es(U);
  if (es.info() != Eigen::Success) {
    throw Error(ErrorCode::EigensolverFailure, "eigendecomposition of U failed");
  }
  // U is normal; orthonormalize in case of a repeated eigenvalue.
  Eigen::Matrix2cd v = es.eigenvectors();
  v.col(0).normalize();
  v.col(1) -= v.col(0).dot(v.col(1)) * v.col(0);
  if (v.col(1).norm() < 1e-8) {
    v.col(1) = Eigen::Vector2cd(-std::conj(v(1, 0)), std::conj(v(0, 0)));
  }
  v.col(1).normalize();

  Boundary b;
  std::vector<Eigen::Vector2cd> free;
  for (int j = 0; j < 2; ++j) {
    const cdouble z = es.eigenvalues()(j);
    if (std::abs(1.0 + z) < 1e-10) continue;
    const double t = std::real(cdouble(0.0, -1.0) * (z - 1.0) / (z + 1.0));
    b.m += (t / params.L0()) * v.col(j) * v.col(j).adjoint();
    free.push_back(v.col(j));
  }
  b.p.resize(2, static_cast<Eigen::Index>(free.size()));
  for (std::size_t j = 0; j < free.size(); ++j) {
    b.p.col(static_cast<Eigen::Index>(j)) = free[j];
  }
  return b;
}

class InertiaCounter {
 public:
  InertiaCounter(const U2Params& params, const BoxGeometry& g, int n_points)
      : b_(boundary_from(params)),
        n_(n_points - 2),
        h_(g.l / (n_points - 1)),
        piv_(static_cast<std::size_t>(n_)),
        x_(static_cast<std::size_t>(n_)) {}

  // Eigenvalues of -d^2/dx^2 below lambda.
  int operator()(double lambda) {
    const double diag = 2.0 / h_ - lambda * h_;
    const double off = -1.0 / h_;
    int count = 0;
    for (int i = 0; i < n_; ++i) {
      double d = i == 0 ? diag : diag - off * off / piv_[i - 1];
      if (d == 0.0) d = -std::numeric_limits<double>::epsilon() * std::abs(diag);
      piv_[i] = d;
      if (d < 0.0) ++count;
    }
    const double e = 1.0 / (h_ * h_);
    const double q00 = e * solve_component(0, off).first;
    const auto [q01, q11] = solve_component(n_ - 1, off);

    Eigen::Matrix2cd s = -b_.m;
    const double edge = 1.0 / h_ - lambda * h_ / 2.0;
    s(0, 0) += edge - q00;
    s(1, 1) += edge - e * q11;
    s(0, 1) -= e * q01;
    s(1, 0) -= e * q01;
    return count + negatives(b_.p.adjoint() * s * b_.p);
  }

 private:
  // Solves H_II x = e_j with the current pivots and returns (x_0, x_{n-1}).
  std::pair<double, double> solve_component(int j, double off) {
    for (int i = 0; i < n_; ++i) {
      const double r = i == j ? 1.0 : 0.0;
      x_[i] = i == 0 ? r : r - off / piv_[i - 1] * x_[i - 1];
    }
    x_[n_ - 1] /= piv_[n_ - 1];
    for (int i = n_ - 2; i >= 0; --i) {
      x_[i] = x_[i] / piv_[i] - off / piv_[i] * x_[i + 1];
    }
    return {x_[0], x_[n_ - 1]};
  }

  static int negatives(const Eigen::MatrixXcd& s) {
    if (s.rows() == 0) return 0;
    if (s.rows() == 1) return std::real(s(0, 0)) < 0.0 ? 1 : 0;
    const double tr = std::real(s(0, 0) + s(1, 1));
    const double det =
        std::real(s(0, 0)) * std::real(s(1, 1)) - std::norm(s(0, 1));
    if (det < 0.0) return 1;
    if (tr < 0.0) return det > 0.0 ? 2 : 1;
    return 0;
  }

  Boundary b_;
  int n_;
  double h_;
  std::vector<double> piv_;
  std::vector<double> x_;
};

}  // namespace

void FdConfig::validate() const {
  if (n_points < 16) {
    throw Error(ErrorCode::ConstraintViolation, "n_points must be >= 16");
  }
  if (!std::isfinite(shift)) {
    throw Error(ErrorCode::ConstraintViolation, "shift must be finite");
  }
}

int fd_count_below(const U2Params& p, const BoxGeometry& g,
                   const FdConfig& cfg, double e) {
  g.validate();
  cfg.validate();
  InertiaCounter count(p, g, cfg.n_points);
  return count(e / g.energy_unit());
}

std::vector<double> fd_spectrum(const U2Params& p, const BoxGeometry& g,
                                const FdConfig& cfg, int n_levels) {
  g.validate();
  cfg.validate();
  if (n_levels < 0 || 4 * n_levels > cfg.n_points) {
    throw Error(ErrorCode::Domain, "n_levels must be in [0, n_points/4]");
  }
  InertiaCounter count(p, g, cfg.n_points);
  const double unit = 1.0 / (g.l * g.l);

  double lo = -(1.0 + std::abs(cfg.shift)) * unit;
  for (int it = 0; count(lo) > 0; ++it) {
    if (it > 200) {
      throw Error(ErrorCode::EigensolverFailure, "no lower bracket found");
    }
    lo *= 2.0;
  }

  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n_levels));
  for (int j = 0; j < n_levels; ++j) {
    double a = lo;
    double b = std::max(10.0 * unit, 2.0 * std::abs(lo));
    for (int it = 0; count(b) <= j; ++it) {
      if (it > 200) {
        throw Error(ErrorCode::EigensolverFailure,
                    "no upper bracket for level " + std::to_string(j));
      }
      b *= 2.0;
    }
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (a + b);
      if (mid <= a || mid >= b) break;
      if (count(mid) <= j) {
        a = mid;
      } else {
        b = mid;
      }
    }
    if (!std::isfinite(a) || !std::isfinite(b)) {
      throw Error(ErrorCode::EigensolverFailure, "bisection diverged");
    }
    out.push_back(0.5 * (a + b) * g.energy_unit());
  }
  return out;
}

}  // namespace pointspec
