#ifndef HARDEDGE_FREDHOLM_HPP
#define HARDEDGE_FREDHOLM_HPP

// Fredholm determinants det(1 - K|[0,s]) by the Nystrom method: Gauss-Legendre
// nodes x_i and weights w_i on [0, s], then det(I - M) with
// M_ij = sqrt(w_i) K(x_i, x_j) sqrt(w_j), from an LU factorization.

#include <Eigen/Dense>

#include <cfloat>
#include <cmath>
#include <concepts>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "hardedge/errors.hpp"
#include "hardedge/params.hpp"
#include "hardedge/quadrature.hpp"

namespace hardedge {

struct FredholmGrid {
  double s = 0.0;
  int m = 0;
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// m-point Gauss-Legendre rule on [0, s]. With grading kappa > 1 the rule is
/// taken in xi on [0, 1] and mapped through x = s xi^kappa, which clusters
/// nodes at 0 and absorbs an x^nu singularity with nu > -1 when
/// kappa (1 + nu) >= 2.
inline FredholmGrid gauss_legendre_grid(double s, int m, int grading = 1) {
  if (!(s > 0.0) || !std::isfinite(s)) throw DomainError("gauss_legendre_grid: requires s > 0");
  if (m < 2) throw DomainError("gauss_legendre_grid: requires m >= 2");
  if (grading < 1) throw DomainError("gauss_legendre_grid: requires grading >= 1");
  const GaussRule rule = gauss_legendre_rule(m);
  FredholmGrid grid{s, m, std::vector<double>(m), std::vector<double>(m)};
  for (int i = 0; i < m; ++i) {
    const double xi = 0.5 * (rule.nodes[i] + 1.0);
    grid.nodes[i] = s * std::pow(xi, grading);
    grid.weights[i] = 0.5 * s * rule.weights[i] * grading * std::pow(xi, grading - 1);
  }
  return grid;
}

/// Grading exponent ceil(2 / (1 + nu_min)) when some parameter is negative.
inline int grading_for(const ProcessParams& params) {
  const double nu_min = params.nu_min();
  if (nu_min >= 0.0) return 1;
  return static_cast<int>(std::ceil(2.0 / (1.0 + nu_min) - 1e-12));
}

inline FredholmGrid grid_for(const ProcessParams& params, double s, int m) {
  return gauss_legendre_grid(s, m, grading_for(params));
}

/// Anything callable as k(x, y) -> double.
template <typename K>
concept KernelFunction = requires(const K& k, double x) {
  { k(x, x) } -> std::convertible_to<double>;
};

/// Kernels that can fill the whole matrix K(x_i, x_j) at once.
template <typename K>
concept BatchKernel = KernelFunction<K> && requires(const K& k, std::span<const double> nodes) {
  { k.matrix(nodes) } -> std::convertible_to<Eigen::MatrixXd>;
};

template <KernelFunction K>
Eigen::MatrixXd kernel_on_nodes(const K& kernel, std::span<const double> nodes) {
  if constexpr (BatchKernel<K>) {
    return kernel.matrix(nodes);
  } else {
    const auto m = static_cast<Eigen::Index>(nodes.size());
    Eigen::MatrixXd out(m, m);
    for (Eigen::Index j = 0; j < m; ++j) {
      for (Eigen::Index i = 0; i < m; ++i) out(i, j) = kernel(nodes[i], nodes[j]);
    }
    return out;
  }
}

struct LogDeterminant {
  double log_abs = 0.0;
  int sign = 1;
};

/// ln|det A| and sign(det A) from the pivots of a partial-pivoting LU.
/// Throws SingularityError when a pivot falls below 64 eps.
inline LogDeterminant log_determinant(const Eigen::MatrixXd& a) {
  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(a);
  const Eigen::MatrixXd& u = lu.matrixLU();
  LogDeterminant out;
  out.sign = static_cast<int>(lu.permutationP().determinant());
  for (Eigen::Index i = 0; i < u.rows(); ++i) {
    const double pivot = u(i, i);
    if (!(std::abs(pivot) >= 64.0 * std::numeric_limits<double>::epsilon())) {
      throw SingularityError("fredholm determinant: pivot " + std::to_string(pivot) +
                             " underflows at row " + std::to_string(i) +
                             "; determinant numerically zero");
    }
    out.log_abs += std::log(std::abs(pivot));
    if (pivot < 0.0) out.sign = -out.sign;
  }
  return out;
}

/// ln det(1 - K|[0,s]) on the given grid.
template <KernelFunction K>
double log_gap_determinant(double s, const FredholmGrid& grid, const K& kernel) {
  if (grid.s != s) {
    throw DomainError("log_gap_determinant: grid built for s = " + std::to_string(grid.s) +
                      ", called with s = " + std::to_string(s));
  }
  const auto m = static_cast<Eigen::Index>(grid.nodes.size());
  Eigen::VectorXd root_w(m);
  for (Eigen::Index i = 0; i < m; ++i) root_w(i) = std::sqrt(grid.weights[i]);
  Eigen::MatrixXd a = -(root_w.asDiagonal() * kernel_on_nodes(kernel, grid.nodes) * root_w.asDiagonal());
  a.diagonal().array() += 1.0;
  if (!a.allFinite()) throw AccuracyError("log_gap_determinant: non-finite kernel value on the grid");
  const LogDeterminant ld = log_determinant(a);
  if (ld.sign < 0) {
    throw SingularityError("log_gap_determinant: determinant negative (" +
                           std::to_string(-std::exp(ld.log_abs)) +
                           "); discretization lost positivity");
  }
  return ld.log_abs;
}

/// det(1 - K|[0,s]). Throws SingularityError when the value underflows.
template <KernelFunction K>
double gap_determinant(double s, const FredholmGrid& grid, const K& kernel) {
  const double log_det = log_gap_determinant(s, grid, kernel);
  if (log_det < std::log(DBL_MIN)) {
    throw SingularityError("gap_determinant: ln det = " + std::to_string(log_det) +
                           " underflows double precision");
  }
  return std::exp(log_det);
}

}  // namespace hardedge

#endif  // HARDEDGE_FREDHOLM_HPP
