#ifndef HARDEDGE_KERNEL_SERIES_HPP
#define HARDEDGE_KERNEL_SERIES_HPP

// Independent evaluation of the kernel as
//
//   K(x, y) = \int_0^1 G^{1,q}_{q,r+1}(tx | -mu ; 0, -nu)
//                      G^{r,0}_{q,r+1}(ty | mu ; nu, 0) dt,
//
// with both Meijer-G functions summed from the residues of their single
// Mellin-Barnes contour. The first has simple poles at t = 0, 1, 2, ... only
// and is an ordinary power series. The second has poles at nu_j + n which may
// coincide or be cancelled by zeros from the mu_k; instead of case analysis
// each cluster of nearby poles is enclosed by a small circle and the residue
// sum is taken with the trapezoid rule, which is spectrally accurate there.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include "hardedge/errors.hpp"
#include "hardedge/params.hpp"
#include "hardedge/quadrature.hpp"
#include "hardedge/specfun.hpp"

namespace hardedge {

namespace detail {

// G^{1,q}_{q,r+1}(z | -mu ; 0, -nu)
//   = sum_n (-z)^n / n! prod Gamma(1 + mu_k + n) / prod Gamma(1 + nu_j + n).
inline double meijer_g_power_series(double z, const ProcessParams& p, int n_terms) {
  double log_lead = 0.0;
  for (double m : p.mu) log_lead += std::lgamma(1.0 + m);
  for (double n : p.nu) log_lead -= std::lgamma(1.0 + n);
  double term = std::exp(log_lead);
  CompensatedSum<double> acc;
  acc.add(term);
  for (int n = 0; n + 1 < n_terms; ++n) {
    double ratio = -z / (n + 1.0);
    for (double m : p.mu) ratio *= 1.0 + m + n;
    for (double v : p.nu) ratio /= 1.0 + v + n;
    term *= ratio;
    acc.add(term);
    if (term == 0.0) return acc.value();
  }
  if (std::abs(term) > 1e-14 * std::abs(acc.value())) {
    throw ConvergenceError("kernel_eval_series: power series not converged in " +
                           std::to_string(n_terms) + " terms at z = " + std::to_string(z));
  }
  return acc.value();
}

// G^{r,0}_{q,r+1}(z | mu ; nu, 0) as a sum over circles around pole clusters
// of g(t) z^t, g(t) = prod Gamma(nu_j - t) / (Gamma(1 + t) prod Gamma(mu_k - t)).
class ResidueSeries {
 public:
  ResidueSeries(const ProcessParams& p, int n_terms) {
    constexpr double kMerge = 0.05;
    constexpr int kCircle = 64;
    double nu_lo = *std::min_element(p.nu.begin(), p.nu.end());
    const double t_max = nu_lo + n_terms - 1.0;

    std::vector<double> poles;
    for (double v : p.nu) {
      for (double t = v; t <= t_max + 1.5; t += 1.0) poles.push_back(t);
    }
    std::sort(poles.begin(), poles.end());
    struct Cluster {
      double lo, hi;
    };
    std::vector<Cluster> clusters;
    for (double t : poles) {
      if (!clusters.empty() && t - clusters.back().hi < kMerge) {
        clusters.back().hi = t;
      } else {
        clusters.push_back({t, t});
      }
    }
    double gap = 1.0;
    for (std::size_t k = 1; k < clusters.size(); ++k) {
      gap = std::min(gap, clusters[k].lo - clusters[k - 1].hi);
    }
    const double delta = std::min(0.25, 0.4 * gap);

    for (const Cluster& c : clusters) {
      if (c.lo > t_max) break;
      const double centre = 0.5 * (c.lo + c.hi);
      const double radius = 0.5 * (c.hi - c.lo) + delta;
      const bool tail = c.lo > t_max - 1.0;
      for (int k = 0; k < kCircle; ++k) {
        const Complex e = std::polar(1.0, 2.0 * std::numbers::pi * (k + 0.5) / kCircle);
        const Complex t = centre + radius * e;
        Complex log_g = -log_gamma(1.0 + t);
        for (double v : p.nu) log_g += log_gamma(v - t);
        for (double m : p.mu) log_g -= log_gamma(m - t);
        // The Mellin-Barnes loop runs clockwise around the poles.
        nodes_.push_back({t, log_g + std::log(-radius * e / static_cast<double>(kCircle)), tail});
      }
    }
  }

  double operator()(double z) const {
    const double lz = std::log(z);
    Complex total = 0.0;
    Complex tail = 0.0;
    for (const Node& n : nodes_) {
      const Complex term = std::exp(n.log_coeff + n.t * lz);
      total += term;
      if (n.tail) tail += term;
    }
    if (std::abs(tail) > 1e-14 * std::abs(total.real())) {
      throw ConvergenceError("kernel_eval_series: residue series tail " +
                             std::to_string(std::abs(tail)) + " not negligible at z = " +
                             std::to_string(z));
    }
    return total.real();
  }

 private:
  struct Node {
    Complex t;
    Complex log_coeff;
    bool tail;
  };
  std::vector<Node> nodes_;
};

}  // namespace detail

/// The kernel from the t-integral of two residue series, with n_t-point
/// Gauss-Legendre in tau after t = tau^kappa to flatten the t^{nu_min}
/// endpoint behaviour.
inline double kernel_eval_series(double x, double y, const ProcessParams& params, int n_t = 60,
                                 int n_terms = 60) {
  params.validate();
  if (!(x > 0.0) || !(y > 0.0)) throw DomainError("kernel_eval_series: requires x, y > 0");
  if (n_t < 1 || n_terms < 2) throw DomainError("kernel_eval_series: requires n_t >= 1, n_terms >= 2");
  const detail::ResidueSeries second(params, n_terms);
  const double kappa = std::min(64.0, std::ceil(8.0 / (1.0 + params.nu_min())));
  const GaussRule rule = gauss_legendre_rule(n_t);
  detail::CompensatedSum<double> acc;
  for (int k = 0; k < n_t; ++k) {
    const double tau = 0.5 * (rule.nodes[k] + 1.0);
    const double t = std::pow(tau, kappa);
    if (t == 0.0) continue;
    const double jac = 0.5 * rule.weights[k] * kappa * std::pow(tau, kappa - 1.0);
    acc.add(jac * detail::meijer_g_power_series(t * x, params, n_terms) * second(t * y));
  }
  return acc.value();
}

}  // namespace hardedge

#endif  // HARDEDGE_KERNEL_SERIES_HPP
