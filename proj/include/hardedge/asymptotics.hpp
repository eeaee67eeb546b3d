#ifndef HARDEDGE_ASYMPTOTICS_HPP
#define HARDEDGE_ASYMPTOTICS_HPP

// Constants of the large-gap expansion
//
//   ln det(1 - K|[0,s]) = -a s^{2 rho} + b s^rho + c ln s + ln C + o(1),
//
// in closed form. With d = r - q, S1 = sum nu - sum mu and
// S2 = sum nu^2 - sum mu^2:
//
//   rho = 1/(1 + d),   a = d^{(1-d)/(1+d)} (1 + d)^2 / 4,
//   b = (1 + d) d^{-d/(1+d)} S1,   c = (d - 1)/(12 (d + 1)) - S2/(2 (d + 1)).

#include <cmath>
#include <numbers>
#include <vector>

#include "hardedge/errors.hpp"
#include "hardedge/params.hpp"
#include "hardedge/specfun.hpp"

namespace hardedge {

struct AsymptoticCoeffs {
  double rho = 0.0;
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double lnC = 0.0;
};

namespace detail {

inline double log_g_real(double x) { return log_barnes_g(Complex(x, 0.0)).real(); }

// sum_{j<k} v_j v_k
inline double pair_sum(const std::vector<double>& v) {
  double total = 0.0;
  for (std::size_t j = 0; j < v.size(); ++j) {
    for (std::size_t k = j + 1; k < v.size(); ++k) total += v[j] * v[k];
  }
  return total;
}

}  // namespace detail

inline AsymptoticCoeffs compute_coeffs(const ProcessParams& params) {
  params.validate();
  const double d = params.r - params.q;
  double sum_nu = 0.0, sum_mu = 0.0, sq_nu = 0.0, sq_mu = 0.0;
  for (double v : params.nu) {
    sum_nu += v;
    sq_nu += v * v;
  }
  for (double v : params.mu) {
    sum_mu += v;
    sq_mu += v * v;
  }
  const double s1 = sum_nu - sum_mu;
  const double s2 = sq_nu - sq_mu;

  AsymptoticCoeffs out;
  out.rho = 1.0 / (1.0 + d);
  out.a = std::pow(d, (1.0 - d) / (1.0 + d)) * (1.0 + d) * (1.0 + d) / 4.0;
  out.b = (1.0 + d) * std::pow(d, -d / (1.0 + d)) * s1;
  out.c = (d - 1.0) / (12.0 * (d + 1.0)) - s2 / (2.0 * (d + 1.0));

  double log_c = 0.0;
  for (double v : params.nu) log_c += detail::log_g_real(1.0 + v);
  for (double v : params.mu) log_c -= detail::log_g_real(1.0 + v);
  log_c -= 0.5 * s1 * std::log(2.0 * std::numbers::pi);
  log_c += (1.0 - d) * zeta_prime_minus1();

  const double pn = detail::pair_sum(params.nu);
  const double pm = detail::pair_sum(params.mu);
  const double cross = sum_nu * sum_mu;
  const double mixed = pn + pm - cross + sq_mu;
  const double log_d = std::log(d);
  if (log_d != 0.0) {
    const double coeff = (1.0 + d - d * d) / (2.0 * (1.0 + d)) * s2 +
                         (-2.0 + d * d * (d - 1.0)) / (24.0 * (1.0 + d)) + mixed;
    log_c += coeff * log_d;
  }
  const double coeff_1pd = -(2.0 - d) / 2.0 * s2 - (d - 1.0) * (d - 1.0) / 24.0 - mixed;
  log_c += coeff_1pd * std::log1p(d);
  out.lnC = log_c;
  return out;
}

/// ln of G(1 + nu) (2 pi)^{-nu/2} 2^{-nu^2/2}, the Bessel-process constant.
inline double log_constant_bessel(double nu) {
  if (!(nu > -1.0)) throw DomainError("log_constant_bessel: requires nu > -1");
  return detail::log_g_real(1.0 + nu) - 0.5 * nu * std::log(2.0 * std::numbers::pi) -
         0.5 * nu * nu * std::numbers::ln2;
}

/// ln C_r for r parameters all equal to nu; r may be real.
inline double log_constant_kr(double r, double nu) {
  if (!(r >= 1.0)) throw DomainError("log_constant_kr: requires r >= 1");
  if (!(nu > -1.0)) throw DomainError("log_constant_kr: requires nu > -1");
  const double nu2 = nu * nu;
  return r * detail::log_g_real(1.0 + nu) - 0.5 * r * nu * std::log(2.0 * std::numbers::pi) -
         (r - 1.0) * zeta_prime_minus1() +
         (-2.0 + r * r * (r - 1.0 + 12.0 * nu2)) / (24.0 * (r + 1.0)) * std::log(r) -
         ((r - 1.0) * (r - 1.0) + 12.0 * r * nu2) / 24.0 * std::log1p(r);
}

namespace detail {

// The regularized sum d(1/r, alpha), reduced to zeta'(-1) and Barnes G.
inline double mb_regularized_sum(int r, double alpha) {
  const double rr = r;
  double total = rr * zeta_prime_minus1() +
                 (1.0 + (1.0 + 2.0 * alpha) * rr) / 4.0 * std::log(2.0 * std::numbers::pi) -
                 (3.0 + 1.0 / rr + rr + 6.0 * alpha * (1.0 + rr + alpha * rr)) / 12.0 * std::log(rr);
  for (int k = 1; k <= r; ++k) total -= log_g_real(1.0 + alpha + k / rr);
  return total;
}

}  // namespace detail

/// ln C^MB(theta, alpha) of the Muttalib-Borodin hard edge at theta = 1/r.
inline double log_constant_mb(int r, double alpha) {
  if (r < 1) throw DomainError("log_constant_mb: requires integer r >= 1");
  if (!(alpha > -1.0)) throw DomainError("log_constant_mb: requires alpha > -1");
  const double theta = 1.0 / r;
  return detail::log_g_real(1.0 + alpha) - 0.5 * alpha * std::log(2.0 * std::numbers::pi) +
         detail::mb_regularized_sum(1, alpha) - detail::mb_regularized_sum(r, alpha) +
         (24.0 * alpha * (alpha + 2.0) + 15.0 + 3.0 * theta + 4.0 * theta * theta) /
             (24.0 * (1.0 + theta)) * std::log(theta) +
         (6.0 * alpha * theta - 6.0 * alpha * (1.0 + alpha) - (theta - 1.0) * (theta - 1.0)) /
             (12.0 * theta) * std::log1p(theta);
}

/// -a s^{2 rho} + b s^rho + c ln s + ln C.
inline double truncated_log_expansion(double s, const AsymptoticCoeffs& k) {
  if (!(s > 0.0)) throw DomainError("truncated_log_expansion: requires s > 0");
  const double s_rho = std::pow(s, k.rho);
  return -k.a * s_rho * s_rho + k.b * s_rho + k.c * std::log(s) + k.lnC;
}

}  // namespace hardedge

#endif  // HARDEDGE_ASYMPTOTICS_HPP
