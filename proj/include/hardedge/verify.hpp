#ifndef HARDEDGE_VERIFY_HPP
#define HARDEDGE_VERIFY_HPP

// Self-checks over the whole library: special-function identities, the
// closed-form constants against each other, and the kernel against the
// Bessel kernel and the residue-series evaluation.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "hardedge/asymptotics.hpp"
#include "hardedge/fredholm.hpp"
#include "hardedge/kernel.hpp"
#include "hardedge/kernel_series.hpp"
#include "hardedge/params.hpp"
#include "hardedge/specfun.hpp"

namespace hardedge {

enum class VerifyLevel { fast, full };

struct VerifyOptions {
  VerifyLevel level = VerifyLevel::fast;
  // Flips the sign of one reference quantity so the suite must fail.
  bool inject_fault = false;
};

struct CheckResult {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

namespace checks {

inline CheckResult make(std::string name, double residual, double tolerance) {
  const bool ok = std::isfinite(residual) && residual < tolerance;
  return {std::move(name), residual, tolerance, ok};
}

// Random valid parameter sets with r - q in {1, 2, 3} and entries in (-0.9, 4).
inline ProcessParams random_params(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> qd(0, 3), dd(1, 3);
  std::uniform_real_distribution<double> v(-0.9, 4.0);
  ProcessParams p;
  p.q = qd(rng);
  p.r = p.q + dd(rng);
  p.nu.clear();
  for (int j = 0; j < p.r; ++j) p.nu.push_back(v(rng));
  for (int k = 0; k < p.q; ++k) p.mu.push_back(v(rng));
  return p;
}

inline double coeff_distance(const AsymptoticCoeffs& x, const AsymptoticCoeffs& y) {
  return std::max({std::abs(x.rho - y.rho), std::abs(x.a - y.a), std::abs(x.b - y.b),
                   std::abs(x.c - y.c), std::abs(x.lnC - y.lnC)});
}

// |exp(lnGamma(z+1) - lnGamma(z)) - z| / max(1, |z|) over 100 random z.
inline CheckResult gamma_recurrence() {
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> re(0.5, 20.0), im(-20.0, 20.0);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const Complex z{re(rng), im(rng)};
    const Complex ratio = std::exp(log_gamma(z + 1.0) - log_gamma(z));
    worst = std::max(worst, std::abs(ratio - z) / std::max(1.0, std::abs(z)));
  }
  return make("specfun: log_gamma recurrence", worst, 1e-12);
}

// lnG(z+1) - lnGamma(z) - lnG(z), imaginary part modulo 2 pi.
inline CheckResult barnes_recurrence() {
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> re(0.5, 20.0), im(-20.0, 20.0);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const Complex z{re(rng), im(rng)};
    const Complex d = log_barnes_g(z + 1.0) - log_gamma(z) - log_barnes_g(z);
    worst = std::max({worst, std::abs(d.real()),
                      std::abs(std::remainder(d.imag(), 2.0 * std::numbers::pi))});
  }
  return make("specfun: Barnes G recurrence", worst, 1e-11);
}

inline CheckResult conjugation() {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> re(0.5, 20.0), im(-20.0, 20.0);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const Complex z{re(rng), im(rng)};
    const auto rel = [](Complex a, Complex b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); };
    worst = std::max({worst, rel(log_gamma(std::conj(z)), std::conj(log_gamma(z))),
                      rel(digamma(std::conj(z)), std::conj(digamma(z))),
                      rel(log_barnes_g(std::conj(z)), std::conj(log_barnes_g(z)))});
  }
  return make("specfun: conjugation symmetry", worst, 1e-12);
}

inline CheckResult hurwitz_barnes() {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> dist(0.0, 10.0);
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const double z = dist(rng);
    const double lhs = log_barnes_g({z + 1.0, 0.0}).real();
    const double rhs = zeta_prime_minus1() - hurwitz_zeta_prime(z + 1.0) +
                       z * log_gamma({z + 1.0, 0.0}).real();
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return make("specfun: Hurwitz-Barnes identity", worst, 1e-10);
}

inline CheckResult barnes_asymptotic() {
  const double z = 50.0;
  const double lg = log_gamma({z + 1.0, 0.0}).real();
  const double expansion = z * z / 4 + z * lg - (z * (z + 1) / 2 + 1.0 / 12) * std::log(z) -
                           1.0 / 12 + zeta_prime_minus1();
  return make("specfun: Barnes G large-z expansion", std::abs(log_barnes_g({z + 1.0, 0.0}).real() - expansion),
              1e-4);
}

inline CheckResult classical_values() {
  const double worst = std::max(
      {std::abs(log_gamma({0.5, 0.0}) - Complex(0.5 * std::log(std::numbers::pi), 0.0)),
       std::abs(digamma({1.0, 0.0}) + std::numbers::egamma),
       std::abs(log_barnes_g({3.0, 0.0})), std::abs(integral_log_gamma({1.0, 0.0})),
       std::abs(hurwitz_zeta_prime(1.0) - zeta_prime_minus1()),
       std::abs(hurwitz_zeta_prime(2.0) - zeta_prime_minus1()),
       std::abs(bessel_j(0.5, 2.0) - std::sqrt(1.0 / std::numbers::pi) * std::sin(2.0))});
  return make("specfun: classical values", worst, 1e-13);
}

// Exact (rho, a, b, c) and lnC = ln of the Bessel constant.
inline CheckResult bessel_coefficients() {
  double exact = 0.0, lnc = 0.0;
  for (double nu : {0.0, 0.3, 1.0, 2.5}) {
    const auto k = compute_coeffs({1, 0, {nu}, {}});
    exact = std::max({exact, std::abs(k.rho - 0.5), std::abs(k.a - 1.0), std::abs(k.b - 2.0 * nu),
                      std::abs(k.c + nu * nu / 4.0)});
    lnc = std::max(lnc, std::abs(k.lnC - log_constant_bessel(nu)));
  }
  if (exact != 0.0) return make("asymptotics: Bessel specialization", exact, 0.0);
  return make("asymptotics: Bessel specialization", lnc, 1e-12);
}

inline CheckResult pole_zero() {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> pick(-0.5, 3.0);
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const ProcessParams p = random_params(rng);
    worst = std::max(worst, coeff_distance(compute_coeffs(p), compute_coeffs(p.with_cancelling_pair(pick(rng)))));
  }
  return make("asymptotics: pole-zero cancellation", worst, 1e-11);
}

inline CheckResult muttalib_borodin(bool fault) {
  double worst = 0.0;
  for (auto [r, alpha] : {std::pair{2, 0.5}, std::pair{3, 0.0}, std::pair{3, 1.2}}) {
    ProcessParams p{r, 0, {}, {}};
    for (int j = 0; j < r; ++j) p.nu.push_back(alpha + static_cast<double>(j) / r);
    const auto k = compute_coeffs(p);
    const double scale = (fault ? -1.0 : 1.0) * r * k.c * std::log(r);
    worst = std::max(worst, std::abs(scale + log_constant_mb(r, alpha) - k.lnC));
  }
  return make("asymptotics: Muttalib-Borodin relation", worst, 1e-10);
}

// All parameters equal to nu reduce to C_{r-q}; one mu is included so the
// cancellation is exercised too.
inline CheckResult kr_endpoint() {
  double worst = 0.0;
  for (auto [d, nu] : {std::pair{1, 0.5}, std::pair{2, 0.0}, std::pair{3, 1.0}}) {
    for (int q : {0, 1}) {
      const ProcessParams p{d + q, q, std::vector<double>(d + q, nu), std::vector<double>(q, nu)};
      worst = std::max(worst, std::abs(compute_coeffs(p).lnC - log_constant_kr(d, nu)));
    }
  }
  return make("asymptotics: C_r endpoint", worst, 1e-11);
}

// r = 1: K(x, y) = 4 (y/x)^{nu/2} K_Be(4x, 4y) on a 5x5 grid in (0.1, 5).
inline CheckResult bessel_reduction() {
  const std::vector<double> grid = {0.1, 0.5, 1.3, 2.8, 5.0};
  double worst = 0.0;
  for (double nu : {0.0, 0.5, 2.0}) {
    const ProcessParams p{1, 0, {nu}, {}};
    const auto cq = build_contours(p, {0.1, 5.0}, 1e-13);
    for (double x : grid) {
      for (double y : grid) {
        const double want = 4.0 * std::pow(y / x, nu / 2.0) * bessel_kernel(4.0 * x, 4.0 * y, nu);
        worst = std::max(worst, std::abs(kernel_eval(x, y, cq) - want));
      }
    }
  }
  return make("kernel: Bessel reduction", worst, 1e-7);
}

// Double-contour against residue series at 10 random points per set.
inline CheckResult kernel_oracle() {
  std::mt19937_64 rng(20241016);
  std::uniform_real_distribution<double> point(0.05, 2.0);
  double worst = 0.0;
  for (const ProcessParams& p : {ProcessParams{2, 0, {-0.4, 1.1}, {}}, ProcessParams{2, 1, {0.3, 1.2}, {0.7}},
                                 ProcessParams{3, 2, {1.31, 2.15, 3.19}, {1.87, 2.61}}}) {
    const auto cq = build_contours(p, {0.05, 2.0}, 1e-13);
    for (int k = 0; k < 10; ++k) {
      const double x = point(rng);
      const double y = point(rng);
      worst = std::max(worst, std::abs(kernel_eval(x, y, cq) - kernel_eval_series(x, y, p, 60, 60)));
    }
  }
  return make("kernel: residue-series oracle", worst, 1e-8);
}

// ln det = -s for r = 1, nu = 0 (kernel) and -s/4 for the Bessel kernel.
inline CheckResult exact_determinants() {
  const ProcessParams p{1, 0, {0.0}, {}};
  const MeijerKernel meijer(p, 1e-4, 4.0);
  double worst = 0.0;
  for (double s : {0.5, 2.0, 4.0}) {
    const auto grid = gauss_legendre_grid(s, 60);
    worst = std::max({worst, std::abs(log_gap_determinant(s, grid, meijer) + s),
                      std::abs(log_gap_determinant(s, grid, BesselKernel{0.0, 1.0}) + s / 4.0)});
  }
  return make("fredholm: exact nu = 0 determinants", worst, 1e-10);
}

}  // namespace checks

/// Runs the suite for the level; never throws on a failed check, only
/// records it.
inline std::vector<CheckResult> run_verify(const VerifyOptions& opts = {}) {
  std::vector<std::function<CheckResult()>> suite = {
      checks::classical_values,
      checks::gamma_recurrence,
      checks::barnes_recurrence,
      checks::conjugation,
      checks::hurwitz_barnes,
      checks::barnes_asymptotic,
      checks::bessel_coefficients,
      checks::pole_zero,
      [&] { return checks::muttalib_borodin(opts.inject_fault); },
      checks::kr_endpoint,
      checks::bessel_reduction,
  };
  if (opts.level == VerifyLevel::full) {
    suite.push_back(checks::kernel_oracle);
    suite.push_back(checks::exact_determinants);
  }
  std::vector<CheckResult> out;
  for (const auto& check : suite) {
    try {
      out.push_back(check());
    } catch (const std::exception& e) {
      out.push_back({std::string("exception: ") + e.what(), std::numeric_limits<double>::infinity(), 0.0, false});
    }
  }
  return out;
}

}  // namespace hardedge

#endif  // HARDEDGE_VERIFY_HPP
