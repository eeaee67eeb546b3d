#ifndef HARDEDGE_SPECFUN_HPP
#define HARDEDGE_SPECFUN_HPP

// Complex-plane special functions: log-gamma, digamma, log Barnes G,
// the Hurwitz zeta derivative at -1 and the Bessel function J_nu.
//
// log_gamma, digamma and log_barnes_g all follow the same pattern: shift the
// argument to the right with the functional recurrence until Re z >= 10 and
// then apply the large-|z| expansion with Bernoulli-number corrections. The
// shift is accumulated as a sum of principal logarithms, which yields the
// branch that is analytic on the plane cut along (-inf, 0].

#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <string>

#include "hardedge/errors.hpp"

namespace hardedge {

using Complex = std::complex<double>;

namespace detail {

// B_0 ... B_30.
inline constexpr std::array<double, 31> kBernoulli = {
    1.0,
    -1.0 / 2.0,
    1.0 / 6.0,
    0.0,
    -1.0 / 30.0,
    0.0,
    1.0 / 42.0,
    0.0,
    -1.0 / 30.0,
    0.0,
    5.0 / 66.0,
    0.0,
    -691.0 / 2730.0,
    0.0,
    7.0 / 6.0,
    0.0,
    -3617.0 / 510.0,
    0.0,
    43867.0 / 798.0,
    0.0,
    -174611.0 / 330.0,
    0.0,
    854513.0 / 138.0,
    0.0,
    -236364091.0 / 2730.0,
    0.0,
    8553103.0 / 6.0,
    0.0,
    -23749461029.0 / 870.0,
    0.0,
    8615841276005.0 / 14322.0};

inline constexpr double kShiftThreshold = 10.0;
// Stirling-type corrections used once |z| >= 10; the 11th omitted term is
// below 1e-20.
inline constexpr int kAsymptoticTerms = 10;

inline const double kLog2Pi = std::log(2.0 * std::numbers::pi);

inline bool near_nonpositive_integer(Complex z) {
  if (z.real() > 0.5) return false;
  const double n = std::round(z.real());
  const double tol = 8.0 * std::numeric_limits<double>::epsilon() *
                     std::max(1.0, std::abs(n));
  return std::abs(z - Complex(n, 0.0)) <= tol;
}

inline void require_off_pole(Complex z, const char* fn) {
  if (near_nonpositive_integer(z)) {
    throw PoleError(std::string(fn) + ": argument at a nonpositive integer (" +
                    std::to_string(z.real()) + ")");
  }
}

// sum_{k<n} Log(z + k), with the modulus taken as a product in chunks so
// rounding does not grow with n; the arguments are summed exactly.
template <typename T>
std::complex<T> log_rising(std::complex<T> z, int n) {
  T log_modulus = 0;
  T argument = 0;
  std::complex<T> chunk = 1;
  for (int k = 0; k < n; ++k) {
    const std::complex<T> factor = z + static_cast<T>(k);
    chunk *= factor;
    argument += std::arg(factor);
    if (k % 16 == 15) {
      log_modulus += std::log(std::abs(chunk));
      chunk = 1;
    }
  }
  log_modulus += std::log(std::abs(chunk));
  return {log_modulus, argument};
}

template <typename T>
int shift_count(std::complex<T> z) {
  if (z.real() >= kShiftThreshold) return 0;
  return static_cast<int>(std::ceil(kShiftThreshold - static_cast<double>(z.real())));
}

template <typename T>
const T kLog2PiT = std::log(2 * std::numbers::pi_v<T>);

// Stirling series for ln Gamma(z), valid for Re z >= 10.
template <typename T>
std::complex<T> log_gamma_asymptotic(std::complex<T> z) {
  std::complex<T> result = (z - T(0.5)) * std::log(z) - z + T(0.5) * kLog2PiT<T>;
  const std::complex<T> inv = T(1) / z;
  const std::complex<T> inv2 = inv * inv;
  std::complex<T> power = inv;
  for (int k = 1; k <= kAsymptoticTerms; ++k) {
    result += static_cast<T>(kBernoulli[2 * k]) / (T(2 * k) * T(2 * k - 1)) * power;
    power *= inv2;
  }
  return result;
}

// NIST 5.17.5 for ln G(w + 1), valid for Re w >= 10.
template <typename T>
std::complex<T> log_barnes_g_asymptotic(std::complex<T> w, T zeta_prime_m1) {
  const std::complex<T> log_w = std::log(w);
  const std::complex<T> w2 = w * w;
  std::complex<T> result = T(0.5) * w2 * log_w - T(0.75) * w2 + T(0.5) * w * kLog2PiT<T> -
                           log_w / T(12) + zeta_prime_m1;
  const std::complex<T> inv2 = T(1) / w2;
  std::complex<T> power = inv2;
  for (int k = 1; k < kAsymptoticTerms; ++k) {
    result += static_cast<T>(kBernoulli[2 * k + 2]) / (T(4 * k) * T(k + 1)) * power;
    power *= inv2;
  }
  return result;
}

// Neumaier-compensated accumulator.
template <typename T>
struct CompensatedSum {
  T sum = 0;
  T carry = 0;
  void add(T term) {
    const T t = sum + term;
    if (std::abs(sum) >= std::abs(term)) {
      carry += (sum - t) + term;
    } else {
      carry += (term - t) + sum;
    }
    sum = t;
  }
  T value() const { return sum + carry; }
};

}  // namespace detail

/// The constant zeta'(-1) = 1/12 - ln A (A the Glaisher-Kinkelin constant).
constexpr double zeta_prime_minus1() { return -0.16542114370045092921391966024278; }

/// Principal-branch ln Gamma(z), analytic on the plane cut along (-inf, 0].
/// Throws PoleError at the nonpositive integers.
inline Complex log_gamma(Complex z) {
  detail::require_off_pole(z, "log_gamma");
  const int n = detail::shift_count(z);
  return detail::log_gamma_asymptotic(z + static_cast<double>(n)) -
         detail::log_rising(z, n);
}

inline Complex digamma(Complex z) {
  detail::require_off_pole(z, "digamma");
  const int n = detail::shift_count(z);
  Complex shift = 0.0;
  for (int k = 0; k < n; ++k) shift += 1.0 / (z + static_cast<double>(k));
  const Complex w = z + static_cast<double>(n);
  const Complex inv2 = 1.0 / (w * w);
  Complex result = std::log(w) - 0.5 / w;
  Complex power = inv2;
  for (int k = 1; k <= detail::kAsymptoticTerms; ++k) {
    result -= detail::kBernoulli[2 * k] / (2.0 * k) * power;
    power *= inv2;
  }
  return result - shift;
}

/// ln G(z) for the Barnes G-function, fixed by G(1) = 1 and
/// G(z + 1) = Gamma(z) G(z). The argument is shifted right with the
/// recurrence and the shift is accumulated continuously from the asymptotic
/// regime, so the result is real on the positive axis and conjugation
/// symmetric. Throws PoleError at the zeros 0, -1, -2, ... of G.
inline Complex log_barnes_g(Complex z) {
  detail::require_off_pole(z, "log_barnes_g");
  // G(n) = prod_{k<n-1} k! at positive integers.
  if (z.imag() == 0.0 && z.real() == std::floor(z.real()) && z.real() <= 170.0) {
    double acc = 0.0;
    for (int k = 1; k < static_cast<int>(z.real()); ++k) acc += std::lgamma(static_cast<double>(k));
    return {acc, 0.0};
  }
  // Extended precision: the result is a difference of terms near 100 in size.
  using Real = long double;
  using ComplexL = std::complex<Real>;
  const ComplexL zl(z.real(), z.imag());
  // Keep w = z + n - 1 inside the asymptotic regime.
  const int n = detail::shift_count(zl - Real(1));
  const ComplexL top = zl + static_cast<Real>(n);
  ComplexL result = detail::log_barnes_g_asymptotic<Real>(
      top - Real(1), -0.16542114370045092921391966024278L);
  if (n > 0) {
    // ln G(z) = ln G(z + n) - sum_{k<n} ln Gamma(z + k), stepping ln Gamma down.
    const ComplexL base = top - Real(1);
    const int m = detail::shift_count(base);
    ComplexL lg = detail::log_gamma_asymptotic<Real>(base + static_cast<Real>(m)) -
                  detail::log_rising<Real>(base, m);
    for (int k = n - 1; k >= 0; --k) {
      result -= lg;
      if (k > 0) lg -= std::log(zl + static_cast<Real>(k - 1));
    }
  }
  return {static_cast<double>(result.real()), static_cast<double>(result.imag())};
}

/// d/ds zeta(s, u) at s = -1 for real u > 0, by Euler-Maclaurin with 50
/// direct terms and 10 Bernoulli corrections (extended precision internally).
inline double hurwitz_zeta_prime(double u) {
  if (!(u > 0.0) || !std::isfinite(u)) {
    throw DomainError("hurwitz_zeta_prime: requires u > 0");
  }
  constexpr int kDirect = 50;
  constexpr int kCorrections = 10;
  using Real = long double;
  detail::CompensatedSum<Real> acc;
  for (int n = 0; n < kDirect; ++n) {
    const Real t = static_cast<Real>(n) + u;
    acc.add(-t * std::log(t));
  }
  const Real a = static_cast<Real>(kDirect) + u;
  const Real log_a = std::log(a);
  acc.add(a * a * (2 * log_a - 1) / 4);
  acc.add(-a * log_a / 2);
  acc.add((1 + log_a) / 12);
  const Real inv2 = 1 / (a * a);
  Real power = inv2;
  for (int k = 2; k <= kCorrections; ++k) {
    const Real denom = Real(2 * k) * Real(2 * k - 1) * Real(2 * k - 2);
    acc.add(-static_cast<Real>(detail::kBernoulli[2 * k]) * power / denom);
    power *= inv2;
  }
  return static_cast<double>(acc.value());
}

/// Bessel function of the first kind for nu > -1 and 0 <= x <= 30, summed
/// from the ascending series in extended precision. Beyond x = 30 the series
/// cancellation exceeds what this envelope supports and RangeError is thrown.
inline double bessel_j(double nu, double x) {
  if (!(nu > -1.0)) throw DomainError("bessel_j: requires nu > -1");
  if (!(x >= 0.0)) throw DomainError("bessel_j: requires x >= 0");
  if (x > 30.0) throw RangeError("bessel_j: x > 30 is outside the supported envelope");
  if (x == 0.0) {
    if (nu == 0.0) return 1.0;
    if (nu > 0.0) return 0.0;
    throw DomainError("bessel_j: J_nu(0) is unbounded for nu < 0");
  }
  using Real = long double;
  const Real half = static_cast<Real>(x) / 2;
  const Real q = half * half;
  Real term = std::exp(static_cast<Real>(nu) * std::log(half) -
                       std::lgamma(static_cast<Real>(nu) + 1));
  detail::CompensatedSum<Real> acc;
  acc.add(term);
  for (int k = 1; k < 400; ++k) {
    term *= -q / (Real(k) * (Real(k) + static_cast<Real>(nu)));
    acc.add(term);
    if (Real(k) > half && std::abs(term) <= 1e-21L * std::abs(acc.value())) break;
  }
  return static_cast<double>(acc.value());
}

/// dJ_nu/dx by differentiating the ascending series term by term; same
/// envelope as bessel_j. At x = 0 the derivative is finite only for nu = 0
/// or nu >= 1.
inline double bessel_j_derivative(double nu, double x) {
  if (!(nu > -1.0)) throw DomainError("bessel_j_derivative: requires nu > -1");
  if (!(x >= 0.0)) throw DomainError("bessel_j_derivative: requires x >= 0");
  if (x > 30.0) throw RangeError("bessel_j_derivative: x > 30 is outside the supported envelope");
  if (x == 0.0) {
    if (nu == 0.0 || nu > 1.0) return 0.0;
    if (nu == 1.0) return 0.5;
    throw DomainError("bessel_j_derivative: unbounded at x = 0 for this order");
  }
  using Real = long double;
  const Real half = static_cast<Real>(x) / 2;
  const Real q = half * half;
  const Real nul = static_cast<Real>(nu);
  Real term = std::exp(nul * std::log(half) - std::lgamma(nul + 1));
  detail::CompensatedSum<Real> acc;
  acc.add(term * nul);
  for (int k = 1; k < 400; ++k) {
    term *= -q / (Real(k) * (Real(k) + nul));
    const Real contrib = term * (2 * Real(k) + nul);
    acc.add(contrib);
    if (Real(k) > half && std::abs(contrib) <= 1e-21L * std::abs(acc.value())) break;
  }
  return static_cast<double>(acc.value() / static_cast<Real>(x));
}

/// Closed form of the integral of ln Gamma from 1 to z:
/// (z-1)/2 ln(2 pi) - (z-1) z / 2 + (z-1) ln Gamma(z) - ln G(z).
inline Complex integral_log_gamma(Complex z) {
  const Complex zm1 = z - 1.0;
  return 0.5 * zm1 * detail::kLog2Pi - 0.5 * zm1 * z + zm1 * log_gamma(z) -
         log_barnes_g(z);
}

}  // namespace hardedge

#endif  // HARDEDGE_SPECFUN_HPP
