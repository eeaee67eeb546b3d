#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "hardedge/asymptotics.hpp"

using hardedge::AsymptoticCoeffs;
using hardedge::ProcessParams;
using Catch::Matchers::WithinAbs;

namespace {

const ProcessParams kLeft{3, 2, {1.31, 2.15, 3.19}, {1.87, 2.61}};
const ProcessParams kRight{4, 1, {1.31, 2.15, 2.61, 3.19}, {1.87}};

void require_same(const AsymptoticCoeffs& x, const AsymptoticCoeffs& y, double tol) {
  REQUIRE_THAT(x.rho, WithinAbs(y.rho, tol));
  REQUIRE_THAT(x.a, WithinAbs(y.a, tol));
  REQUIRE_THAT(x.b, WithinAbs(y.b, tol));
  REQUIRE_THAT(x.c, WithinAbs(y.c, tol));
  REQUIRE_THAT(x.lnC, WithinAbs(y.lnC, tol));
}

ProcessParams random_params(std::mt19937_64& rng) {
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

}  // namespace

// Reference values: tests/oracles/asymptotics_oracle.py.

TEST_CASE("published coefficients, left parameter set", "[asymptotics]") {
  const auto k = hardedge::compute_coeffs(kLeft);
  REQUIRE(k.rho == 0.5);
  REQUIRE(k.a == 1.0);
  REQUIRE_THAT(k.b, WithinAbs(4.34, 1e-12));
  REQUIRE_THAT(k.c, WithinAbs(-1.551425, 1e-13));
  REQUIRE_THAT(k.lnC, WithinAbs(-2.96313822966373622735, 1e-12));
  REQUIRE_THAT(k.c, WithinAbs(-1.551, 1e-3));
  REQUIRE_THAT(k.lnC, WithinAbs(-2.963, 1e-3));
}

TEST_CASE("published coefficients, right parameter set", "[asymptotics]") {
  const auto k = hardedge::compute_coeffs(kRight);
  REQUIRE(k.rho == 0.25);
  REQUIRE_THAT(k.a, WithinAbs(4.0 / std::sqrt(3.0), 1e-12));
  REQUIRE_THAT(k.b, WithinAbs(12.9677159409585590473, 1e-12));
  REQUIRE_THAT(k.c, WithinAbs(-2.43707083333333333333, 1e-13));
  REQUIRE_THAT(k.lnC, WithinAbs(-10.0970669982349286485, 1e-12));
}

TEST_CASE("trivial Bessel point", "[asymptotics]") {
  const auto k = hardedge::compute_coeffs({1, 0, {0.0}, {}});
  REQUIRE(k.rho == 0.5);
  REQUIRE(k.a == 1.0);
  REQUIRE(k.b == 0.0);
  REQUIRE(k.c == 0.0);
  REQUIRE_THAT(k.lnC, WithinAbs(0.0, 1e-15));
}

TEST_CASE("compute_coeffs rejects invalid parameters", "[asymptotics]") {
  REQUIRE_THROWS_AS(hardedge::compute_coeffs({2, 2, {0.0, 0.0}, {0.0, 0.0}}), hardedge::InvalidParams);
  REQUIRE_THROWS_AS(hardedge::compute_coeffs({1, 0, {-1.0}, {}}), hardedge::InvalidParams);
  REQUIRE_THROWS_AS(hardedge::compute_coeffs({2, 0, {0.0}, {}}), hardedge::InvalidParams);
}

TEST_CASE("log_constant_bessel", "[asymptotics]") {
  REQUIRE_THAT(hardedge::log_constant_bessel(0.0), WithinAbs(0.0, 1e-15));
  REQUIRE_THAT(hardedge::log_constant_bessel(1.0), WithinAbs(-1.26551212348464539649, 1e-13));
  for (double nu : {0.0, 0.3, 1.0, 1.7, 2.5, -0.6}) {
    const auto k = hardedge::compute_coeffs({1, 0, {nu}, {}});
    REQUIRE(k.rho == 0.5);
    REQUIRE(k.a == 1.0);
    REQUIRE(k.b == 2.0 * nu);
    REQUIRE(k.c == -nu * nu / 4.0);
    REQUIRE_THAT(k.lnC, WithinAbs(hardedge::log_constant_bessel(nu), 1e-12));
  }
}

TEST_CASE("log_constant_kr", "[asymptotics]") {
  REQUIRE_THAT(hardedge::log_constant_kr(1.0, 0.8), WithinAbs(hardedge::log_constant_bessel(0.8), 1e-12));
  REQUIRE_THAT(hardedge::log_constant_kr(1.0, 0.0), WithinAbs(0.0, 1e-15));
  // Factor by factor: -2 zeta'(-1) + 16/96 ln 3 - 4/24 ln 4.
  const double by_hand = -2.0 * hardedge::zeta_prime_minus1() + 16.0 / 96.0 * std::log(3.0) -
                         4.0 / 24.0 * std::log(4.0);
  REQUIRE_THAT(hardedge::log_constant_kr(3.0, 0.0), WithinAbs(by_hand, 1e-14));
  REQUIRE_THAT(hardedge::log_constant_kr(3.0, 0.0), WithinAbs(0.282895275325605037188, 1e-13));
  REQUIRE_THAT(hardedge::log_constant_kr(2.5, 0.7), WithinAbs(-1.64775585060695046483, 1e-13));
}

TEST_CASE("log_constant_mb", "[asymptotics]") {
  REQUIRE_THAT(hardedge::log_constant_mb(1, 0.0), WithinAbs(0.0, 1e-14));
  REQUIRE_THAT(hardedge::log_constant_mb(2, 0.5), WithinAbs(-1.26941125948570567089, 1e-12));
  REQUIRE_THAT(hardedge::log_constant_mb(3, 1.2), WithinAbs(-3.14669606780985863789, 1e-12));
  REQUIRE_THROWS_AS(hardedge::log_constant_mb(0, 0.5), hardedge::DomainError);
}

TEST_CASE("truncated_log_expansion", "[asymptotics]") {
  AsymptoticCoeffs only_c;
  only_c.lnC = -2.963;
  REQUIRE_THAT(hardedge::truncated_log_expansion(10.0, only_c), WithinAbs(-2.963, 1e-15));
  AsymptoticCoeffs left{0.5, 1.0, 4.34, -1.551, -2.963};
  REQUIRE_THAT(hardedge::truncated_log_expansion(1.0, left), WithinAbs(0.377, 1e-13));
  const auto bessel = hardedge::compute_coeffs({1, 0, {0.0}, {}});
  REQUIRE_THAT(hardedge::truncated_log_expansion(4.0, bessel), WithinAbs(-4.0, 1e-14));
}

TEST_CASE("cancelling pairs leave the constants unchanged", "[asymptotics][property]") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const ProcessParams p = random_params(rng);
    for (double t : {-0.5, 0.0, 1.4, 3.0}) {
      require_same(hardedge::compute_coeffs(p), hardedge::compute_coeffs(p.with_cancelling_pair(t)), 1e-11);
    }
  }
}

TEST_CASE("Muttalib-Borodin relation", "[asymptotics][property]") {
  for (int r : {2, 3}) {
    for (double alpha : {0.0, 0.5, 1.2}) {
      ProcessParams p{r, 0, {}, {}};
      for (int j = 0; j < r; ++j) p.nu.push_back(alpha + static_cast<double>(j) / r);
      const auto k = hardedge::compute_coeffs(p);
      INFO("r " << r << " alpha " << alpha);
      REQUIRE_THAT(k.lnC, WithinAbs(r * k.c * std::log(r) + hardedge::log_constant_mb(r, alpha), 1e-10));
    }
  }
}

TEST_CASE("equal parameters reproduce C_r", "[asymptotics][property]") {
  for (int r : {1, 2, 3, 4}) {
    for (double nu : {-0.4, 0.0, 0.5, 1.0, 2.3}) {
      const ProcessParams p{r, 0, std::vector<double>(r, nu), {}};
      REQUIRE_THAT(hardedge::compute_coeffs(p).lnC, WithinAbs(hardedge::log_constant_kr(r, nu), 1e-11));
    }
  }
}

TEST_CASE("constants are symmetric in each parameter family", "[asymptotics][property]") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    ProcessParams p = random_params(rng);
    const auto base = hardedge::compute_coeffs(p);
    std::shuffle(p.nu.begin(), p.nu.end(), rng);
    std::shuffle(p.mu.begin(), p.mu.end(), rng);
    require_same(base, hardedge::compute_coeffs(p), 1e-12);
  }
}
