#ifndef HARDEDGE_PARAMS_HPP
#define HARDEDGE_PARAMS_HPP

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "hardedge/errors.hpp"

namespace hardedge {

/// Parameters (r, q, nu_1..nu_r, mu_1..mu_q) of the Meijer-G point process.
struct ProcessParams {
  int r = 1;
  int q = 0;
  std::vector<double> nu{0.0};
  std::vector<double> mu{};

  /// Throws InvalidParams naming the first violated invariant.
  void validate() const {
    if (q < 0) throw InvalidParams("invalid parameters: requires q >= 0");
    if (!(r > q)) throw InvalidParams("invalid parameters: requires r > q");
    if (static_cast<int>(nu.size()) != r) {
      throw InvalidParams("invalid parameters: requires exactly r values of nu (got " +
                          std::to_string(nu.size()) + " for r = " + std::to_string(r) + ")");
    }
    if (static_cast<int>(mu.size()) != q) {
      throw InvalidParams("invalid parameters: requires exactly q values of mu (got " +
                          std::to_string(mu.size()) + " for q = " + std::to_string(q) + ")");
    }
    for (double v : nu) {
      if (!std::isfinite(v) || !(v > -1.0)) {
        throw InvalidParams("invalid parameters: requires every nu_j > -1");
      }
    }
    for (double v : mu) {
      if (!std::isfinite(v) || !(v > -1.0)) {
        throw InvalidParams("invalid parameters: requires every mu_k > -1");
      }
    }
  }

  /// min over all nu_j and mu_k.
  double nu_min() const {
    double m = *std::min_element(nu.begin(), nu.end());
    for (double v : mu) m = std::min(m, v);
    return m;
  }

  /// Copy with one more equal (nu, mu) pair; F and the kernel are unchanged.
  ProcessParams with_cancelling_pair(double value) const {
    ProcessParams out = *this;
    out.r += 1;
    out.q += 1;
    out.nu.push_back(value);
    out.mu.push_back(value);
    return out;
  }
};

}  // namespace hardedge

#endif  // HARDEDGE_PARAMS_HPP
