#ifndef HARDEDGE_CONVERGENCE_HPP
#define HARDEDGE_CONVERGENCE_HPP

// The compensated gap function
//
//   f(s) = s^rho (ln det(1 - K|[0,s]) - [-a s^{2 rho} + b s^rho + c ln s + ln C])
//
// on a geometric grid of s, and its CSV form.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <future>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "hardedge/asymptotics.hpp"
#include "hardedge/errors.hpp"
#include "hardedge/fredholm.hpp"
#include "hardedge/kernel.hpp"
#include "hardedge/params.hpp"

namespace hardedge {

struct ConvergenceRecord {
  double s = 0.0;
  std::optional<double> log_det;
  double asymptotic = 0.0;
  std::optional<double> f;
};

inline bool operator==(const ConvergenceRecord& x, const ConvergenceRecord& y) {
  return x.s == y.s && x.log_det == y.log_det && x.asymptotic == y.asymptotic && x.f == y.f;
}

struct ConvergenceOptions {
  double s_min = 1.0;
  double s_max = 16.0;
  int points = 9;
  int nodes = 100;
  double tol = 1e-13;
  bool parallel = true;
};

/// s_min, ..., s_max with constant ratio.
inline std::vector<double> geometric_grid(double s_min, double s_max, int points) {
  if (points < 2) throw DomainError("geometric_grid: requires at least 2 points");
  if (!(s_min > 0.0) || !(s_max > s_min) || !std::isfinite(s_max)) {
    throw DomainError("geometric_grid: requires 0 < s_min < s_max");
  }
  std::vector<double> out(points);
  const double step = std::log(s_max / s_min) / (points - 1);
  for (int i = 0; i < points; ++i) out[i] = s_min * std::exp(step * i);
  out.front() = s_min;
  out.back() = s_max;
  return out;
}

inline double compensated(double s, double log_det, double asymptotic, double rho) {
  return std::pow(s, rho) * (log_det - asymptotic);
}

/// One record per s. Rows whose determinant cannot be computed (singular or
/// inaccurate) keep empty log_det and f; `warn` receives a line for each.
inline std::vector<ConvergenceRecord> run_convergence(const ProcessParams& params,
                                                      const std::vector<double>& s_values,
                                                      int nodes, double tol, std::ostream* warn,
                                                      bool parallel = true) {
  params.validate();
  if (nodes < 2) throw DomainError("run_convergence: requires at least 2 quadrature nodes");
  if (s_values.empty()) return {};
  const AsymptoticCoeffs k = compute_coeffs(params);

  std::vector<FredholmGrid> grids;
  double x_lo = s_values.front(), x_hi = s_values.front();
  for (double s : s_values) {
    grids.push_back(grid_for(params, s, nodes));
    x_lo = std::min(x_lo, grids.back().nodes.front());
    x_hi = std::max(x_hi, s);
  }
  const MeijerKernel kernel(params, x_lo, x_hi, tol);

  std::vector<std::optional<double>> log_dets(s_values.size());
  std::vector<std::string> failures(s_values.size());
  const auto one = [&](std::size_t i) {
    try {
      log_dets[i] = log_gap_determinant(s_values[i], grids[i], kernel);
    } catch (const SingularityError& e) {
      failures[i] = e.what();
    } catch (const AccuracyError& e) {
      failures[i] = e.what();
    }
  };
  if (parallel) {
    std::vector<std::future<void>> jobs;
    for (std::size_t i = 0; i < s_values.size(); ++i) jobs.push_back(std::async(std::launch::async, one, i));
    for (auto& j : jobs) j.get();
  } else {
    for (std::size_t i = 0; i < s_values.size(); ++i) one(i);
  }

  std::vector<ConvergenceRecord> out;
  for (std::size_t i = 0; i < s_values.size(); ++i) {
    ConvergenceRecord rec;
    rec.s = s_values[i];
    rec.asymptotic = truncated_log_expansion(rec.s, k);
    if (log_dets[i]) {
      rec.log_det = log_dets[i];
      rec.f = compensated(rec.s, *rec.log_det, rec.asymptotic, k.rho);
    } else if (warn) {
      *warn << "warning: s = " << rec.s << ": " << failures[i] << "\n";
    }
    out.push_back(rec);
  }
  return out;
}

inline std::vector<ConvergenceRecord> run_convergence(const ProcessParams& params,
                                                      const ConvergenceOptions& opts,
                                                      std::ostream* warn = nullptr) {
  return run_convergence(params, geometric_grid(opts.s_min, opts.s_max, opts.points), opts.nodes,
                         opts.tol, warn, opts.parallel);
}

// CSV: header s,log_det,asymptotic,f; 15 significant digits, shortest of
// fixed/scientific, '.' decimal point regardless of locale.

inline constexpr std::string_view kCsvHeader = "s,log_det,asymptotic,f";
inline constexpr int kCsvDigits = 15;

inline std::string format_number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, kCsvDigits);
  return std::string(buf, res.ptr);
}

inline double parse_number(std::string_view text) {
  double v = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
    throw DomainError("parse_number: not a number: '" + std::string(text) + "'");
  }
  return v;
}

/// The value a record field takes after a trip through the CSV.
inline double round_to_csv(double v) { return parse_number(format_number(v)); }

inline void write_csv(std::ostream& out, const std::vector<ConvergenceRecord>& rows) {
  out << kCsvHeader << '\n';
  for (const auto& r : rows) {
    out << format_number(r.s) << ',' << (r.log_det ? format_number(*r.log_det) : "") << ','
        << format_number(r.asymptotic) << ',' << (r.f ? format_number(*r.f) : "") << '\n';
  }
}

inline std::vector<ConvergenceRecord> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) {
    throw DomainError("read_csv: missing header '" + std::string(kCsvHeader) + "'");
  }
  std::vector<ConvergenceRecord> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string_view> fields;
    std::string_view rest = line;
    for (std::size_t pos; (pos = rest.find(',')) != std::string_view::npos; rest.remove_prefix(pos + 1)) {
      fields.push_back(rest.substr(0, pos));
    }
    fields.push_back(rest);
    if (fields.size() != 4) throw DomainError("read_csv: expected 4 fields in '" + line + "'");
    ConvergenceRecord r;
    r.s = parse_number(fields[0]);
    if (!fields[1].empty()) r.log_det = parse_number(fields[1]);
    r.asymptotic = parse_number(fields[2]);
    if (!fields[3].empty()) r.f = parse_number(fields[3]);
    rows.push_back(r);
  }
  return rows;
}

}  // namespace hardedge

#endif  // HARDEDGE_CONVERGENCE_HPP
