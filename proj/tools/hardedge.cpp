// hardedge: coefficients, kernel values, gap probabilities and the
// large-gap convergence experiment for the Meijer-G hard-edge process.
//
//   hardedge coeffs   --r 3 --q 2 --nu 1.31,2.15,3.19 --mu 1.87,2.61
//   hardedge kernel   --nu 0 --x 1 --y 1
//   hardedge det      --nu 0.5 --s 2 --nodes 80
//   hardedge converge --config left.cfg --s-min 2 --s-max 16 --points 4 --out f.csv
//   hardedge verify   --level full
//
// Every option may also be given in a --config file of flat `key = value`
// lines named after the long flag (`s-max = 16`); flags win over the file.
// Exit codes: 0 ok, 1 verification failed, 2 usage or evaluation error,
// 3 fewer than half of the converge rows could be computed.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "hardedge/hardedge.hpp"

namespace {

using nlohmann::ordered_json;

enum ExitCode { kOk = 0, kVerifyFailed = 1, kUsage = 2, kCoverage = 3 };

struct Settings {
  int r = 1;
  int q = 0;
  std::vector<double> nu{0.0};
  std::vector<double> mu;
  std::string format = "text";
  double x = 1.0;
  double y = 1.0;
  double s = 1.0;
  int nodes = 100;
  double tol = 1e-13;
  double s_min = 1.0;
  double s_max = 16.0;
  int points = 9;
  std::string out;
  std::string level = "fast";
  bool inject_fault = false;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Values rounded to what gets printed, so JSON and text agree digit for digit.
double printed(double v) { return hardedge::round_to_csv(v); }

void emit(const ordered_json& report, const std::string& format) {
  if (format == "json") {
    std::cout << report.dump(2) << '\n';
    return;
  }
  std::size_t width = 0;
  for (const auto& [key, value] : report.items()) width = std::max(width, key.size());
  for (const auto& [key, value] : report.items()) {
    std::cout << key << std::string(width - key.size() + 2, ' ');
    if (value.is_number_float()) {
      std::cout << hardedge::format_number(value.get<double>());
    } else if (value.is_string()) {
      std::cout << value.get<std::string>();
    } else {
      std::cout << value.dump();
    }
    std::cout << '\n';
  }
}

hardedge::ProcessParams params_of(const Settings& st) {
  hardedge::ProcessParams p{st.r, st.q, st.nu, st.mu};
  p.validate();
  return p;
}

int cmd_coeffs(const Settings& st) {
  const auto k = hardedge::compute_coeffs(params_of(st));
  ordered_json j;
  j["rho"] = printed(k.rho);
  j["a"] = printed(k.a);
  j["b"] = printed(k.b);
  j["c"] = printed(k.c);
  j["lnC"] = printed(k.lnC);
  j["C"] = printed(std::exp(k.lnC));
  emit(j, st.format);
  return kOk;
}

int cmd_kernel(const Settings& st) {
  const auto p = params_of(st);
  if (!(st.x > 0.0) || !(st.y > 0.0)) throw UsageError("kernel: requires x > 0 and y > 0");
  const hardedge::MeijerKernel k(p, std::min(st.x, st.y), std::max(st.x, st.y), st.tol);
  ordered_json j;
  j["x"] = printed(st.x);
  j["y"] = printed(st.y);
  j["K"] = printed(k(st.x, st.y));
  emit(j, st.format);
  return kOk;
}

int cmd_det(const Settings& st) {
  const auto p = params_of(st);
  if (st.nodes < 2) throw UsageError("det: requires nodes >= 2");
  if (!(st.s > 0.0)) throw UsageError("det: requires s > 0");
  const auto grid = hardedge::grid_for(p, st.s, st.nodes);
  const hardedge::MeijerKernel k(p, grid.nodes.front(), st.s, st.tol);
  const double log_det = hardedge::log_gap_determinant(st.s, grid, k);
  ordered_json j;
  j["s"] = printed(st.s);
  j["nodes"] = st.nodes;
  j["det"] = printed(std::exp(log_det));
  j["log_det"] = printed(log_det);
  emit(j, st.format);
  return kOk;
}

int cmd_converge(const Settings& st) {
  const auto p = params_of(st);
  if (st.points < 2) throw UsageError("converge: requires points >= 2");
  if (st.nodes < 2) throw UsageError("converge: requires nodes >= 2");
  if (!(st.s_min > 0.0) || !(st.s_max > st.s_min)) {
    throw UsageError("converge: requires 0 < s-min < s-max");
  }
  hardedge::ConvergenceOptions opts;
  opts.s_min = st.s_min;
  opts.s_max = st.s_max;
  opts.points = st.points;
  opts.nodes = st.nodes;
  opts.tol = st.tol;
  std::cerr << "converge: " << st.points << " values of s in [" << st.s_min << ", " << st.s_max
            << "], " << st.nodes << " nodes\n";
  const auto rows = hardedge::run_convergence(p, opts, &std::cerr);

  if (st.out.empty()) {
    hardedge::write_csv(std::cout, rows);
  } else {
    std::ofstream file(st.out, std::ios::binary);
    if (!file) throw UsageError("converge: cannot open '" + st.out + "' for writing");
    hardedge::write_csv(file, rows);
    if (!file.flush()) throw UsageError("converge: write to '" + st.out + "' failed");
  }
  std::size_t ok = 0;
  for (const auto& r : rows) ok += r.f.has_value();
  std::cerr << "converge: " << ok << " of " << rows.size() << " rows computed\n";
  return 2 * ok >= rows.size() ? kOk : kCoverage;
}

int cmd_verify(const Settings& st) {
  hardedge::VerifyOptions opts;
  opts.level = st.level == "full" ? hardedge::VerifyLevel::full : hardedge::VerifyLevel::fast;
  opts.inject_fault = st.inject_fault;
  const auto results = hardedge::run_verify(opts);
  bool all = true;
  ordered_json list = ordered_json::array();
  for (const auto& r : results) {
    all = all && r.passed;
    if (st.format == "json") {
      list.push_back({{"check", r.name},
                      {"passed", r.passed},
                      {"residual", std::isfinite(r.residual) ? ordered_json(printed(r.residual)) : ordered_json()},
                      {"tolerance", printed(r.tolerance)}});
    } else {
      std::cout << (r.passed ? "PASS  " : "FAIL  ") << r.name << "  residual "
                << hardedge::format_number(r.residual) << " (tolerance "
                << hardedge::format_number(r.tolerance) << ")\n";
    }
  }
  if (st.format == "json") {
    std::cout << ordered_json{{"level", st.level}, {"passed", all}, {"checks", list}}.dump(2) << '\n';
  }
  if (!all) std::cerr << "verify: at least one check failed\n";
  return all ? kOk : kVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Meijer-G hard-edge kernel, gap probabilities and large-gap asymptotics"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "Flat key = value file; keys are long flag names");
  app.allow_config_extras(false);

  Settings st;
  auto* r_opt = app.add_option("--r", st.r, "Number of nu parameters (default: size of --nu)");
  auto* q_opt = app.add_option("--q", st.q, "Number of mu parameters (default: size of --mu)");
  app.add_option("--nu", st.nu, "nu_1,...,nu_r")->delimiter(',')->capture_default_str();
  app.add_option("--mu", st.mu, "mu_1,...,mu_q")->delimiter(',');
  app.add_option("--format", st.format, "Report format")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();
  app.add_option("--tol", st.tol, "Kernel quadrature tolerance")->capture_default_str();
  app.add_option("--x", st.x, "kernel: first argument")->capture_default_str();
  app.add_option("--y", st.y, "kernel: second argument")->capture_default_str();
  app.add_option("--s", st.s, "det: interval length")->capture_default_str();
  app.add_option("--nodes", st.nodes, "det, converge: Nystrom nodes m")->capture_default_str();
  app.add_option("--s-min", st.s_min, "converge: smallest s")->capture_default_str();
  app.add_option("--s-max", st.s_max, "converge: largest s")->capture_default_str();
  app.add_option("--points", st.points, "converge: number of geometrically spaced s")->capture_default_str();
  app.add_option("--out", st.out, "converge: CSV path (default: standard output)");
  app.add_option("--level", st.level, "verify: suite size")
      ->check(CLI::IsMember({"fast", "full"}))
      ->capture_default_str();
  app.add_flag("--inject-fault", st.inject_fault, "verify: flip the sign of one reference value");

  auto* coeffs = app.add_subcommand("coeffs", "Coefficients rho, a, b, c, lnC of the large-gap expansion");
  auto* kernel = app.add_subcommand("kernel", "Kernel value K(x, y)");
  auto* det = app.add_subcommand("det", "Gap probability det(1 - K) on [0, s]");
  auto* converge = app.add_subcommand("converge", "Compensated large-gap function f(s) as CSV");
  auto* verify = app.add_subcommand("verify", "Run the self-check suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  if (r_opt->count() == 0) st.r = static_cast<int>(st.nu.size());
  if (q_opt->count() == 0) st.q = static_cast<int>(st.mu.size());

  try {
    if (coeffs->parsed()) return cmd_coeffs(st);
    if (kernel->parsed()) return cmd_kernel(st);
    if (det->parsed()) return cmd_det(st);
    if (converge->parsed()) return cmd_converge(st);
    if (verify->parsed()) return cmd_verify(st);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const hardedge::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
