#include <catch_amalgamated.hpp>
#include <json.hpp>

#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "hardedge/convergence.hpp"
#include "hardedge/kernel.hpp"

namespace fs = std::filesystem;

namespace {

const std::string kLeftFlags = "--r 3 --q 2 --nu 1.31,2.15,3.19 --mu 1.87,2.61";

struct Run {
  int code = -1;
  std::string out;
  std::string err;
};

fs::path scratch() {
  const fs::path dir = fs::temp_directory_path() / ("hardedge_cli_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Run run(const std::string& args) {
  const fs::path dir = scratch();
  const fs::path out = dir / "stdout", err = dir / "stderr";
  const std::string cmd = std::string(HARDEDGE_CLI) + " " + args + " >" + out.string() + " 2>" + err.string();
  const int status = std::system(cmd.c_str());
  Run r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

}  // namespace

TEST_CASE("coeffs reports the left parameter set as JSON", "[cli]") {
  const Run r = run("coeffs " + kLeftFlags + " --format json");
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  REQUIRE(j["rho"] == 0.5);
  REQUIRE(j["a"] == 1.0);
  REQUIRE_THAT(j["lnC"].get<double>(), Catch::Matchers::WithinAbs(-2.963, 1e-3));
  REQUIRE_THAT(j["c"].get<double>(), Catch::Matchers::WithinAbs(-1.551, 1e-3));
}

TEST_CASE("coeffs of the Bessel point are zero", "[cli]") {
  const Run r = run("coeffs --r 1 --q 0 --nu 0 --format json");
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  REQUIRE(j["b"] == 0.0);
  REQUIRE(j["c"] == 0.0);
  REQUIRE(j["lnC"] == 0.0);
  const Run text = run("coeffs --nu 0");
  REQUIRE(text.out.find("lnC  0\n") != std::string::npos);
}

TEST_CASE("invalid parameters exit 2 naming the invariant", "[cli]") {
  const Run r = run("coeffs --r 2 --q 2 --nu 0,0 --mu 0,0");
  REQUIRE(r.code == 2);
  REQUIRE(r.err.find("requires r > q") != std::string::npos);
  REQUIRE(r.out.empty());
  REQUIRE(run("coeffs --r 2 --nu 0.5").code == 2);
  REQUIRE(run("coeffs --nu -1.5").code == 2);
  REQUIRE(run("coeffs --format xml").code == 2);
  REQUIRE(run("").code == 2);
  REQUIRE(run("frobnicate").code == 2);
  REQUIRE(run("--help").code == 0);
}

TEST_CASE("kernel and det wrap the library", "[cli]") {
  const Run k = run("kernel --r 1 --q 0 --nu 0 --x 1 --y 1 --format json");
  REQUIRE(k.code == 0);
  REQUIRE_THAT(nlohmann::json::parse(k.out)["K"].get<double>(),
               Catch::Matchers::WithinAbs(4.0 * hardedge::bessel_kernel(4.0, 4.0, 0.0), 1e-13));

  const Run d = run("det " + kLeftFlags + " --s 1e-8 --format json");
  REQUIRE(d.code == 0);
  REQUIRE_THAT(nlohmann::json::parse(d.out)["det"].get<double>(), Catch::Matchers::WithinAbs(1.0, 1e-12));
  const Run exact = run("det --nu 0 --s 3 --nodes 40 --format json");
  REQUIRE_THAT(nlohmann::json::parse(exact.out)["log_det"].get<double>(), Catch::Matchers::WithinAbs(-3.0, 1e-11));
  REQUIRE(run("det --nu 0 --nodes 0").code == 2);
  REQUIRE(run("det --nu 0 --s -1").code == 2);
}

TEST_CASE("converge writes CSV only to its output", "[cli]") {
  const fs::path csv = scratch() / "left.csv";
  const Run r = run("converge " + kLeftFlags + " --s-min 1 --s-max 4 --points 3 --nodes 40 --out " + csv.string());
  REQUIRE(r.code == 0);
  REQUIRE(r.out.empty());
  REQUIRE(r.err.find("3 of 3 rows") != std::string::npos);
  std::ifstream in(csv);
  const auto rows = hardedge::read_csv(in);
  REQUIRE(rows.size() == 3);
  REQUIRE(rows[0].s == 1.0);
  REQUIRE(rows[1].s == 2.0);
  REQUIRE(rows[2].s == 4.0);

  // Without --out the CSV goes to standard output, identical byte for byte.
  const Run to_stdout = run("converge " + kLeftFlags + " --s-min 1 --s-max 4 --points 3 --nodes 40");
  REQUIRE(to_stdout.out == slurp(csv));
}

TEST_CASE("converge output matches the library records after rounding", "[cli][property]") {
  const fs::path csv = scratch() / "round.csv";
  REQUIRE(run("converge " + kLeftFlags + " --s-min 2 --s-max 8 --points 3 --nodes 40 --out " + csv.string()).code == 0);
  std::ifstream in(csv);
  const auto parsed = hardedge::read_csv(in);

  hardedge::ConvergenceOptions opts;
  opts.s_min = 2.0;
  opts.s_max = 8.0;
  opts.points = 3;
  opts.nodes = 40;
  const auto direct = hardedge::run_convergence({3, 2, {1.31, 2.15, 3.19}, {1.87, 2.61}}, opts);
  REQUIRE(parsed.size() == direct.size());
  for (std::size_t i = 0; i < parsed.size(); ++i) {
    REQUIRE(parsed[i].s == hardedge::round_to_csv(direct[i].s));
    REQUIRE(*parsed[i].log_det == hardedge::round_to_csv(*direct[i].log_det));
    REQUIRE(parsed[i].asymptotic == hardedge::round_to_csv(direct[i].asymptotic));
    REQUIRE(*parsed[i].f == hardedge::round_to_csv(*direct[i].f));
  }
}

TEST_CASE("identical flags give identical files", "[cli][property]") {
  const fs::path a = scratch() / "a.csv", b = scratch() / "b.csv";
  const std::string args = "converge --r 4 --q 1 --nu 1.31,2.15,2.61,3.19 --mu 1.87 --s-min 2 --s-max 16 --points 4 --nodes 40 --out ";
  REQUIRE(run(args + a.string()).code == 0);
  REQUIRE(run("--format json " + args + b.string()).code == 0);
  REQUIRE(slurp(a) == slurp(b));
  REQUIRE(slurp(a).size() > 40);
}

TEST_CASE("converge preconditions and coverage", "[cli]") {
  REQUIRE(run("converge --nu 0 --points 1").code == 2);
  REQUIRE(run("converge --nu 0 --s-min 4 --s-max 2").code == 2);
  REQUIRE(run("converge --nu 0 --nodes 0").code == 2);
  const Run bad = run("converge --nu 0 --s-min 50 --s-max 800 --points 4 --nodes 6");
  REQUIRE(bad.code == 3);
  REQUIRE(bad.err.find("warning: s = 50") != std::string::npos);
  std::istringstream csv(bad.out);
  const auto rows = hardedge::read_csv(csv);
  REQUIRE(rows.size() == 4);
  REQUIRE_FALSE(rows[0].f.has_value());
}

TEST_CASE("Bessel compensated function stays bounded", "[cli]") {
  for (int m : {40, 80}) {
    const Run r = run("converge --r 1 --q 0 --nu 0 --s-min 1 --s-max 8 --points 4 --nodes " + std::to_string(m));
    REQUIRE(r.code == 0);
    std::istringstream csv(r.out);
    for (const auto& row : hardedge::read_csv(csv)) {
      INFO("m " << m << " s " << row.s);
      REQUIRE(std::abs(*row.f) < 1e-9);
    }
  }
}

TEST_CASE("config file values sit between flags and defaults", "[cli]") {
  const fs::path cfg = scratch() / "left.cfg";
  {
    std::ofstream out(cfg);
    out << "# left parameter set\n"
        << "r = 3\nq = 2\nnu = 1.31,2.15,3.19\nmu = 1.87,2.61\n"
        << "s-max = 4\npoints = 3\nnodes = 40\n";
  }
  const Run from_file = run("converge --config " + cfg.string());
  REQUIRE(from_file.code == 0);
  std::istringstream csv(from_file.out);
  const auto rows = hardedge::read_csv(csv);
  REQUIRE(rows.size() == 3);
  REQUIRE(rows.front().s == 1.0);  // default s-min
  REQUIRE(rows.back().s == 4.0);   // from the file

  const Run overridden = run("converge --config " + cfg.string() + " --points 2 --s-min 2");
  std::istringstream csv2(overridden.out);
  const auto rows2 = hardedge::read_csv(csv2);
  REQUIRE(rows2.size() == 2);
  REQUIRE(rows2.front().s == 2.0);

  const Run coeffs = run("coeffs --format json --config " + cfg.string());
  REQUIRE_THAT(nlohmann::json::parse(coeffs.out)["lnC"].get<double>(), Catch::Matchers::WithinAbs(-2.963, 1e-3));

  const fs::path bad = scratch() / "bad.cfg";
  std::ofstream(bad) << "no-such-flag = 1\n";
  REQUIRE(run("coeffs --config " + bad.string()).code == 2);
  REQUIRE(run("coeffs --config " + (scratch() / "missing.cfg").string()).code == 2);
}

TEST_CASE("verify passes and detects an injected fault", "[cli]") {
  const Run ok = run("verify --level fast");
  REQUIRE(ok.code == 0);
  REQUIRE(ok.out.find("FAIL") == std::string::npos);
  REQUIRE(ok.out.find("PASS  asymptotics: Muttalib-Borodin relation") != std::string::npos);

  const Run faulty = run("verify --inject-fault");
  REQUIRE(faulty.code == 1);
  REQUIRE(faulty.out.find("FAIL  asymptotics: Muttalib-Borodin relation  residual") != std::string::npos);

  const Run full = run("verify --level full --format json");
  REQUIRE(full.code == 0);
  const auto j = nlohmann::json::parse(full.out);
  REQUIRE(j["passed"] == true);
  bool has_oracle = false;
  for (const auto& c : j["checks"]) has_oracle = has_oracle || c["check"] == "kernel: residue-series oracle";
  REQUIRE(has_oracle);
  REQUIRE(j["checks"].size() > nlohmann::json::parse(run("verify --format json").out)["checks"].size());
}
