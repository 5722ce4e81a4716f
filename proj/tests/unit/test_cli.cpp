#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

struct Run {
  int status = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

fs::path scratch() {
  static const fs::path dir = [] {
    const fs::path d = fs::temp_directory_path() / ("evt_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

Run run(const std::string& args) {
  const fs::path out = scratch() / "stdout.txt";
  const fs::path err = scratch() / "stderr.txt";
  const std::string cmd = std::string("'") + EVT_CLI_PATH + "' " + args + " >'" + out.string() +
                          "' 2>'" + err.string() + "'";
  const int raw = std::system(cmd.c_str());
  Run r;
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

void write(const fs::path& p, const std::string& text) {
  std::ofstream(p, std::ios::binary) << text;
}

}  // namespace

TEST_CASE("verify-soc on an exact family") {
  const Run r = run("verify-soc --family burr --gamma 1 --rho -1 --x-grid 0.5,2 --u-grid 1e-2,1e-4,1e-6");
  CHECK(r.status == 0);
  CHECK(r.out.rfind("u,x,ratio,target_h,abs_error\n", 0) == 0);
  CHECK(r.out.find(",2,-0.49999999") != std::string::npos);
  CHECK(r.err.find("verdict: Converged") != std::string::npos);
}

TEST_CASE("verdicts and exit codes") {
  const Run degenerate = run("verify-soc --family exponential");
  CHECK(degenerate.status == 0);
  CHECK(degenerate.err.find("verdict: Degenerate") != std::string::npos);

  const Run tight = run("verify-soc --family singhmaddala --a 1 --b 2 --c 1 --tol 1e-14");
  CHECK(tight.status == 1);
  CHECK(tight.err.find("verdict: NotConverged") != std::string::npos);

  const Run missing = run("verify-soc --family burr --gamma 1");
  CHECK(missing.status == 2);
  CHECK(missing.err.find("rho") != std::string::npos);

  CHECK(run("verify-soc --family nosuch").status == 2);
  CHECK(run("verify-soc --family burr --gamma 1 --rho -1 --u-grid 1e-3,1e-2").status == 2);
  CHECK(run("verify-soc --family burr --gamma 1 --rho -1 --x-grid abc").status == 2);
  CHECK(run("no-such-command").status == 2);
  CHECK(run("verify-soc --bogus").status == 2);
  CHECK(run("rc-check --family burr --gamma 1 --rho -1 --k-exp 0.9").status == 1);
  CHECK(run("rc-check --family burr --gamma 1 --rho -1").status == 0);
}

TEST_CASE("configuration errors are reported together") {
  const Run r = run("sim-quantile --family burr --gamma 1 --rho -1 --n abc --reps -3 --alpha x");
  CHECK(r.status == 2);
  CHECK(r.err.find("invalid configuration") != std::string::npos);
  CHECK(r.err.find("--n") != std::string::npos);
  CHECK(r.err.find("--reps") != std::string::npos);
  CHECK(r.err.find("--alpha") != std::string::npos);
}

TEST_CASE("parse-check reports positions") {
  const Run bad = run("parse-check --expr 'u +'");
  CHECK(bad.status == 2);
  CHECK(bad.err.find("line 1, column 4") != std::string::npos);
  const Run good = run("parse-check --expr '-u^2'");
  CHECK(good.status == 0);
  CHECK(good.out.find("(-(u^2))") != std::string::npos);
}

TEST_CASE("every subcommand documents its flags") {
  const std::vector<std::pair<std::string, std::vector<std::string>>> expected = {
      {"catalog", {"--defaults", "--out"}},
      {"table", {"--u-grid", "--x-grid", "--out"}},
      {"verify-soc", {"--family", "--dsl-file", "--x-grid", "--u-grid", "--tol", "--out", "--config"}},
      {"rho-fit", {"--family", "--u-grid", "--out"}},
      {"rep-roundtrip", {"--family", "--u-grid", "--tol", "--out"}},
      {"rc-check", {"--family", "--n", "--k", "--k-exp", "--out"}},
      {"sim-quantile", {"--n", "--k", "--alpha", "--s-grid", "--reps", "--seed", "--summary-out"}},
      {"sim-hill", {"--n", "--k", "--f", "--reps", "--seed", "--out"}},
      {"parse-check", {"--expr", "--var", "--dsl-file", "--out"}},
  };
  for (const auto& [cmd, flags] : expected) {
    CAPTURE(cmd);
    const Run r = run(cmd + " --help");
    CHECK(r.status == 0);
    for (const auto& f : flags) {
      CAPTURE(f);
      CHECK(r.out.find(f) != std::string::npos);
    }
  }
  CHECK(run("--help").status == 0);
}

TEST_CASE("failed runs leave existing output untouched") {
  const fs::path out = scratch() / "keep.csv";
  write(out, "previous\n");
  const Run r = run("verify-soc --family burr --gamma 1 --out '" + out.string() + "'");
  CHECK(r.status == 2);
  CHECK(slurp(out) == "previous\n");
  const Run ok = run("verify-soc --family burr --gamma 1 --rho -1 --out '" + out.string() + "'");
  CHECK(ok.status == 0);
  CHECK(slurp(out).rfind("u,x,ratio", 0) == 0);
  CHECK(run("catalog --out '" + (scratch() / "missing" / "x.csv").string() + "'").status == 2);
}

TEST_CASE("configuration files with explicit overrides") {
  const fs::path cfg = scratch() / "run.cfg";
  write(cfg, "# burr run\nfamily = burr\ngamma = 1\nrho = -1\nx-grid = 2\nu-grid = 1e-2,1e-3\n");
  const Run from_file = run("verify-soc --config '" + cfg.string() + "'");
  CHECK(from_file.status == 0);
  CHECK(from_file.out.find(",2,-0.49999999") != std::string::npos);
  const Run overridden = run("verify-soc --config '" + cfg.string() + "' --x-grid 0.5");
  CHECK(overridden.status == 0);
  CHECK(overridden.out.find(",0.5,") != std::string::npos);
  CHECK(overridden.out.find(",2,") == std::string::npos);
  write(cfg, "family = burr\nbogus = 1\n");
  CHECK(run("verify-soc --config '" + cfg.string() + "'").status == 2);
}

TEST_CASE("custom distributions from files") {
  const fs::path dsl = scratch() / "pareto.dist";
  write(dsl, "name = file_pareto\nquantile = u^(-g)\ng = 0.5\ngamma = 0.5\n");
  const Run r = run("rep-roundtrip --dsl-file '" + dsl.string() + "'");
  CHECK(r.status == 0);
  CHECK(r.out.rfind("u,regime,", 0) == 0);
  const Run absent = run("verify-soc --dsl-file '" + dsl.string() + "'");
  CHECK(absent.status == 2);
}

TEST_CASE("simulations are byte-identical across runs") {
  const fs::path a = scratch() / "a.csv";
  const fs::path b = scratch() / "b.csv";
  const std::string args = "sim-quantile --family burr --gamma 1 --rho -1 --n 10000 --k 100 --reps 20 --seed 7";
  CHECK(run(args + " --out '" + a.string() + "'").status == 0);
  CHECK(run(args + " --out '" + b.string() + "'").status == 0);
  CHECK(slurp(a) == slurp(b));
  CHECK_FALSE(slurp(a).empty());
  const Run other = run("sim-quantile --family burr --gamma 1 --rho -1 --n 10000 --k 100 --reps 20 --seed 8");
  CHECK(other.out != slurp(a));

  const std::string hill = "sim-hill --n 10000 --k 100 --reps 10 --seed 3";
  CHECK(run(hill).out == run(hill).out);
}
