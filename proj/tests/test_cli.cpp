#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "gista/commands.hpp"
#include "gista/linalg.hpp"
#include "gista/matrix_io.hpp"
#include "gista/rng.hpp"
#include "gista/trace.hpp"
#include "testutil.hpp"

using namespace gista;
namespace fs = std::filesystem;

namespace {

fs::path work_dir() {
  static const fs::path dir = [] {
    auto d = fs::temp_directory_path() / "gista_cli_tests";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string cli_binary() {
  if (const char* env = std::getenv("GISTA_BIN")) return env;
  return "./tools/gista";  // layout when run from the build directory
}

int run_cli(const std::string& args) {
  const std::string cmd = cli_binary() + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return (status >> 8) & 0xff;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("matrix CSV write/read round-trips entrywise") {
  SplitMix64 rng(55);
  const DenseSym a = testutil::random_sym(7, rng, 3.0);
  const auto path = (work_dir() / "roundtrip.csv").string();
  write_matrix(path, a);
  const DenseSym b = read_symmetric(path);
  CHECK(a == b);
}

TEST_CASE("reader symmetrizes tiny asymmetry and rejects large") {
  const auto ok_path = (work_dir() / "tiny_asym.csv").string();
  write_text_atomically(ok_path, "1.0,0.5000000000001\n0.5,2.0\n");  // 1e-13 gap
  const DenseSym m = read_symmetric(ok_path);
  CHECK(m(0, 1) == doctest::Approx(0.50000000000005).epsilon(1e-15));
  CHECK(m(0, 1) == m(1, 0));

  const auto bad_path = (work_dir() / "bad_asym.csv").string();
  write_text_atomically(bad_path, "1.0,0.51\n0.5,2.0\n");
  CHECK_THROWS(read_symmetric(bad_path));

  const auto rect_path = (work_dir() / "rect.csv").string();
  write_text_atomically(rect_path, "1.0,0.5,3.0\n0.5,2.0,1.0\n");
  CHECK_THROWS(read_symmetric(rect_path));
}

TEST_CASE("tsv input is accepted") {
  const auto path = (work_dir() / "m.tsv").string();
  write_text_atomically(path, "2.0\t0.1\n0.1\t3.0\n");
  const DenseSym m = read_symmetric(path);
  CHECK(m(0, 0) == 2.0);
  CHECK(m(0, 1) == 0.1);
}

TEST_CASE("solve subcommand recovers the diagonal optimum with exit code 0") {
  const auto input = (work_dir() / "diag.csv").string();
  write_text_atomically(input, "1,0,0\n0,2,0\n0,0,3\n");
  const auto output = (work_dir() / "theta.csv").string();

  const int code =
      run_cli("solve --input " + input + " --rho 0.2 --tol 1e-8 --output " + output);
  CHECK(code == 0);

  const DenseSym theta = read_symmetric(output);
  const DenseSym expect =
      DenseSym::diag(std::vector<double>{1.0 / 1.2, 1.0 / 2.2, 1.0 / 3.2});
  CHECK(frob_norm_diff(theta, expect) < 1e-7);
}

TEST_CASE("constant-step rule and warm start from a matrix file") {
  const auto input = (work_dir() / "cdiag.csv").string();
  write_text_atomically(input, "1,0\n0,2\n");
  const auto init = (work_dir() / "cinit.csv").string();
  write_text_atomically(init, "0.5,0\n0,0.5\n");
  const auto output = (work_dir() / "ctheta.csv").string();

  const int code = run_cli("solve --input " + input + " --rho 0.2 --tol 1e-12" +
                           " --step constant:0.2 --init " + init + " --output " + output);
  CHECK(code == 0);
  const DenseSym theta = read_symmetric(output);
  CHECK(theta(0, 0) == doctest::Approx(1.0 / 1.2).epsilon(1e-5));
  CHECK(theta(1, 1) == doctest::Approx(1.0 / 2.2).epsilon(1e-5));

  // A warm start that is not PD is an input error.
  const auto bad_init = (work_dir() / "cbad.csv").string();
  write_text_atomically(bad_init, "1,2\n2,1\n");
  CHECK(run_cli("solve --input " + input + " --rho 0.2 --init " + bad_init) == 1);
}

TEST_CASE("missing or bad flags exit with code 1") {
  const auto input = (work_dir() / "diag1.csv").string();
  write_text_atomically(input, "1,0\n0,2\n");
  CHECK(run_cli("solve --input " + input) == 1);                               // no --rho
  CHECK(run_cli("solve --input " + input + " --rho -0.5") == 1);               // bad rho
  CHECK(run_cli("solve --input /nonexistent.csv --rho 0.1") == 1);             // bad file
  CHECK(run_cli("solve --input " + input + " --rho 0.1 --step wat") == 1);     // bad step
  CHECK(run_cli("gen --p 1 --zero-prob 0.5 --n 3 --out-prefix x") == 1);       // p too small
}

TEST_CASE("iteration cap exits with code 2 and still writes the iterate") {
  const auto input = (work_dir() / "hard.csv").string();
  {
    GenOptions gen;
    gen.p = 20;
    gen.zero_prob = 0.8;
    gen.n = 10;
    gen.seed = 5;
    gen.out_prefix = (work_dir() / "hard").string();
    REQUIRE(run_gen(gen) == 0);
    fs::rename(work_dir() / "hard.S.csv", input);
  }
  const auto output = (work_dir() / "hard_theta.csv").string();
  const int code = run_cli("solve --input " + input +
                           " --rho 0.05 --tol 1e-14 --max-iters 3 --output " + output);
  CHECK(code == 2);
  CHECK(fs::exists(output));
}

TEST_CASE("failed runs leave no partial output files") {
  const auto input = (work_dir() / "diag2.csv").string();
  write_text_atomically(input, "1,0\n0,2\n");
  const auto output = (work_dir() / "no_such_dir" / "theta.csv").string();
  CHECK(run_cli("solve --input " + input + " --rho 0.1 --output " + output) == 1);
  CHECK_FALSE(fs::exists(output));
  CHECK_FALSE(fs::exists(output + ".tmp"));
}

TEST_CASE("solve writes a parseable trace in both formats") {
  const auto input = (work_dir() / "diag3.csv").string();
  write_text_atomically(input, "1,0\n0,2\n");
  for (const char* name : {"trace.csv", "trace.jsonl"}) {
    const auto trace_path = (work_dir() / name).string();
    REQUIRE(run_cli("solve --input " + input + " --rho 0.3 --trace " + trace_path) == 0);
    const auto format = std::string(name).ends_with(".jsonl") ? TraceFormat::JsonLines
                                                              : TraceFormat::Csv;
    const auto trace = parse_trace(format, trace_path);
    REQUIRE(!trace.empty());
    CHECK(trace.back().gap <= 1e-5);
  }
}

TEST_CASE("gen emits deterministic byte-identical artifacts") {
  const auto prefix_a = (work_dir() / "det_a").string();
  const auto prefix_b = (work_dir() / "det_b").string();
  const std::string flags = "gen --p 12 --zero-prob 0.9 --n 8 --seed 97 --out-prefix ";
  REQUIRE(run_cli(flags + prefix_a) == 0);
  REQUIRE(run_cli(flags + prefix_b) == 0);

  for (const char* suffix : {".omega.csv", ".S.csv", ".meta.json"}) {
    CHECK(slurp(prefix_a + suffix) == slurp(prefix_b + suffix));
  }
}

TEST_CASE("gen with full sparsity writes the identity") {
  const auto prefix = (work_dir() / "ident").string();
  REQUIRE(run_cli("gen --p 10 --zero-prob 1 --n 5 --seed 7 --out-prefix " + prefix) == 0);
  const DenseSym omega = read_symmetric(prefix + ".omega.csv");
  CHECK(omega == DenseSym::identity(10));
  CHECK(slurp(prefix + ".meta.json").find("\"nnz_frac\": 0.0") != std::string::npos);
}

TEST_CASE("study on a diagonal instance emits finite rates and deep error decay") {
  const auto input = (work_dir() / "sdiag.csv").string();
  write_text_atomically(input, "1,0,0\n0,2,0\n0,0,4\n");
  const auto out = (work_dir() / "study_diag").string();
  REQUIRE(run_cli("study --input " + input + " --rhos 0.2 --out " + out) == 0);

  const auto summary = slurp(fs::path(out) / "summary.csv");
  CHECK(summary.find("rho,nnz_pct,kappa_star,empirical_rate,closed_form_rate") == 0);
  CHECK(summary.find("nan") == std::string::npos);
  CHECK(summary.find("inf") == std::string::npos);

  const auto trace = parse_trace(TraceFormat::Csv, (fs::path(out) / "trace_rho_0.2.csv").string());
  REQUIRE(!trace.empty());
  REQUIRE(trace.back().err_to_ref.has_value());
  CHECK(*trace.back().err_to_ref <= 1e-9);
}

TEST_CASE("study over ascending penalties reports nonincreasing nnz") {
  const auto out = (work_dir() / "study_gen").string();
  REQUIRE(run_cli("study --p 30 --zero-prob 0.9 --n 60 --seed 4 --rhos 0.1,0.2,0.4 --out " +
                  out) == 0);
  const auto summary = slurp(fs::path(out) / "summary.csv");

  std::vector<double> nnz_pct;
  std::istringstream lines(summary);
  std::string line;
  std::getline(lines, line);  // header
  while (std::getline(lines, line)) {
    const auto first = line.find(',');
    const auto second = line.find(',', first + 1);
    nnz_pct.push_back(std::stod(line.substr(first + 1, second - first - 1)));
  }
  REQUIRE(nnz_pct.size() == 3);
  CHECK(nnz_pct[1] <= nnz_pct[0]);
  CHECK(nnz_pct[2] <= nnz_pct[1]);
}

TEST_CASE("a generated p=100 instance solves through the binary to the default gap") {
  const auto prefix = (work_dir() / "p100").string();
  REQUIRE(run_cli("gen --p 100 --zero-prob 0.97 --n 60 --seed 21 --out-prefix " + prefix) == 0);
  const auto trace_path = (work_dir() / "p100_trace.csv").string();
  CHECK(run_cli("solve --input " + prefix + ".S.csv --rho 0.1 --tol 1e-5 --trace " +
                trace_path) == 0);
  const auto trace = parse_trace(TraceFormat::Csv, trace_path);
  REQUIRE(!trace.empty());
  CHECK(trace.back().gap <= 1e-5);
}

TEST_CASE("gen at p=500 reports the target sparsity in its metadata") {
  const auto prefix = (work_dir() / "p500").string();
  REQUIRE(run_cli("gen --p 500 --zero-prob 0.97 --n 10 --seed 8 --out-prefix " + prefix) == 0);
  const auto meta = slurp(prefix + ".meta.json");
  const auto key = meta.find("\"nnz_frac\": ");
  REQUIRE(key != std::string::npos);
  const double nnz_frac = std::stod(meta.substr(key + 12));
  const double sigma3 = 3.0 * std::sqrt(0.03 * 0.97 / (500.0 * 499.0 / 2.0));
  CHECK(std::abs(nnz_frac - 0.03) <= sigma3);
}

TEST_CASE("study rejects an empty penalty list") {
  const auto input = (work_dir() / "sdiag2.csv").string();
  write_text_atomically(input, "1,0\n0,2\n");
  StudyOptions opt;
  opt.input = input;
  opt.out_dir = (work_dir() / "study_empty").string();
  CHECK(run_study(opt) == 1);
  CHECK(run_cli("study --input " + input + " --out " + opt.out_dir) == 1);
}
