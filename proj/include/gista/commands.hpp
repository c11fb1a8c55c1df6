#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace gista {

// Implementation of the CLI subcommands, callable in-process. Each returns
// the process exit code: 0 on success (duality gap reached where relevant),
// 2 when an iteration cap ended a solve, 1 on input or I/O errors. All file
// output is written to a temp file and renamed, so exit 1 leaves no partial
// artifacts.

struct SolveOptions {
  std::string input;             // path to the covariance matrix (csv/tsv)
  double rho = 0.0;
  double tol = 1e-5;
  int max_iters = 10000;
  std::string step = "bb";       // "bb" or "constant:<zeta>"
  std::string init = "diag";     // "diag" or a matrix path
  std::string output;            // optional: path for theta_star as CSV
  std::string trace;             // optional: trace path (.jsonl for JSON lines)
  bool print_bounds = false;
};

struct GenOptions {
  int p = 0;
  double zero_prob = 0.0;
  int n = 0;
  std::uint64_t seed = 0;
  std::string out_prefix;
};

struct StudyOptions {
  std::string input;             // either a matrix path...
  std::optional<GenOptions> gen; // ...or a generation recipe (out_prefix unused)
  std::vector<double> rhos;
  double ref_tol = 1e-10;
  double tol = 1e-5;             // tolerance of the recorded re-run
  int max_iters = 10000;
  std::string out_dir;
};

int run_solve(const SolveOptions& opt);
int run_gen(const GenOptions& opt);
int run_study(const StudyOptions& opt);

}  // namespace gista
