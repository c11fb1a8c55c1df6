#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gista/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"l1-penalized sparse inverse covariance estimation (proximal gradient)"};
  app.require_subcommand(1);

  gista::SolveOptions solve_opt;
  auto* solve = app.add_subcommand("solve", "estimate a precision matrix from a covariance CSV");
  solve->add_option("--input", solve_opt.input, "covariance matrix file (.csv or .tsv)")
      ->required();
  solve->add_option("--rho", solve_opt.rho, "l1 penalty (> 0)")->required();
  solve->add_option("--tol", solve_opt.tol, "duality-gap tolerance")->capture_default_str();
  solve->add_option("--max-iters", solve_opt.max_iters, "iteration cap")->capture_default_str();
  solve->add_option("--step", solve_opt.step, "'bb' or 'constant:<zeta>'")->capture_default_str();
  solve->add_option("--init", solve_opt.init, "'diag' or a matrix file")->capture_default_str();
  solve->add_option("--output", solve_opt.output, "write the estimate as CSV");
  solve->add_option("--trace", solve_opt.trace,
                    "write the per-iteration trace (.jsonl for JSON lines, else CSV)");
  solve->add_flag("--bounds", solve_opt.print_bounds,
                  "print alpha/beta/gamma, the closed-form rate and the condition bound");

  gista::GenOptions gen_opt;
  auto* gen = app.add_subcommand("gen", "generate a synthetic sparse-precision experiment");
  gen->add_option("--p", gen_opt.p, "dimension (>= 2)")->required();
  gen->add_option("--zero-prob", gen_opt.zero_prob, "off-diagonal zeroing probability")
      ->required();
  gen->add_option("--n", gen_opt.n, "number of samples (>= 1)")->required();
  gen->add_option("--seed", gen_opt.seed, "RNG seed")->capture_default_str();
  gen->add_option("--out-prefix", gen_opt.out_prefix,
                  "writes <prefix>.omega.csv, <prefix>.S.csv, <prefix>.meta.json")
      ->required();

  gista::StudyOptions study_opt;
  gista::GenOptions study_gen;
  bool have_gen_p = false;
  auto* study = app.add_subcommand(
      "study", "convergence-rate study: per-rho reference solve, recorded re-run, summary table");
  study->add_option("--input", study_opt.input, "covariance matrix file");
  auto* sp = study->add_option("--p", study_gen.p, "generate: dimension");
  study->add_option("--zero-prob", study_gen.zero_prob, "generate: zeroing probability");
  study->add_option("--n", study_gen.n, "generate: sample count");
  study->add_option("--seed", study_gen.seed, "generate: RNG seed")->capture_default_str();
  study->add_option("--rhos", study_opt.rhos, "comma-separated penalty values")
      ->required()
      ->delimiter(',');
  study->add_option("--ref-tol", study_opt.ref_tol, "reference-solve duality gap")->capture_default_str();
  study->add_option("--tol", study_opt.tol, "recorded-run duality gap")->capture_default_str();
  study->add_option("--max-iters", study_opt.max_iters, "iteration cap per solve")->capture_default_str();
  study->add_option("--out", study_opt.out_dir, "output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  if (solve->parsed()) return gista::run_solve(solve_opt);
  if (gen->parsed()) return gista::run_gen(gen_opt);
  have_gen_p = sp->count() > 0;
  if (have_gen_p) study_opt.gen = study_gen;
  return gista::run_study(study_opt);
}
