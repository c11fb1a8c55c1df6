#include "gista/commands.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "gista/datagen.hpp"
#include "gista/diagnostics.hpp"
#include "gista/errors.hpp"
#include "gista/matrix_io.hpp"
#include "gista/oracle.hpp"
#include "gista/solver.hpp"
#include "gista/trace.hpp"

namespace gista {

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

TraceFormat trace_format_for(const std::string& path) {
  auto ends_with = [&](const char* suffix) {
    const std::size_t n = std::strlen(suffix);
    return path.size() >= n && path.compare(path.size() - n, n, suffix) == 0;
  };
  return (ends_with(".jsonl") || ends_with(".ndjson")) ? TraceFormat::JsonLines
                                                       : TraceFormat::Csv;
}

SolverConfig parse_step_rule(const std::string& step, SolverConfig cfg) {
  if (step == "bb") {
    cfg.step_rule = StepRule::BarzilaiBorwein;
    return cfg;
  }
  if (step.rfind("constant:", 0) == 0) {
    const std::string zstr = step.substr(9);
    double z = 0.0;
    auto [ptr, ec] = std::from_chars(zstr.data(), zstr.data() + zstr.size(), z);
    if (ec != std::errc{} || ptr != zstr.data() + zstr.size() || !(z > 0.0))
      throw std::invalid_argument("--step constant:<zeta> needs a positive zeta, got '" + step +
                                  "'");
    cfg.step_rule = StepRule::Constant;
    cfg.constant_zeta = z;
    return cfg;
  }
  throw std::invalid_argument("--step must be 'bb' or 'constant:<zeta>', got '" + step + "'");
}

void print_bounds(const ProblemInstance& P) {
  const auto rb = closed_form_rate(P);
  std::cout << "alpha=" << fmt17(rb.bounds.alpha) << '\n'
            << "beta=" << fmt17(rb.bounds.beta) << '\n'
            << "gamma=" << fmt17(rb.bounds.gamma) << '\n'
            << "rate=" << fmt17(rb.rate) << '\n'
            << "kappa_upper=" << fmt17(rb.bounds.kappa_upper) << '\n';
}

// Tail contraction that stays finite on very short traces (a solve that
// lands on the optimum in one or two steps has no meaningful tail window).
double study_rate(const std::vector<TraceRecord>& trace) {
  try {
    return tail_contraction(trace);
  } catch (const InsufficientTrace&) {
    std::vector<double> errs;
    for (const auto& r : trace)
      if (r.err_to_ref && *r.err_to_ref > 0.0) errs.push_back(*r.err_to_ref);
    if (errs.size() >= 2)
      return std::pow(errs.back() / errs.front(),
                      1.0 / static_cast<double>(errs.size() - 1));
    return 0.0;
  }
}

}  // namespace

int run_solve(const SolveOptions& opt) {
  try {
    if (!(opt.rho > 0.0)) {
      std::cerr << "--rho must be > 0\n";
      return 1;
    }
    ProblemInstance P{read_symmetric(opt.input), opt.rho};

    SolverConfig cfg;
    cfg.tol = opt.tol;
    cfg.max_iters = opt.max_iters;
    cfg = parse_step_rule(opt.step, cfg);

    std::optional<DenseSym> theta0;
    if (opt.init != "diag") {
      DenseSym candidate = read_symmetric(opt.init);
      if (candidate.dim() != P.dim()) {
        std::cerr << "--init matrix dimension " << candidate.dim() << " does not match input "
                  << P.dim() << "\n";
        return 1;
      }
      theta0 = std::move(candidate);
    }

    const SolveResult result = solve(P, cfg, theta0);

    if (!opt.output.empty()) write_matrix(opt.output, result.theta_star);
    if (!opt.trace.empty()) export_trace(result.trace, trace_format_for(opt.trace), opt.trace);
    if (opt.print_bounds) print_bounds(P);

    std::cout << "iterations=" << result.iterations << '\n'
              << "gap=" << fmt17(result.gap) << '\n'
              << "termination="
              << (result.termination == Termination::GapReached ? "gap_reached" : "max_iters")
              << '\n';
    return result.termination == Termination::GapReached ? 0 : 2;
  } catch (const std::exception& e) {
    std::cerr << "solve: " << e.what() << '\n';
    return 1;
  }
}

int run_gen(const GenOptions& opt) {
  try {
    if (opt.p < 2) {
      std::cerr << "--p must be >= 2\n";
      return 1;
    }
    if (opt.n < 1) {
      std::cerr << "--n must be >= 1\n";
      return 1;
    }
    if (opt.out_prefix.empty()) {
      std::cerr << "--out-prefix is required\n";
      return 1;
    }

    const ModelSpec spec{opt.p, opt.zero_prob, opt.seed};
    const SyntheticModel model = gen_model(spec);
    const SampleResult sample = sample_data(model, opt.n, opt.seed);

    write_matrix(opt.out_prefix + ".omega.csv", model.omega);
    write_matrix(opt.out_prefix + ".S.csv", sample.S);

    nlohmann::ordered_json meta;
    meta["p"] = opt.p;
    meta["zero_prob"] = opt.zero_prob;
    meta["n"] = opt.n;
    meta["seed"] = opt.seed;
    meta["nnz_frac"] = model.nnz_frac;
    write_text_atomically(opt.out_prefix + ".meta.json", meta.dump(2) + "\n");
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "gen: " << e.what() << '\n';
    return 1;
  }
}

int run_study(const StudyOptions& opt) {
  try {
    if (opt.rhos.empty()) {
      std::cerr << "--rhos needs at least one value\n";
      return 1;
    }
    for (double r : opt.rhos)
      if (!(r > 0.0)) {
        std::cerr << "--rhos values must be > 0\n";
        return 1;
      }
    if (opt.out_dir.empty()) {
      std::cerr << "--out is required\n";
      return 1;
    }
    if (opt.input.empty() == !opt.gen.has_value()) {
      std::cerr << "provide exactly one of --input or the --p/--zero-prob/--n/--seed recipe\n";
      return 1;
    }

    DenseSym S;
    if (!opt.input.empty()) {
      S = read_symmetric(opt.input);
    } else {
      const ModelSpec spec{opt.gen->p, opt.gen->zero_prob, opt.gen->seed};
      S = sample_data(gen_model(spec), opt.gen->n, opt.gen->seed).S;
    }

    std::filesystem::create_directories(opt.out_dir);

    std::ostringstream summary;
    summary << "rho,nnz_pct,kappa_star,empirical_rate,closed_form_rate\n";

    bool all_gap_reached = true;
    for (double rho : opt.rhos) {
      const ProblemInstance P{S, rho};

      SolverConfig ref_cfg;
      ref_cfg.tol = opt.ref_tol;
      ref_cfg.max_iters = opt.max_iters;
      const SolveResult ref = solve(P, ref_cfg);
      all_gap_reached = all_gap_reached && ref.termination == Termination::GapReached;

      SolverConfig cfg;
      cfg.tol = opt.tol;
      cfg.max_iters = opt.max_iters;
      const SolveResult rerun = solve(P, cfg, std::nullopt, &ref.theta_star);
      all_gap_reached = all_gap_reached && rerun.termination == Termination::GapReached;

      char rho_label[32];
      std::snprintf(rho_label, sizeof(rho_label), "%g", rho);
      const std::string trace_path =
          (std::filesystem::path(opt.out_dir) / ("trace_rho_" + std::string(rho_label) + ".csv"))
              .string();
      export_trace(rerun.trace, TraceFormat::Csv, trace_path);

      const double rate = study_rate(rerun.trace);
      const auto eig = oracle::jacobi_eigen(ref.theta_star, 1e-12);
      const double kappa = eig.eigenvalues.back() / eig.eigenvalues.front();
      const double nnz_pct = 100.0 * nnz(ref.theta_star) /
                             (static_cast<double>(P.dim()) * P.dim());

      summary << rho_label << ',' << fmt17(nnz_pct) << ',' << fmt17(kappa) << ',' << fmt17(rate)
              << ',' << fmt17(closed_form_rate(P).rate) << '\n';
    }

    write_text_atomically((std::filesystem::path(opt.out_dir) / "summary.csv").string(),
                          summary.str());
    return all_gap_reached ? 0 : 2;
  } catch (const std::exception& e) {
    std::cerr << "study: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace gista
