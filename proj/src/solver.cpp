#include "gista/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gista/errors.hpp"

namespace gista {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double smooth_objective(const ProblemInstance& P, const DenseSym& theta, const CholFactor& chol) {
  return -log_det_from_chol(chol) + inner(P.S, theta);
}

// Duality gap given theta's log-det (saves refactorizing theta).
std::optional<double> gap_given_logdet(const ProblemInstance& P, const DenseSym& theta,
                                       const DenseSym& theta_inv, double log_det_theta) {
  const int p = P.dim();
  DenseSym SU(p);
  const double* s = P.S.data();
  const double* w = theta_inv.data();
  double* out = SU.data();
  const std::size_t n = SU.size();
  for (std::size_t k = 0; k < n; ++k) {
    const double u = std::clamp(w[k] - s[k], -P.rho, P.rho);
    out[k] = s[k] + u;
  }
  const auto chol_su = cholesky(SU);
  if (!chol_su) return std::nullopt;
  return -log_det_from_chol(*chol_su) - p - log_det_theta + inner(P.S, theta) +
         P.rho * abs_sum_quad(theta);
}

DenseSym default_init(const ProblemInstance& P) {
  const int p = P.dim();
  DenseSym theta0(p);
  for (int i = 0; i < p; ++i) theta0.set_sym(i, i, 1.0 / (P.S(i, i) + P.rho));
  return theta0;
}

double nnz_fraction(const DenseSym& A) {
  const int p = A.dim();
  return static_cast<double>(nnz(A)) / (static_cast<double>(p) * p);
}

}  // namespace

double objective(const ProblemInstance& P, const DenseSym& theta, const CholFactor& chol) {
  return smooth_objective(P, theta, chol) + P.rho * abs_sum_quad(theta);
}

DenseSym grad_f(const ProblemInstance& P, const DenseSym& theta_inv) {
  return add_scaled(P.S, theta_inv, -1.0);
}

DenseSym prox_step(const ProblemInstance& P, const DenseSym& theta, const DenseSym& theta_inv,
                   double zeta) {
  const int p = theta.dim();
  DenseSym half(p);
  const double* th = theta.data();
  const double* s = P.S.data();
  const double* w = theta_inv.data();
  double* out = half.data();
  const std::size_t n = half.size();
  for (std::size_t k = 0; k < n; ++k) out[k] = th[k] - zeta * (s[k] - w[k]);
  return soft_threshold(half, zeta * P.rho);
}

std::optional<LineSearchResult> line_search(const ProblemInstance& P, const SolverState& state,
                                            double zeta0, const SolverConfig& cfg) {
  const DenseSym grad = grad_f(P, state.theta_inv);
  // Near a fixed point f and Q agree to round-off; without a margin at the
  // scale of the objective's accumulated rounding error the comparison is
  // decided by evaluation noise and can reject every candidate.
  const double margin =
      64.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(state.smooth));
  double zeta = zeta0;
  for (int j = 0; j <= cfg.max_backtracks; ++j, zeta *= cfg.backtrack_c) {
    DenseSym cand = prox_step(P, state.theta, state.theta_inv, zeta);
    auto chol = cholesky(cand);
    if (!chol) continue;

    const double f_new = smooth_objective(P, cand, *chol);
    const DenseSym delta = add_scaled(cand, state.theta, -1.0);
    const double dnorm = frob_norm(delta);
    const double quad_model = state.smooth + inner(delta, grad) + dnorm * dnorm / (2.0 * zeta);
    if (f_new <= quad_model + margin)
      return LineSearchResult{std::move(cand), std::move(*chol), zeta, j, f_new};
  }
  return std::nullopt;
}

std::optional<double> bb_step(const DenseSym& theta_t, const DenseSym& theta_next,
                              const DenseSym& inv_t, const DenseSym& inv_next) {
  const DenseSym delta = add_scaled(theta_next, theta_t, -1.0);
  const DenseSym grad_delta = add_scaled(inv_t, inv_next, -1.0);
  const double num = inner(delta, delta);
  const double den = inner(delta, grad_delta);
  if (den <= 0.0 || std::abs(den) < 1e-14 * std::abs(num)) return std::nullopt;
  return num / den;
}

double safe_step(const DenseSym& theta_inv) {
  const double lam = power_iter_max_eig(theta_inv);
  return 1.0 / (lam * lam);
}

std::optional<double> duality_gap(const ProblemInstance& P, const DenseSym& theta,
                                  const DenseSym& theta_inv) {
  const auto chol = cholesky(theta);
  if (!chol) throw NotPositiveDefiniteError("duality_gap: theta is not positive definite");
  return gap_given_logdet(P, theta, theta_inv, log_det_from_chol(*chol));
}

SolverState make_state(const ProblemInstance& P, const DenseSym& theta) {
  SolverState s;
  s.theta = theta;
  auto chol = cholesky(theta);
  if (!chol) throw NotPositiveDefiniteError("make_state: theta is not positive definite");
  s.chol = std::move(*chol);
  s.theta_inv = inverse_from_chol(s.chol);
  s.smooth = smooth_objective(P, s.theta, s.chol);
  s.objective = s.smooth + P.rho * abs_sum_quad(s.theta);
  s.gap = kInf;
  return s;
}

namespace {

void validate_config(const SolverConfig& cfg) {
  if (!(cfg.tol > 0.0)) throw std::invalid_argument("tol must be > 0");
  if (!(cfg.backtrack_c > 0.0 && cfg.backtrack_c < 1.0))
    throw std::invalid_argument("backtrack_c must lie in (0,1)");
  if (!(cfg.zeta_init > 0.0)) throw std::invalid_argument("zeta_init must be > 0");
  if (cfg.max_backtracks < 1) throw std::invalid_argument("max_backtracks must be >= 1");
  if (cfg.max_iters < 1) throw std::invalid_argument("max_iters must be >= 1");
  if (cfg.gap_every_k < 1) throw std::invalid_argument("gap_every_k must be >= 1");
  if (cfg.step_rule == StepRule::Constant && !(cfg.constant_zeta > 0.0))
    throw std::invalid_argument("constant_zeta must be > 0");
}

}  // namespace

SolveResult solve(const ProblemInstance& P, const SolverConfig& cfg,
                  const std::optional<DenseSym>& theta0, const DenseSym* reference,
                  const IterObserver& observer) {
  validate_config(cfg);
  if (!(P.rho > 0.0)) throw std::invalid_argument("rho must be > 0");
  if (theta0 && theta0->dim() != P.dim())
    throw InvalidInit("initial iterate dimension " + std::to_string(theta0->dim()) +
                      " does not match the problem dimension " + std::to_string(P.dim()));
  SolverState state;
  state.theta = theta0 ? *theta0 : default_init(P);
  {
    auto chol = cholesky(state.theta);
    if (!chol) throw InvalidInit("initial iterate is not positive definite");
    state.chol = std::move(*chol);
  }
  state.theta_inv = inverse_from_chol(state.chol);
  state.smooth = smooth_objective(P, state.theta, state.chol);
  state.objective = state.smooth + P.rho * abs_sum_quad(state.theta);
  state.zeta = 0.0;
  state.iter = 0;
  state.gap = kInf;
  if (observer) observer(state);

  SolveResult result;
  double zeta_seed =
      cfg.step_rule == StepRule::Constant ? cfg.constant_zeta : cfg.zeta_init;

  for (int t = 1; t <= cfg.max_iters; ++t) {
    auto step = line_search(P, state, zeta_seed, cfg);
    if (!step) {
      // Fall back to the always-acceptable step and retry once.
      step = line_search(P, state, safe_step(state.theta_inv), cfg);
      if (!step)
        throw SolveError("line search failed even from the safe step at iteration " +
                         std::to_string(t));
    }
    DenseSym inv_next = inverse_from_chol(step->chol);

    if (cfg.step_rule == StepRule::Constant) {
      zeta_seed = cfg.constant_zeta;
    } else {
      const auto bb = bb_step(state.theta, step->theta, state.theta_inv, inv_next);
      zeta_seed = bb ? *bb : safe_step(inv_next);
    }

    const double log_det_next = log_det_from_chol(step->chol);
    if (t % cfg.gap_every_k == 0 || t == cfg.max_iters) {
      const auto gap = gap_given_logdet(P, step->theta, inv_next, log_det_next);
      state.gap = gap ? *gap : kInf;  // infeasible dual point: keep iterating
    }

    state.theta = std::move(step->theta);
    state.chol = std::move(step->chol);
    state.theta_inv = std::move(inv_next);
    state.smooth = step->smooth;
    state.objective = step->smooth + P.rho * abs_sum_quad(state.theta);
    state.zeta = step->zeta;
    state.iter = t;

    TraceRecord rec;
    rec.iter = t;
    rec.objective = state.objective;
    rec.gap = state.gap;
    rec.zeta_accepted = state.zeta;
    rec.backtracks = step->backtracks;
    rec.nnz_frac = nnz_fraction(state.theta);
    if (reference) rec.err_to_ref = frob_norm_diff(state.theta, *reference);
    result.trace.push_back(rec);
    if (observer) observer(state);

    if (state.gap <= cfg.tol) {
      result.theta_star = std::move(state.theta);
      result.gap = state.gap;
      result.iterations = t;
      result.termination = Termination::GapReached;
      return result;
    }
  }

  result.theta_star = std::move(state.theta);
  result.gap = state.gap;
  result.iterations = cfg.max_iters;
  result.termination = Termination::MaxIters;
  return result;
}

double compute_alpha(const ProblemInstance& P) {
  return 1.0 / (spectral_norm(P.S) + P.dim() * P.rho);
}

BetaGamma compute_beta(const ProblemInstance& P) {
  const int p = P.dim();
  const double alpha = compute_alpha(P);

  double gamma;
  if (const auto chol_s = cholesky(P.S)) {
    const DenseSym Sinv = inverse_from_chol(*chol_s);
    const double g1 = abs_sum_quad(Sinv);
    const double g2 = (p - P.rho * std::sqrt(static_cast<double>(p)) * alpha) *
                          power_iter_max_eig(Sinv) -
                      (p - 1) * alpha;
    gamma = std::min(g1, g2);
  } else {
    const auto chol_m = cholesky(shift_diag(P.S, P.rho / 2.0));
    if (!chol_m)
      throw NotPositiveDefiniteError("S + (rho/2) I is not positive definite");
    const DenseSym M = inverse_from_chol(*chol_m);
    gamma = 2.0 * abs_sum_quad(M) - trace(M);
  }

  const double cap = (p - alpha * trace(P.S)) / P.rho;
  return BetaGamma{std::min(cap, gamma), gamma};
}

double contraction_bound(double a, double b, double zeta) {
  return std::max(std::abs(1.0 - zeta / (b * b)), std::abs(1.0 - zeta / (a * a)));
}

double optimal_step(double a, double b) { return 2.0 / (1.0 / (a * a) + 1.0 / (b * b)); }

double optimal_rate(double a, double b) { return 1.0 - 2.0 / (1.0 + (b * b) / (a * a)); }

RateBounds closed_form_rate(const ProblemInstance& P) {
  const int p = P.dim();
  const double alpha = compute_alpha(P);
  const auto bg = compute_beta(P);
  const double sqp = std::sqrt(static_cast<double>(p));

  Bounds bounds;
  bounds.alpha = alpha;
  bounds.beta = bg.beta;
  bounds.gamma = bg.gamma;
  bounds.b_prime = bg.beta + sqp * (bg.beta + alpha);
  bounds.kappa_upper = bg.beta / alpha;

  const double reach = bg.beta + sqp * (bg.beta - alpha);
  const double rate = 1.0 - 2.0 * alpha * alpha / (alpha * alpha + reach * reach);
  return RateBounds{rate, bounds};
}

double rate_floor(double kappa) { return 1.0 - 2.0 / (kappa * kappa); }

}  // namespace gista
