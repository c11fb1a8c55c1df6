#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "gista/linalg.hpp"
#include "gista/mat.hpp"
#include "gista/trace.hpp"

namespace gista {

// Proximal-gradient solver for the l1-penalized inverse covariance problem
//
//   minimize over PD Theta:  -log det(Theta) + <S, Theta> + rho * ||Theta||_1
//
// (graphical ISTA): a gradient step on the smooth part followed by entrywise
// soft thresholding, with a backtracking line search that also enforces
// positive definiteness, Barzilai-Borwein step seeding, and duality-gap
// termination. The analytical eigenvalue bounds and linear-rate formulas for
// the solution and the iterates are exposed alongside the solver.

/// The problem data: sample covariance S (PSD expected, not required) and
/// penalty rho > 0.
struct ProblemInstance {
  DenseSym S;
  double rho = 0.0;

  int dim() const { return S.dim(); }
};

enum class StepRule { BarzilaiBorwein, Constant };

struct SolverConfig {
  double tol = 1e-5;          // duality-gap target
  double backtrack_c = 0.5;   // step shrink factor, in (0,1)
  double zeta_init = 1.0;     // line-search seed on the first iteration
  int max_backtracks = 20;
  int max_iters = 10000;
  StepRule step_rule = StepRule::BarzilaiBorwein;
  double constant_zeta = 1.0;  // seed every iteration when step_rule == Constant
  int gap_every_k = 1;         // duality-gap cadence; 1 = every iteration
};

/// Current iterate with its cached factorization, inverse and objective.
struct SolverState {
  DenseSym theta;
  DenseSym theta_inv;
  CholFactor chol;
  double objective = 0.0;  // smooth + l1 parts
  double smooth = 0.0;     // -log det + <S, theta> alone
  double zeta = 0.0;       // last accepted step size
  int iter = 0;
  double gap = 0.0;        // last computed duality gap
};

/// Analytical eigenvalue bounds for the solution and the iterates:
/// alpha*I <= theta_star <= beta*I, iterates bounded above by b_prime,
/// condition number bounded by kappa_upper = beta/alpha.
struct Bounds {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  double b_prime = 0.0;
  double kappa_upper = 0.0;
};

enum class Termination { GapReached, MaxIters };

struct SolveResult {
  DenseSym theta_star;
  double gap = 0.0;
  int iterations = 0;
  std::vector<TraceRecord> trace;
  Termination termination = Termination::MaxIters;
};

/// Full objective -log det(theta) + <S,theta> + rho*||theta||_1, with the
/// l1 term summed over all entries including the diagonal.
double objective(const ProblemInstance& P, const DenseSym& theta, const CholFactor& chol);

/// Gradient of the smooth part: S - theta^{-1}.
DenseSym grad_f(const ProblemInstance& P, const DenseSym& theta_inv);

/// One proximal step eta_{zeta*rho}(theta - zeta*(S - theta^{-1})).
/// Positive definiteness of the result is the line search's concern.
DenseSym prox_step(const ProblemInstance& P, const DenseSym& theta, const DenseSym& theta_inv,
                   double zeta);

struct LineSearchResult {
  DenseSym theta;
  CholFactor chol;
  double zeta = 0.0;
  int backtracks = 0;
  double smooth = 0.0;  // smooth objective at the accepted point
};

/// Backtracking search over {c^j * zeta0}: accepts the first step whose
/// proximal update is positive definite and whose smooth objective lies at
/// or below the quadratic model around state.theta. nullopt after
/// cfg.max_backtracks rejected candidates.
std::optional<LineSearchResult> line_search(const ProblemInstance& P, const SolverState& state,
                                            double zeta0, const SolverConfig& cfg);

/// Barzilai-Borwein curvature step from two consecutive iterates; nullopt
/// when the denominator is nonpositive or negligibly small.
std::optional<double> bb_step(const DenseSym& theta_t, const DenseSym& theta_next,
                              const DenseSym& inv_t, const DenseSym& inv_next);

/// lambda_min(theta)^2 = 1/lambda_max(theta^{-1})^2, a step size the line
/// search always accepts.
double safe_step(const DenseSym& theta_inv);

/// Duality gap at theta via the clamped dual point U = clip(theta^{-1} - S).
/// nullopt when S + U is not positive definite (caller treats as +inf).
std::optional<double> duality_gap(const ProblemInstance& P, const DenseSym& theta,
                                  const DenseSym& theta_inv);

/// Build a full SolverState (factorization, inverse, cached objectives) from
/// an iterate; throws NotPositiveDefiniteError if theta is not PD.
SolverState make_state(const ProblemInstance& P, const DenseSym& theta);

using IterObserver = std::function<void(const SolverState&)>;

/// Run the solver. theta0 defaults to diag(1/(S_ii + rho)); a user-supplied
/// start must be PD (InvalidInit otherwise). When reference is non-null each
/// trace record carries ||theta_t - reference||_F. The observer, when set,
/// sees the initial state and every accepted iterate.
SolveResult solve(const ProblemInstance& P, const SolverConfig& cfg,
                  const std::optional<DenseSym>& theta0 = std::nullopt,
                  const DenseSym* reference = nullptr, const IterObserver& observer = nullptr);

/// Solution eigenvalue floor alpha = 1/(||S||_2 + p*rho).
double compute_alpha(const ProblemInstance& P);

struct BetaGamma {
  double beta = 0.0;
  double gamma = 0.0;
};

/// Solution eigenvalue cap beta = min{(p - alpha*Tr S)/rho, gamma}, where
/// gamma switches on whether S itself is positive definite.
BetaGamma compute_beta(const ProblemInstance& P);

/// Worst-case per-iteration contraction max{|1 - zeta/b^2|, |1 - zeta/a^2|}
/// for iterates and solution confined to [a*I, b*I].
double contraction_bound(double a, double b, double zeta);

/// Step minimizing the contraction bound, 2/(a^-2 + b^-2), and its value
/// 1 - 2/(1 + b^2/a^2).
double optimal_step(double a, double b);
double optimal_rate(double a, double b);

struct RateBounds {
  double rate = 0.0;
  Bounds bounds;
};

/// Closed-form linear rate 1 - 2*alpha^2/(alpha^2 + (beta + sqrt(p)(beta -
/// alpha))^2) for constant steps below alpha^2, with the bounds it rests on.
RateBounds closed_form_rate(const ProblemInstance& P);

/// Condition-number floor on the rate: 1 - 2/kappa^2.
double rate_floor(double kappa);

}  // namespace gista
