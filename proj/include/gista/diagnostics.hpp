#pragma once

#include <vector>

#include "gista/solver.hpp"
#include "gista/trace.hpp"

namespace gista {

/// Theory-vs-practice convergence summary for one solve against a reference
/// solution.
struct RateReport {
  double empirical_rate = 0.0;    // geometric-mean error contraction, tail window
  double theoretical_rate = 0.0;  // closed-form constant-step rate
  double kappa_star = 0.0;        // condition number of the reference solution
  double rate_floor = 0.0;        // 1 - 2/kappa_star^2
};

/// Geometric mean of successive err_to_ref ratios over the tail window (the
/// last half of the ratios, at least five when available). Records without a
/// positive err_to_ref are ignored; fewer than five usable records throws
/// InsufficientTrace.
double tail_contraction(const std::vector<TraceRecord>& trace);

/// Full report: tail_contraction plus the closed-form rate of the problem and
/// the condition number of the reference (Jacobi spectrum).
RateReport empirical_contraction(const ProblemInstance& P, const std::vector<TraceRecord>& trace,
                                 const DenseSym& reference);

}  // namespace gista
