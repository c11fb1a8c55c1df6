#include "gista/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include "gista/errors.hpp"
#include "gista/oracle.hpp"

namespace gista {

double tail_contraction(const std::vector<TraceRecord>& trace) {
  std::vector<double> errs;
  errs.reserve(trace.size());
  for (const auto& r : trace)
    if (r.err_to_ref && *r.err_to_ref > 0.0) errs.push_back(*r.err_to_ref);
  if (errs.size() < 5)
    throw InsufficientTrace("need at least 5 records with positive err_to_ref");

  const std::size_t num_ratios = errs.size() - 1;
  // Tail window: last half of the ratios, at least five. Early iterations are
  // transient; the asymptotic slope is what gets compared against theory.
  const std::size_t window =
      std::min(num_ratios, std::max<std::size_t>((num_ratios + 1) / 2, 5));
  const std::size_t first = errs.size() - 1 - window;

  double log_sum = 0.0;
  for (std::size_t k = first; k + 1 < errs.size(); ++k)
    log_sum += std::log(errs[k + 1] / errs[k]);
  return std::exp(log_sum / static_cast<double>(window));
}

RateReport empirical_contraction(const ProblemInstance& P, const std::vector<TraceRecord>& trace,
                                 const DenseSym& reference) {
  RateReport report;
  report.empirical_rate = tail_contraction(trace);
  report.theoretical_rate = closed_form_rate(P).rate;

  const auto eig = oracle::jacobi_eigen(reference, 1e-12);
  report.kappa_star = eig.eigenvalues.back() / eig.eigenvalues.front();
  report.rate_floor = rate_floor(report.kappa_star);
  return report;
}

}  // namespace gista
