#include "gista/datagen.hpp"

#include <cmath>
#include <stdexcept>

#include "gista/errors.hpp"
#include "gista/linalg.hpp"
#include "gista/oracle.hpp"
#include "gista/rng.hpp"

namespace gista {

namespace {

// lambda_min of a general symmetric matrix. Full spectrum at small p; above
// that, power iteration on c*I - A with c a Gershgorin bound, which makes the
// shifted matrix PSD with dominant eigenvalue c - lambda_min(A).
double min_eigenvalue(const DenseSym& A) {
  if (A.dim() <= 200) return oracle::jacobi_eigen(A, 1e-12).eigenvalues.front();
  const double c = max_abs_row_sum(A);
  if (c == 0.0) return 0.0;
  // A - c*I has all eigenvalues in [lambda_min - c, 0]; the dominant one in
  // magnitude is lambda_min - c, and the Rayleigh quotient keeps its sign.
  const double shifted = power_iter_max_eig(shift_diag(A, -c), 1e-9, 20000);
  return c + shifted;
}

}  // namespace

SyntheticModel gen_model(const ModelSpec& spec) {
  const int p = spec.p;
  if (p < 2) throw std::invalid_argument("gen_model: p must be >= 2");
  if (spec.zero_prob < 0.0 || spec.zero_prob > 1.0)
    throw std::invalid_argument("gen_model: zero_prob must lie in [0,1]");

  SplitMix64 rng(spec.seed);
  DenseSym omega(p);
  int nonzero = 0;
  for (int i = 0; i < p; ++i) {
    for (int j = i + 1; j < p; ++j) {
      const double value = rng.uniform(-1.0, 1.0);
      const bool zeroed = rng.uniform01() < spec.zero_prob;
      if (!zeroed) {
        omega.set_sym(i, j, value);
        if (value != 0.0) ++nonzero;
      }
    }
  }

  const double lam_min = min_eigenvalue(omega);
  SyntheticModel model;
  model.omega = shift_diag(omega, 1.0 - lam_min);
  const auto chol = cholesky(model.omega);
  if (!chol) throw NotPositiveDefiniteError("gen_model: shifted matrix not PD");
  model.sigma = inverse_from_chol(*chol);
  model.nnz_frac = static_cast<double>(2 * nonzero) / (static_cast<double>(p) * (p - 1));
  return model;
}

SampleResult sample_data(const SyntheticModel& model, int n, std::uint64_t seed) {
  const int p = model.sigma.dim();
  if (n < 1) throw std::invalid_argument("sample_data: n must be >= 1");

  const auto chol = cholesky(model.sigma);
  if (!chol) throw NotPositiveDefiniteError("sample_data: sigma not PD");
  const double* L = chol->lower.data();

  SplitMix64 rng(seed);
  SampleResult out;
  out.X = Mat(n, p);
  std::vector<double> z(p);
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < p; ++i) z[i] = rng.normal();
    double* x = out.X.a.data() + static_cast<std::size_t>(k) * p;
    for (int i = 0; i < p; ++i) {
      double s = 0.0;
      const double* li = L + static_cast<std::size_t>(i) * p;
      for (int j = 0; j <= i; ++j) s += li[j] * z[j];
      x[i] = s;
    }
  }

  // S = (1/n) X^T X, one output entry per loop iteration.
  out.S = DenseSym(p);
  double* s = out.S.data();
  const double* X = out.X.a.data();
#pragma omp parallel for schedule(static) if (p >= 96)
  for (int i = 0; i < p; ++i) {
    for (int j = 0; j <= i; ++j) {
      double acc = 0.0;
      for (int k = 0; k < n; ++k)
        acc += X[static_cast<std::size_t>(k) * p + i] * X[static_cast<std::size_t>(k) * p + j];
      s[static_cast<std::size_t>(i) * p + j] = acc / n;
    }
  }
  out.S.mirror_lower();
  return out;
}

}  // namespace gista
