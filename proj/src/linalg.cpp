#include "gista/linalg.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <vector>

#include "gista/errors.hpp"

namespace gista {

namespace {

// Below this dimension the OpenMP `if` clauses keep everything on one thread;
// fork/join overhead dominates at small p.
constexpr int kOmpMinDim = 96;

// Sum of per-row partials, accumulated serially in row order. Each partial is
// produced by exactly one loop iteration, so the total does not depend on the
// number of threads.
double sum_rows(const std::vector<double>& row_sums) {
  double total = 0.0;
  for (double v : row_sums) total += v;
  return total;
}

}  // namespace

std::optional<CholFactor> cholesky(const DenseSym& A) {
  const int p = A.dim();
  CholFactor f;
  f.dim = p;
  f.lower.assign(static_cast<std::size_t>(p) * p, 0.0);
  double* L = f.lower.data();
  const double* a = A.data();

  for (int j = 0; j < p; ++j) {
    double d = a[static_cast<std::size_t>(j) * p + j];
    const double* Lj = L + static_cast<std::size_t>(j) * p;
    for (int k = 0; k < j; ++k) d -= Lj[k] * Lj[k];
    if (d <= 0.0) return std::nullopt;  // pivot <= 0: not positive definite
    const double djj = std::sqrt(d);
    L[static_cast<std::size_t>(j) * p + j] = djj;

#pragma omp parallel for schedule(static) if (p >= kOmpMinDim)
    for (int i = j + 1; i < p; ++i) {
      const double* Li = L + static_cast<std::size_t>(i) * p;
      double s = a[static_cast<std::size_t>(i) * p + j];
      for (int k = 0; k < j; ++k) s -= Li[k] * Lj[k];
      L[static_cast<std::size_t>(i) * p + j] = s / djj;
    }
  }
  return f;
}

DenseSym inverse_from_chol(const CholFactor& L) {
  const int p = L.dim;
  const double* l = L.lower.data();

  // V = L^{-1} by forward substitution, one column per task.
  std::vector<double> V(static_cast<std::size_t>(p) * p, 0.0);
#pragma omp parallel for schedule(static) if (p >= kOmpMinDim)
  for (int c = 0; c < p; ++c) {
    for (int i = c; i < p; ++i) {
      double s = (i == c) ? 1.0 : 0.0;
      const double* li = l + static_cast<std::size_t>(i) * p;
      for (int k = c; k < i; ++k) s -= li[k] * V[static_cast<std::size_t>(k) * p + c];
      V[static_cast<std::size_t>(i) * p + c] = s / li[i];
    }
  }

  // A^{-1} = V^T V; fill the lower triangle and mirror.
  DenseSym inv(p);
  double* out = inv.data();
#pragma omp parallel for schedule(static) if (p >= kOmpMinDim)
  for (int i = 0; i < p; ++i) {
    for (int j = 0; j <= i; ++j) {
      double s = 0.0;
      for (int k = i; k < p; ++k)
        s += V[static_cast<std::size_t>(k) * p + i] * V[static_cast<std::size_t>(k) * p + j];
      out[static_cast<std::size_t>(i) * p + j] = s;
    }
  }
  inv.mirror_lower();
  return inv;
}

double log_det_from_chol(const CholFactor& L) {
  double s = 0.0;
  for (int i = 0; i < L.dim; ++i) s += std::log(L(i, i));
  return 2.0 * s;
}

namespace {

// One Rayleigh-quotient power iteration run; returns the estimate or nullopt
// when the relative change stays above tol for the whole budget.
std::optional<double> power_iter_run(const DenseSym& A, std::vector<double> v, double tol,
                                     int max_iters) {
  const int p = A.dim();
  std::vector<double> w(p);
  double norm = 0.0;
  for (double x : v) norm += x * x;
  norm = std::sqrt(norm);
  if (norm == 0.0) return std::nullopt;
  for (double& x : v) x /= norm;

  double lambda_prev = 0.0;
  for (int it = 0; it < max_iters; ++it) {
    matvec(A, v, w);
    double lambda = 0.0;
    for (int i = 0; i < p; ++i) lambda += v[i] * w[i];

    double wnorm = 0.0;
    for (double x : w) wnorm += x * x;
    wnorm = std::sqrt(wnorm);
    if (wnorm == 0.0) return 0.0;  // A annihilates v: dominant action is zero

    if (it > 0 && std::abs(lambda - lambda_prev) <= tol * std::abs(lambda)) return lambda;
    lambda_prev = lambda;
    for (int i = 0; i < p; ++i) v[i] = w[i] / wnorm;
  }
  return std::nullopt;
}

}  // namespace

double power_iter_max_eig(const DenseSym& A, double tol, int max_iters) {
  const int p = A.dim();
  if (p == 1) return A(0, 0);

  std::vector<double> start(p, 1.0);
  if (auto r = power_iter_run(A, start, tol, max_iters)) return *r;
  // Possibly a start vector orthogonal to the dominant eigenvector; perturb
  // deterministically and retry once.
  start.assign(p, 1.0);
  start[0] += 1.0;
  if (auto r = power_iter_run(A, start, tol, max_iters)) return *r;
  throw NoConvergence("power iteration did not settle within the iteration budget");
}

double spectral_norm(const DenseSym& A) {
  const int p = A.dim();
  if (p == 1) return std::abs(A(0, 0));

  // Power iteration on A*A without forming the product.
  std::vector<double> v(p, 1.0), w(p), z(p);
  double norm = std::sqrt(static_cast<double>(p));
  for (double& x : v) x /= norm;

  constexpr double tol = 1e-9;
  constexpr int max_iters = 5000;
  double lambda_prev = 0.0;
  for (int restart = 0; restart < 2; ++restart) {
    for (int it = 0; it < max_iters; ++it) {
      matvec(A, v, w);
      matvec(A, w, z);
      double lambda = 0.0;
      for (int i = 0; i < p; ++i) lambda += v[i] * z[i];

      double znorm = 0.0;
      for (double x : z) znorm += x * x;
      znorm = std::sqrt(znorm);
      if (znorm == 0.0) return 0.0;

      if (it > 0 && std::abs(lambda - lambda_prev) <= tol * std::abs(lambda))
        return std::sqrt(std::abs(lambda));
      lambda_prev = lambda;
      for (int i = 0; i < p; ++i) v[i] = z[i] / znorm;
    }
    v.assign(p, 1.0);
    v[0] += 1.0;
    lambda_prev = 0.0;
  }
  throw NoConvergence("spectral norm power iteration did not settle");
}

DenseSym soft_threshold(const DenseSym& A, double tau) {
  const int p = A.dim();
  DenseSym out(p);
  const double* a = A.data();
  double* o = out.data();
  const std::size_t n = A.size();
#pragma omp parallel for schedule(static) if (p >= kOmpMinDim)
  for (std::size_t k = 0; k < n; ++k) {
    const double v = a[k];
    const double m = std::abs(v) - tau;
    o[k] = m > 0.0 ? (v < 0.0 ? -m : m) : 0.0;
  }
  return out;
}

double frob_norm(const DenseSym& A) {
  const int p = A.dim();
  const double* a = A.data();
  std::vector<double> row(p);
#pragma omp parallel for schedule(static) if (p >= kOmpMinDim)
  for (int i = 0; i < p; ++i) {
    double s = 0.0;
    const double* ai = a + static_cast<std::size_t>(i) * p;
    for (int j = 0; j < p; ++j) s += ai[j] * ai[j];
    row[i] = s;
  }
  return std::sqrt(sum_rows(row));
}

double frob_norm_diff(const DenseSym& A, const DenseSym& B) {
  const int p = A.dim();
  const double* a = A.data();
  const double* b = B.data();
  std::vector<double> row(p);
#pragma omp parallel for schedule(static) if (p >= kOmpMinDim)
  for (int i = 0; i < p; ++i) {
    double s = 0.0;
    const std::size_t off = static_cast<std::size_t>(i) * p;
    for (int j = 0; j < p; ++j) {
      const double d = a[off + j] - b[off + j];
      s += d * d;
    }
    row[i] = s;
  }
  return std::sqrt(sum_rows(row));
}

double trace(const DenseSym& A) {
  double s = 0.0;
  for (int i = 0; i < A.dim(); ++i) s += A(i, i);
  return s;
}

double inner(const DenseSym& A, const DenseSym& B) {
  const int p = A.dim();
  const double* a = A.data();
  const double* b = B.data();
  std::vector<double> row(p);
#pragma omp parallel for schedule(static) if (p >= kOmpMinDim)
  for (int i = 0; i < p; ++i) {
    double s = 0.0;
    const std::size_t off = static_cast<std::size_t>(i) * p;
    for (int j = 0; j < p; ++j) s += a[off + j] * b[off + j];
    row[i] = s;
  }
  return sum_rows(row);
}

double abs_sum_quad(const DenseSym& A) {
  const int p = A.dim();
  const double* a = A.data();
  std::vector<double> row(p);
#pragma omp parallel for schedule(static) if (p >= kOmpMinDim)
  for (int i = 0; i < p; ++i) {
    double s = 0.0;
    const double* ai = a + static_cast<std::size_t>(i) * p;
    for (int j = 0; j < p; ++j) s += std::abs(ai[j]);
    row[i] = s;
  }
  return sum_rows(row);
}

int nnz(const DenseSym& A) {
  int count = 0;
  const double* a = A.data();
  const std::size_t n = A.size();
  for (std::size_t k = 0; k < n; ++k)
    if (a[k] != 0.0) ++count;
  return count;
}

void matvec(const DenseSym& A, std::span<const double> x, std::span<double> y) {
  const int p = A.dim();
  const double* a = A.data();
#pragma omp parallel for schedule(static) if (p >= kOmpMinDim)
  for (int i = 0; i < p; ++i) {
    double s = 0.0;
    const double* ai = a + static_cast<std::size_t>(i) * p;
    for (int j = 0; j < p; ++j) s += ai[j] * x[j];
    y[i] = s;
  }
}

Mat matmul(const DenseSym& A, const DenseSym& B) {
  const int p = A.dim();
  Mat C(p, p);
  const double* a = A.data();
  const double* b = B.data();
#pragma omp parallel for schedule(static) if (p >= kOmpMinDim)
  for (int i = 0; i < p; ++i) {
    const double* ai = a + static_cast<std::size_t>(i) * p;
    double* ci = C.a.data() + static_cast<std::size_t>(i) * p;
    for (int k = 0; k < p; ++k) {
      const double aik = ai[k];
      const double* bk = b + static_cast<std::size_t>(k) * p;
      for (int j = 0; j < p; ++j) ci[j] += aik * bk[j];
    }
  }
  return C;
}

DenseSym add_scaled(const DenseSym& A, const DenseSym& B, double s) {
  const int p = A.dim();
  DenseSym out(p);
  const double* a = A.data();
  const double* b = B.data();
  double* o = out.data();
  const std::size_t n = A.size();
#pragma omp parallel for schedule(static) if (p >= kOmpMinDim)
  for (std::size_t k = 0; k < n; ++k) o[k] = a[k] + s * b[k];
  return out;
}

DenseSym shift_diag(const DenseSym& A, double s) {
  DenseSym out = A;
  double* o = out.data();
  const int p = A.dim();
  for (int i = 0; i < p; ++i) o[static_cast<std::size_t>(i) * p + i] += s;
  return out;
}

double max_abs_row_sum(const DenseSym& A) {
  const int p = A.dim();
  const double* a = A.data();
  double best = 0.0;
  for (int i = 0; i < p; ++i) {
    double s = 0.0;
    const double* ai = a + static_cast<std::size_t>(i) * p;
    for (int j = 0; j < p; ++j) s += std::abs(ai[j]);
    if (s > best) best = s;
  }
  return best;
}

}  // namespace gista
