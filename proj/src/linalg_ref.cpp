#include "gista/linalg_ref.hpp"

#include <cmath>

namespace gista::ref {

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
    if (d <= 0.0) return std::nullopt;
    const double djj = std::sqrt(d);
    L[static_cast<std::size_t>(j) * p + j] = djj;
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

  std::vector<double> V(static_cast<std::size_t>(p) * p, 0.0);
  for (int c = 0; c < p; ++c) {
    for (int i = c; i < p; ++i) {
      double s = (i == c) ? 1.0 : 0.0;
      const double* li = l + static_cast<std::size_t>(i) * p;
      for (int k = c; k < i; ++k) s -= li[k] * V[static_cast<std::size_t>(k) * p + c];
      V[static_cast<std::size_t>(i) * p + c] = s / li[i];
    }
  }

  DenseSym inv(p);
  double* out = inv.data();
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

DenseSym soft_threshold(const DenseSym& A, double tau) {
  const int p = A.dim();
  DenseSym out(p);
  const double* a = A.data();
  double* o = out.data();
  const std::size_t n = A.size();
  for (std::size_t k = 0; k < n; ++k) {
    const double v = a[k];
    const double m = std::abs(v) - tau;
    o[k] = m > 0.0 ? (v < 0.0 ? -m : m) : 0.0;
  }
  return out;
}

double frob_norm(const DenseSym& A) {
  double s = 0.0;
  const double* a = A.data();
  const std::size_t n = A.size();
  for (std::size_t k = 0; k < n; ++k) s += a[k] * a[k];
  return std::sqrt(s);
}

double inner(const DenseSym& A, const DenseSym& B) {
  double s = 0.0;
  const double* a = A.data();
  const double* b = B.data();
  const std::size_t n = A.size();
  for (std::size_t k = 0; k < n; ++k) s += a[k] * b[k];
  return s;
}

void matvec(const DenseSym& A, std::span<const double> x, std::span<double> y) {
  const int p = A.dim();
  const double* a = A.data();
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

}  // namespace gista::ref
