#pragma once

#include <cmath>
#include <vector>

#include "gista/mat.hpp"
#include "gista/rng.hpp"

namespace testutil {

/// Random symmetric matrix with uniform(-scale, scale) entries.
inline gista::DenseSym random_sym(int p, gista::SplitMix64& rng, double scale = 1.0) {
  gista::DenseSym a(p);
  for (int i = 0; i < p; ++i)
    for (int j = i; j < p; ++j) a.set_sym(i, j, rng.uniform(-scale, scale));
  return a;
}

/// Random SPD matrix: random symmetric shifted to diagonal dominance.
inline gista::DenseSym random_spd(int p, gista::SplitMix64& rng) {
  gista::DenseSym a = random_sym(p, rng);
  for (int i = 0; i < p; ++i) {
    double row = 0.0;
    for (int j = 0; j < p; ++j)
      if (j != i) row += std::abs(a(i, j));
    a.set_sym(i, i, row + 0.5 + rng.uniform01());
  }
  return a;
}

/// SPD matrix with spectrum drawn from [lo, hi] (extremes pinned): start from
/// the diagonal of eigenvalues and conjugate by random plane rotations, which
/// leaves the spectrum in place up to round-off.
inline gista::DenseSym random_spd_spectrum(int p, double lo, double hi,
                                           gista::SplitMix64& rng) {
  std::vector<double> eig(p);
  eig.front() = lo;
  if (p > 1) eig.back() = hi;
  for (int i = 1; i + 1 < p; ++i) eig[i] = rng.uniform(lo, hi);

  gista::Mat a(p, p);
  for (int i = 0; i < p; ++i) a(i, i) = eig[i];

  const int num_rotations = 3 * p;
  for (int r = 0; r < num_rotations; ++r) {
    const int i = static_cast<int>(rng.uniform01() * p);
    int j = static_cast<int>(rng.uniform01() * p);
    if (i == j) j = (j + 1) % p;
    const double t = rng.uniform(0.0, 2.0 * 3.14159265358979323846);
    const double c = std::cos(t);
    const double s = std::sin(t);
    // A <- G^T A G for the Givens rotation G in the (i,j) plane.
    for (int k = 0; k < p; ++k) {
      const double aki = a(k, i);
      const double akj = a(k, j);
      a(k, i) = c * aki - s * akj;
      a(k, j) = s * aki + c * akj;
    }
    for (int k = 0; k < p; ++k) {
      const double aik = a(i, k);
      const double ajk = a(j, k);
      a(i, k) = c * aik - s * ajk;
      a(j, k) = s * aik + c * ajk;
    }
  }

  gista::DenseSym out(p);
  for (int i = 0; i < p; ++i)
    for (int j = i; j < p; ++j) out.set_sym(i, j, 0.5 * (a(i, j) + a(j, i)));
  return out;
}

inline double max_abs_diff(const gista::DenseSym& a, const gista::DenseSym& b) {
  double d = 0.0;
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) d = std::max(d, std::abs(a(i, j) - b(i, j)));
  return d;
}

}  // namespace testutil
