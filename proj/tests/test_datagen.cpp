#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "gista/datagen.hpp"
#include "gista/linalg.hpp"
#include "gista/oracle.hpp"
#include "gista/solver.hpp"
#include "testutil.hpp"

using namespace gista;

TEST_CASE("full sparsity degenerates to the identity") {
  const SyntheticModel m = gen_model({10, 1.0, 7});
  CHECK(testutil::max_abs_diff(m.omega, DenseSym::identity(10)) == 0.0);
  CHECK(m.nnz_frac == 0.0);
}

TEST_CASE("generated precision matrices have unit smallest eigenvalue") {
  for (std::uint64_t seed : {1ULL, 17ULL, 23456ULL}) {
    const SyntheticModel m = gen_model({24, 0.8, seed});
    const auto eig = oracle::jacobi_eigen(m.omega).eigenvalues;
    CHECK(eig.front() == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(cholesky(m.omega).has_value());

    // sigma really is the inverse.
    const Mat prod = matmul(m.omega, m.sigma);
    double err = 0.0;
    for (int i = 0; i < 24; ++i)
      for (int j = 0; j < 24; ++j) {
        const double d = prod(i, j) - (i == j ? 1.0 : 0.0);
        err += d * d;
      }
    CHECK(std::sqrt(err) < 1e-8);
  }
}

TEST_CASE("generation is deterministic in the seed") {
  const SyntheticModel a = gen_model({15, 0.9, 77});
  const SyntheticModel b = gen_model({15, 0.9, 77});
  CHECK(a.omega == b.omega);
  CHECK(a.nnz_frac == b.nnz_frac);

  const SyntheticModel c = gen_model({15, 0.9, 78});
  CHECK(testutil::max_abs_diff(a.omega, c.omega) > 0.0);
}

TEST_CASE("off-diagonal sparsity concentrates at the target probability") {
  // p = 500 exercises the shifted-power-iteration branch as well. With
  // p(p-1)/2 = 124750 Bernoulli(0.03) draws, 3 sigma on the nonzero
  // fraction is about 1.45e-3.
  const SyntheticModel m = gen_model({500, 0.97, 313});
  const double trials = 500.0 * 499.0 / 2.0;
  const double sigma3 = 3.0 * std::sqrt(0.03 * 0.97 / trials);
  CHECK(std::abs(m.nnz_frac - 0.03) <= sigma3);

  int off_nnz = 0;
  for (int i = 0; i < 500; ++i)
    for (int j = 0; j < 500; ++j)
      if (i != j && m.omega(i, j) != 0.0) ++off_nnz;
  CHECK(m.nnz_frac == doctest::Approx(off_nnz / (500.0 * 499.0)).epsilon(1e-12));
}

TEST_CASE("the sample covariance converges to sigma in the large-n limit") {
  const SyntheticModel m = gen_model({5, 0.5, 42});
  const SampleResult s = sample_data(m, 200000, 43);
  CHECK(frob_norm_diff(s.S, m.sigma) <= 0.05 * frob_norm(m.sigma));
}

TEST_CASE("fewer samples than dimensions forces rank deficiency") {
  const int p = 12;
  const int n = 5;
  const SyntheticModel m = gen_model({p, 0.7, 11});
  const SampleResult s = sample_data(m, n, 12);
  CHECK(s.X.rows == n);
  CHECK(s.X.cols == p);

  const auto eig = oracle::jacobi_eigen(s.S).eigenvalues;
  int near_zero = 0;
  for (double lam : eig)
    if (std::abs(lam) <= 1e-8) ++near_zero;
  CHECK(near_zero >= p - n);
  CHECK_FALSE(cholesky(s.S).has_value());
}

TEST_CASE("sampling is deterministic in the seed") {
  const SyntheticModel m = gen_model({6, 0.5, 5});
  const SampleResult a = sample_data(m, 40, 9);
  const SampleResult b = sample_data(m, 40, 9);
  CHECK(a.S == b.S);
  CHECK(a.X.a == b.X.a);
}

TEST_CASE("stronger penalties give sparser estimates") {
  const SyntheticModel m = gen_model({30, 0.9, 2029});
  const SampleResult s = sample_data(m, 60, 2030);

  SolverConfig cfg;
  cfg.tol = 1e-7;
  int prev_nnz = 30 * 30 + 1;
  for (double rho : {0.1, 0.25, 0.5}) {
    const SolveResult res = solve({s.S, rho}, cfg);
    REQUIRE(res.termination == Termination::GapReached);
    const int count = nnz(res.theta_star);
    CHECK(count <= prev_nnz);
    prev_nnz = count;
  }
}
