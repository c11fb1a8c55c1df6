// Timing comparison of the OpenMP kernels against their serial reference
// twins, plus an end-to-end solve. Run manually:
//
//   ./bench_kernels [p1 p2 ...]        (default sizes: 128 256 512)

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "gista/datagen.hpp"
#include "gista/linalg.hpp"
#include "gista/linalg_ref.hpp"
#include "gista/rng.hpp"
#include "gista/solver.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double time_median_ms(const std::function<void()>& fn, int reps) {
  std::vector<double> samples;
  samples.reserve(reps);
  for (int r = 0; r < reps; ++r) {
    const auto t0 = Clock::now();
    fn();
    const auto t1 = Clock::now();
    samples.push_back(std::chrono::duration<double, std::milli>(t1 - t0).count());
  }
  std::sort(samples.begin(), samples.end());
  return samples[samples.size() / 2];
}

gista::DenseSym random_spd(int p, gista::SplitMix64& rng) {
  gista::DenseSym a(p);
  for (int i = 0; i < p; ++i)
    for (int j = i + 1; j < p; ++j) a.set_sym(i, j, rng.uniform(-1.0, 1.0));
  // Diagonal dominance keeps it comfortably PD.
  for (int i = 0; i < p; ++i) a.set_sym(i, i, static_cast<double>(p));
  return a;
}

void report(const char* op, int p, double serial_ms, double parallel_ms, double max_diff) {
  std::printf("%-16s p=%-5d serial %9.3f ms   parallel %9.3f ms   speedup %5.2fx   max|diff| %.3g\n",
              op, p, serial_ms, parallel_ms, serial_ms / parallel_ms, max_diff);
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> sizes;
  for (int i = 1; i < argc; ++i) sizes.push_back(std::atoi(argv[i]));
  if (sizes.empty()) sizes = {128, 256, 512};

#ifdef _OPENMP
  std::printf("threads: %d\n", omp_get_max_threads());
#else
  std::printf("threads: 1 (compiled without OpenMP)\n");
#endif

  gista::SplitMix64 rng(20240901);
  for (int p : sizes) {
    const gista::DenseSym A = random_spd(p, rng);
    const gista::DenseSym B = random_spd(p, rng);
    const int reps = p <= 256 ? 7 : 3;

    {
      gista::CholFactor ls, lp;
      const double ts = time_median_ms([&] { ls = *gista::ref::cholesky(A); }, reps);
      const double tp = time_median_ms([&] { lp = *gista::cholesky(A); }, reps);
      double d = 0.0;
      for (std::size_t k = 0; k < ls.lower.size(); ++k)
        d = std::max(d, std::abs(ls.lower[k] - lp.lower[k]));
      report("cholesky", p, ts, tp, d);

      gista::DenseSym is, ip;
      const double ts2 = time_median_ms([&] { is = gista::ref::inverse_from_chol(ls); }, reps);
      const double tp2 = time_median_ms([&] { ip = gista::inverse_from_chol(lp); }, reps);
      report("inverse", p, ts2, tp2, gista::frob_norm_diff(is, ip));
    }
    {
      gista::Mat cs, cp;
      const double ts = time_median_ms([&] { cs = gista::ref::matmul(A, B); }, reps);
      const double tp = time_median_ms([&] { cp = gista::matmul(A, B); }, reps);
      double d = 0.0;
      for (std::size_t k = 0; k < cs.a.size(); ++k) d = std::max(d, std::abs(cs.a[k] - cp.a[k]));
      report("matmul", p, ts, tp, d);
    }
    {
      gista::DenseSym ss, sp2;
      const double ts = time_median_ms([&] { ss = gista::ref::soft_threshold(A, 0.3); }, reps);
      const double tp = time_median_ms([&] { sp2 = gista::soft_threshold(A, 0.3); }, reps);
      report("soft_threshold", p, ts, tp, gista::frob_norm_diff(ss, sp2));
    }
    {
      double ns = 0.0, np = 0.0;
      const double ts = time_median_ms([&] { ns = gista::ref::frob_norm(A); }, reps);
      const double tp = time_median_ms([&] { np = gista::frob_norm(A); }, reps);
      report("frob_norm", p, ts, tp, std::abs(ns - np));
    }
    std::printf("\n");
  }

  // End-to-end: one solve on a generated instance.
  {
    const int p = sizes.back();
    const gista::SyntheticModel model = gista::gen_model({p, 0.97, 7});
    const gista::SampleResult data = gista::sample_data(model, p + p / 5, 11);
    const gista::ProblemInstance P{data.S, 0.1};
    gista::SolverConfig cfg;
    gista::SolveResult res;
    const double tms = time_median_ms([&] { res = gista::solve(P, cfg); }, 1);
    std::printf("solve            p=%-5d %9.3f ms   iterations %d   gap %.3g\n", p, tms,
                res.iterations, res.gap);
  }
  return 0;
}
