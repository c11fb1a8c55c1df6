#pragma once

#include <cassert>
#include <cstddef>
#include <span>
#include <vector>

namespace gista {

/// General dense row-major matrix (used for data samples, test products,
/// and CSV I/O; symmetric quantities live in DenseSym).
struct Mat {
  int rows = 0;
  int cols = 0;
  std::vector<double> a;

  Mat() = default;
  Mat(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, 0.0) {}

  double operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }
  double& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
};

/// Dense symmetric p x p matrix with both triangles materialized, so reads
/// of (i,j) and (j,i) are bit-identical. Builders that fill one triangle
/// must call mirror_lower() before handing the value out.
class DenseSym {
 public:
  DenseSym() = default;
  explicit DenseSym(int p) : p_(p), a_(static_cast<std::size_t>(p) * p, 0.0) { assert(p >= 1); }

  static DenseSym identity(int p) {
    DenseSym m(p);
    for (int i = 0; i < p; ++i) m.a_[static_cast<std::size_t>(i) * p + i] = 1.0;
    return m;
  }

  static DenseSym diag(std::span<const double> d) {
    DenseSym m(static_cast<int>(d.size()));
    for (int i = 0; i < m.p_; ++i) m.a_[static_cast<std::size_t>(i) * m.p_ + i] = d[i];
    return m;
  }

  int dim() const { return p_; }

  double operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * p_ + j]; }

  /// Write both (i,j) and (j,i).
  void set_sym(int i, int j, double v) {
    a_[static_cast<std::size_t>(i) * p_ + j] = v;
    a_[static_cast<std::size_t>(j) * p_ + i] = v;
  }

  /// Copy the lower triangle onto the upper one.
  void mirror_lower() {
    for (int i = 0; i < p_; ++i)
      for (int j = i + 1; j < p_; ++j)
        a_[static_cast<std::size_t>(i) * p_ + j] = a_[static_cast<std::size_t>(j) * p_ + i];
  }

  double* data() { return a_.data(); }
  const double* data() const { return a_.data(); }
  std::size_t size() const { return a_.size(); }

  bool operator==(const DenseSym&) const = default;

 private:
  int p_ = 0;
  std::vector<double> a_;
};

/// Lower-triangular Cholesky factor; strictly positive diagonal by
/// construction (see cholesky()).
struct CholFactor {
  int dim = 0;
  std::vector<double> lower;  // row-major p x p, strictly-upper part zero

  double operator()(int i, int j) const { return lower[static_cast<std::size_t>(i) * dim + j]; }
};

}  // namespace gista
