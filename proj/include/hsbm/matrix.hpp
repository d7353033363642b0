#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

namespace hsbm {

// Dense real symmetric matrix, row-major, both triangles stored; set() keeps
// the mirror exact by construction.
class SymmetricMatrix {
 public:
  SymmetricMatrix() = default;
  explicit SymmetricMatrix(int n) : n_(n), a_(static_cast<std::size_t>(n) * n, 0.0) {}

  static SymmetricMatrix identity(int n);

  int dim() const { return n_; }

  double operator()(int i, int j) const { return a_[index(i, j)]; }

  void set(int i, int j, double v) {
    a_[index(i, j)] = v;
    a_[index(j, i)] = v;
  }

  void add(int i, int j, double v) {
    a_[index(i, j)] += v;
    if (i != j) a_[index(j, i)] += v;
  }

  std::span<const double> row(int i) const { return {a_.data() + index(i, 0), static_cast<std::size_t>(n_)}; }
  double* data() { return a_.data(); }
  const double* data() const { return a_.data(); }

  SymmetricMatrix& operator-=(const SymmetricMatrix& rhs);
  SymmetricMatrix& operator+=(const SymmetricMatrix& rhs);
  SymmetricMatrix& operator*=(double scale);

  friend SymmetricMatrix operator-(SymmetricMatrix lhs, const SymmetricMatrix& rhs) {
    lhs -= rhs;
    return lhs;
  }

 private:
  std::size_t index(int i, int j) const { return static_cast<std::size_t>(i) * n_ + j; }

  int n_ = 0;
  std::vector<double> a_;
};

double max_abs(const SymmetricMatrix& x);
double max_abs_diff(const SymmetricMatrix& a, const SymmetricMatrix& b);
double frobenius_norm(const SymmetricMatrix& x);
double trace(const SymmetricMatrix& x);

// Symmetric product A*B (not symmetric in general); used for invariant checks.
std::vector<double> multiply(const SymmetricMatrix& a, const SymmetricMatrix& b);

// Row-major full-precision scientific-notation dump for debugging.
void write_matrix_csv(std::ostream& os, const SymmetricMatrix& x);

}  // namespace hsbm
