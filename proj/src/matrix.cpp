#include "hsbm/matrix.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace hsbm {

SymmetricMatrix SymmetricMatrix::identity(int n) {
  SymmetricMatrix m(n);
  for (int i = 0; i < n; ++i) m.set(i, i, 1.0);
  return m;
}

SymmetricMatrix& SymmetricMatrix::operator-=(const SymmetricMatrix& rhs) {
  if (rhs.n_ != n_) throw std::invalid_argument("matrix dimension mismatch");
  for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= rhs.a_[i];
  return *this;
}

SymmetricMatrix& SymmetricMatrix::operator+=(const SymmetricMatrix& rhs) {
  if (rhs.n_ != n_) throw std::invalid_argument("matrix dimension mismatch");
  for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += rhs.a_[i];
  return *this;
}

SymmetricMatrix& SymmetricMatrix::operator*=(double scale) {
  for (double& v : a_) v *= scale;
  return *this;
}

double max_abs(const SymmetricMatrix& x) {
  double m = 0.0;
  const int n = x.dim();
  for (int i = 0; i < n; ++i) {
    for (double v : x.row(i)) m = std::max(m, std::fabs(v));
  }
  return m;
}

double max_abs_diff(const SymmetricMatrix& a, const SymmetricMatrix& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("matrix dimension mismatch");
  double m = 0.0;
  const int n = a.dim();
  const double* pa = a.data();
  const double* pb = b.data();
  for (std::size_t i = 0; i < static_cast<std::size_t>(n) * n; ++i) {
    m = std::max(m, std::fabs(pa[i] - pb[i]));
  }
  return m;
}

double frobenius_norm(const SymmetricMatrix& x) {
  double sum = 0.0;
  const int n = x.dim();
  const double* p = x.data();
  for (std::size_t i = 0; i < static_cast<std::size_t>(n) * n; ++i) sum += p[i] * p[i];
  return std::sqrt(sum);
}

double trace(const SymmetricMatrix& x) {
  double t = 0.0;
  for (int i = 0; i < x.dim(); ++i) t += x(i, i);
  return t;
}

std::vector<double> multiply(const SymmetricMatrix& a, const SymmetricMatrix& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("matrix dimension mismatch");
  const int n = a.dim();
  std::vector<double> c(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int l = 0; l < n; ++l) {
      const double ail = a(i, l);
      if (ail == 0.0) continue;
      const double* brow = b.data() + static_cast<std::size_t>(l) * n;
      double* crow = c.data() + static_cast<std::size_t>(i) * n;
      for (int j = 0; j < n; ++j) crow[j] += ail * brow[j];
    }
  }
  return c;
}

void write_matrix_csv(std::ostream& os, const SymmetricMatrix& x) {
  const int n = x.dim();
  char buf[40];
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      std::snprintf(buf, sizeof buf, "%.17e", x(i, j));
      os << buf;
      if (j + 1 < n) os << ',';
    }
    os << '\n';
  }
}

}  // namespace hsbm
