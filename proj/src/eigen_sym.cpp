#include "hsbm/eigen_sym.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace hsbm {

namespace {

// Householder reduction to symmetric tridiagonal form with accumulation of
// the orthogonal transform in v (row-major n*n, columns are the transform).
void tred2(std::vector<double>& v, int n, std::vector<double>& d, std::vector<double>& e) {
  auto at = [&v, n](int r, int c) -> double& { return v[static_cast<std::size_t>(r) * n + c]; };

  for (int j = 0; j < n; ++j) d[j] = at(n - 1, j);

  for (int i = n - 1; i > 0; --i) {
    double scale = 0.0;
    double h = 0.0;
    for (int k = 0; k < i; ++k) scale += std::fabs(d[k]);
    if (scale == 0.0) {
      e[i] = d[i - 1];
      for (int j = 0; j < i; ++j) {
        d[j] = at(i - 1, j);
        at(i, j) = 0.0;
        at(j, i) = 0.0;
      }
    } else {
      for (int k = 0; k < i; ++k) {
        d[k] /= scale;
        h += d[k] * d[k];
      }
      double f = d[i - 1];
      double g = std::sqrt(h);
      if (f > 0) g = -g;
      e[i] = scale * g;
      h -= f * g;
      d[i - 1] = f - g;
      for (int j = 0; j < i; ++j) e[j] = 0.0;

      for (int j = 0; j < i; ++j) {
        f = d[j];
        at(j, i) = f;
        g = e[j] + at(j, j) * f;
        for (int k = j + 1; k <= i - 1; ++k) {
          g += at(k, j) * d[k];
          e[k] += at(k, j) * f;
        }
        e[j] = g;
      }
      f = 0.0;
      for (int j = 0; j < i; ++j) {
        e[j] /= h;
        f += e[j] * d[j];
      }
      const double hh = f / (h + h);
      for (int j = 0; j < i; ++j) e[j] -= hh * d[j];
      for (int j = 0; j < i; ++j) {
        f = d[j];
        g = e[j];
        for (int k = j; k <= i - 1; ++k) at(k, j) -= f * e[k] + g * d[k];
        d[j] = at(i - 1, j);
        at(i, j) = 0.0;
      }
    }
    d[i] = h;
  }

  for (int i = 0; i < n - 1; ++i) {
    at(n - 1, i) = at(i, i);
    at(i, i) = 1.0;
    const double h = d[i + 1];
    if (h != 0.0) {
      for (int k = 0; k <= i; ++k) d[k] = at(k, i + 1) / h;
      for (int j = 0; j <= i; ++j) {
        double g = 0.0;
        for (int k = 0; k <= i; ++k) g += at(k, i + 1) * at(k, j);
        for (int k = 0; k <= i; ++k) at(k, j) -= g * d[k];
      }
    }
    for (int k = 0; k <= i; ++k) at(k, i + 1) = 0.0;
  }
  for (int j = 0; j < n; ++j) {
    d[j] = at(n - 1, j);
    at(n - 1, j) = 0.0;
  }
  at(n - 1, n - 1) = 1.0;
  e[0] = 0.0;
}

// Implicit-shift QL on the tridiagonal (d, e), rotations applied to v.
void tql2(std::vector<double>& v, int n, std::vector<double>& d, std::vector<double>& e) {
  auto at = [&v, n](int r, int c) -> double& { return v[static_cast<std::size_t>(r) * n + c]; };

  for (int i = 1; i < n; ++i) e[i - 1] = e[i];
  e[n - 1] = 0.0;

  double f = 0.0;
  const double eps = std::ldexp(1.0, -52);
  // Deflation threshold from the global tridiagonal norm. A running maximum
  // underflows to a zero threshold when the leading rows are tiny, and the
  // sweep then rotates through denormal subdiagonals and loses orthogonality.
  double tst1 = 0.0;
  for (int i = 0; i < n; ++i) tst1 = std::max(tst1, std::fabs(d[i]) + std::fabs(e[i]));
  for (int l = 0; l < n; ++l) {
    int iter = 0;
    while (true) {
      // Re-scan the split point every pass: once a subdiagonal entry is
      // negligible the segment must deflate, otherwise later sweeps build
      // rotations from underflowed values and lose orthogonality.
      int m = l;
      while (m < n) {
        if (std::fabs(e[m]) <= eps * tst1) break;
        ++m;
      }
      if (m == l) break;
      if (++iter > 64) throw NumericError("eig_sym: QL iteration failed to converge");

      double g = d[l];
      double p = (d[l + 1] - g) / (2.0 * e[l]);
      double r = std::hypot(p, 1.0);
      if (p < 0) r = -r;
      d[l] = e[l] / (p + r);
      d[l + 1] = e[l] * (p + r);
      const double dl1 = d[l + 1];
      double h = g - d[l];
      for (int i = l + 2; i < n; ++i) d[i] -= h;
      f += h;

      p = d[m];
      double c = 1.0;
      double c2 = c;
      double c3 = c;
      const double el1 = e[l + 1];
      double s = 0.0;
      double s2 = 0.0;
      for (int i = m - 1; i >= l; --i) {
        c3 = c2;
        c2 = c;
        s2 = s;
        g = c * e[i];
        h = c * p;
        r = std::hypot(p, e[i]);
        e[i + 1] = s * r;
        s = e[i] / r;
        c = p / r;
        p = c * d[i] - s * g;
        d[i + 1] = h + s * (c * g + s * d[i]);
        for (int k = 0; k < n; ++k) {
          h = at(k, i + 1);
          at(k, i + 1) = s * at(k, i) + c * h;
          at(k, i) = c * at(k, i) - s * h;
        }
      }
      p = -s * s2 * c3 * el1 * e[l] / dl1;
      e[l] = s * p;
      d[l] = c * p;
    }
    d[l] += f;
    e[l] = 0.0;
  }
}

}  // namespace

EigenSystem eig_sym(const SymmetricMatrix& x) {
  const int n = x.dim();
  EigenSystem sys;
  sys.n = n;
  if (n == 0) return sys;

  sys.vectors.assign(x.data(), x.data() + static_cast<std::size_t>(n) * n);
  for (double v : sys.vectors) {
    if (!std::isfinite(v)) throw NumericError("eig_sym: non-finite entry in input matrix");
  }
  std::vector<double> d(n, 0.0);
  std::vector<double> e(n, 0.0);

  if (n == 1) {
    d[0] = sys.vectors[0];
    sys.vectors[0] = 1.0;
  } else {
    tred2(sys.vectors, n, d, e);
    tql2(sys.vectors, n, d, e);
  }

  // Descending order, stable on ties.
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&d](int a, int b) { return d[a] > d[b]; });

  sys.values.resize(n);
  std::vector<double> sorted(static_cast<std::size_t>(n) * n);
  for (int j = 0; j < n; ++j) {
    sys.values[j] = d[order[j]];
    for (int i = 0; i < n; ++i) {
      sorted[static_cast<std::size_t>(i) * n + j] =
          sys.vectors[static_cast<std::size_t>(i) * n + order[j]];
    }
  }
  sys.vectors = std::move(sorted);
  return sys;
}

double spectral_norm(const SymmetricMatrix& x) {
  if (x.dim() == 0) return 0.0;
  const EigenSystem sys = eig_sym(x);
  return std::max(std::fabs(sys.values.front()), std::fabs(sys.values.back()));
}

double spectral_norm_power_iteration(const SymmetricMatrix& x, double rel_tol,
                                     int max_iterations) {
  const int n = x.dim();
  if (n == 0) return 0.0;
  std::vector<double> vec(n, 1.0 / std::sqrt(static_cast<double>(n)));
  std::vector<double> next(n);
  double norm = 0.0;
  for (int it = 0; it < max_iterations; ++it) {
    for (int i = 0; i < n; ++i) {
      const auto row = x.row(i);
      double sum = 0.0;
      for (int j = 0; j < n; ++j) sum += row[j] * vec[j];
      next[i] = sum;
    }
    double len = 0.0;
    for (double t : next) len += t * t;
    len = std::sqrt(len);
    if (len == 0.0) return 0.0;
    for (int i = 0; i < n; ++i) vec[i] = next[i] / len;
    if (it > 0 && std::fabs(len - norm) <= rel_tol * len) return len;
    norm = len;
  }
  return norm;
}

}  // namespace hsbm
