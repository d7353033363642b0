#include "hsbm/kernels.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace hsbm::kernels {

namespace {

int default_workers() {
#ifdef _OPENMP
  return std::max(1, omp_get_max_threads());
#else
  return 1;
#endif
}

std::atomic<int> g_workers{0};  // 0 = uninitialized

}  // namespace

int max_workers() {
  int w = g_workers.load(std::memory_order_relaxed);
  if (w == 0) {
    w = default_workers();
    g_workers.store(w, std::memory_order_relaxed);
  }
  return w;
}

void set_max_workers(int workers) {
  g_workers.store(std::max(1, workers), std::memory_order_relaxed);
}

namespace {
bool use_parallel() {
#ifdef _OPENMP
  return max_workers() > 1;
#else
  return false;
#endif
}
}  // namespace

std::vector<std::int64_t> adjacency_counts_serial(const UniformHypergraph& h) {
  const int n = h.vertex_count();
  const int d = h.uniformity();
  std::vector<std::int64_t> counts(static_cast<std::size_t>(n) * n, 0);
  const std::size_t m = h.edge_count();
  for (std::size_t e = 0; e < m; ++e) {
    const auto edge = h.edge(e);
    for (int a = 0; a < d; ++a) {
      for (int b = a + 1; b < d; ++b) {
        ++counts[static_cast<std::size_t>(edge[a]) * n + edge[b]];
      }
    }
  }
  return counts;
}

// Each thread streams a contiguous slab of the edge list into a private
// count array; the slabs merge in fixed order. Integer sums commute, so the
// result matches the serial pass exactly.
std::vector<std::int64_t> adjacency_counts_parallel(const UniformHypergraph& h) {
  const int n = h.vertex_count();
  const int d = h.uniformity();
  const std::size_t cells = static_cast<std::size_t>(n) * n;
  const auto m = static_cast<std::int64_t>(h.edge_count());
  const int threads = std::min<std::int64_t>(max_workers(), std::max<std::int64_t>(1, m));

  std::vector<std::vector<std::int64_t>> partial(threads);
#pragma omp parallel num_threads(threads)
  {
#ifdef _OPENMP
    const int tid = omp_get_thread_num();
    const int team = omp_get_num_threads();
#else
    const int tid = 0;
    const int team = 1;
#endif
    if (tid < threads) {
      std::vector<std::int64_t>& counts = partial[tid];
      counts.assign(cells, 0);
      const std::int64_t begin = m * tid / std::min(team, threads);
      const std::int64_t end = m * (tid + 1) / std::min(team, threads);
      for (std::int64_t e = begin; e < end; ++e) {
        const auto edge = h.edge(static_cast<std::size_t>(e));
        for (int a = 0; a < d; ++a) {
          for (int b = a + 1; b < d; ++b) {
            ++counts[static_cast<std::size_t>(edge[a]) * n + edge[b]];
          }
        }
      }
    }
  }

  std::vector<std::int64_t> counts = std::move(partial[0]);
  if (counts.empty()) counts.assign(cells, 0);
  for (int t = 1; t < threads; ++t) {
    if (partial[t].empty()) continue;
    for (std::size_t i = 0; i < cells; ++i) counts[i] += partial[t][i];
  }
  return counts;
}

std::vector<std::int64_t> adjacency_counts(const UniformHypergraph& h) {
  return use_parallel() ? adjacency_counts_parallel(h) : adjacency_counts_serial(h);
}

std::vector<std::int64_t> incident_counts_serial(const UniformHypergraph& h,
                                                 const std::vector<std::uint8_t>& in_w) {
  const int n = h.vertex_count();
  std::vector<std::int64_t> counts(n);
  for (int u = 0; u < n; ++u) counts[u] = incident_count_masked(h, u, in_w);
  return counts;
}

std::vector<std::int64_t> incident_counts_parallel(const UniformHypergraph& h,
                                                   const std::vector<std::uint8_t>& in_w) {
  const int n = h.vertex_count();
  std::vector<std::int64_t> counts(n);
#pragma omp parallel for schedule(static) num_threads(max_workers())
  for (int u = 0; u < n; ++u) counts[u] = incident_count_masked(h, u, in_w);
  return counts;
}

std::vector<std::int64_t> incident_counts(const UniformHypergraph& h,
                                          const std::vector<std::uint8_t>& in_w) {
  return use_parallel() ? incident_counts_parallel(h, in_w) : incident_counts_serial(h, in_w);
}

namespace {

// Each (i, j) with i <= j is computed exactly once and mirrored, so serial and
// parallel results match bitwise.
inline void projection_rows(const double* vectors, int n, int r, double* out, int i_begin,
                            int i_end) {
  for (int i = i_begin; i < i_end; ++i) {
    const double* vi = vectors + static_cast<std::size_t>(i) * n;
    for (int j = i; j < n; ++j) {
      const double* vj = vectors + static_cast<std::size_t>(j) * n;
      double sum = 0.0;
      for (int t = 0; t < r; ++t) sum += vi[t] * vj[t];
      out[static_cast<std::size_t>(i) * n + j] = sum;
      out[static_cast<std::size_t>(j) * n + i] = sum;
    }
  }
}

}  // namespace

void rank_r_projection_serial(const double* vectors, int n, int r, double* out) {
  projection_rows(vectors, n, r, out, 0, n);
}

void rank_r_projection_parallel(const double* vectors, int n, int r, double* out) {
  // pass 1 computes the upper triangle with row-local writes; pass 2 mirrors
  // row by row, so threads never share output cache lines
#pragma omp parallel num_threads(max_workers())
  {
#pragma omp for schedule(static, 4) nowait
    for (int i = 0; i < n; ++i) {
      const double* vi = vectors + static_cast<std::size_t>(i) * n;
      double* row = out + static_cast<std::size_t>(i) * n;
      for (int j = i; j < n; ++j) {
        const double* vj = vectors + static_cast<std::size_t>(j) * n;
        double sum = 0.0;
        for (int t = 0; t < r; ++t) sum += vi[t] * vj[t];
        row[j] = sum;
      }
    }
#pragma omp barrier
#pragma omp for schedule(static, 4)
    for (int i = 1; i < n; ++i) {
      double* row = out + static_cast<std::size_t>(i) * n;
      for (int j = 0; j < i; ++j) row[j] = out[static_cast<std::size_t>(j) * n + i];
    }
  }
}

void rank_r_projection(const double* vectors, int n, int r, double* out) {
  if (use_parallel()) {
    rank_r_projection_parallel(vectors, n, r, out);
  } else {
    rank_r_projection_serial(vectors, n, r, out);
  }
}

std::vector<int> candidate_indices(const SymmetricMatrix& p, int v, int s) {
  const int n = p.dim();
  const auto column = p.row(v);  // column v equals row v by symmetry
  std::vector<int> order;
  order.reserve(n - 1);
  for (int u = 0; u < n; ++u) {
    if (u != v) order.push_back(u);
  }
  const auto greater = [&column](int a, int b) {
    if (column[a] != column[b]) return column[a] > column[b];
    return a < b;
  };
  const int take = s - 1;
  if (take < static_cast<int>(order.size())) {
    std::nth_element(order.begin(), order.begin() + take, order.end(), greater);
    order.resize(take);
  }
  order.push_back(v);
  std::sort(order.begin(), order.end());
  return order;
}

double candidate_norm_for_set(const SymmetricMatrix& p, const std::vector<int>& w) {
  const int n = p.dim();
  std::vector<double> t(n, 0.0);
  for (int wv : w) {
    const auto row = p.row(wv);
    for (int u = 0; u < n; ++u) t[u] += row[u];
  }
  double sq = 0.0;
  for (int u = 0; u < n; ++u) sq += t[u] * t[u];
  return std::sqrt(sq);
}

std::vector<double> candidate_norms_serial(const SymmetricMatrix& p, int s) {
  const int n = p.dim();
  std::vector<double> norms(n);
  for (int v = 0; v < n; ++v) {
    norms[v] = candidate_norm_for_set(p, candidate_indices(p, v, s));
  }
  return norms;
}

std::vector<double> candidate_norms_parallel(const SymmetricMatrix& p, int s) {
  const int n = p.dim();
  std::vector<double> norms(n);
#pragma omp parallel for schedule(dynamic, 8) num_threads(max_workers())
  for (int v = 0; v < n; ++v) {
    norms[v] = candidate_norm_for_set(p, candidate_indices(p, v, s));
  }
  return norms;
}

std::vector<double> candidate_norms(const SymmetricMatrix& p, int s) {
  return use_parallel() ? candidate_norms_parallel(p, s) : candidate_norms_serial(p, s);
}

}  // namespace hsbm::kernels

namespace hsbm {

SymmetricMatrix adjacency_matrix(const UniformHypergraph& h) {
  const int n = h.vertex_count();
  const auto counts = kernels::adjacency_counts(h);
  SymmetricMatrix a(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      a.set(i, j, static_cast<double>(counts[static_cast<std::size_t>(i) * n + j]));
    }
  }
  return a;
}

std::vector<std::int64_t> incident_counts_all(const UniformHypergraph& h, std::span<const int> w) {
  return kernels::incident_counts(h, membership_mask(h.vertex_count(), w));
}

}  // namespace hsbm
