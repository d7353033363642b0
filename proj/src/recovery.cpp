#include "hsbm/recovery.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <ostream>
#include <string>

#include "hsbm/kernels.hpp"

namespace hsbm {

std::vector<int> candidate_set(const Projector& p, int v, int s) {
  const int n = p.matrix.dim();
  if (s < 1 || s > n) throw ParameterError("candidate set size out of range");
  if (v < 0 || v >= n) throw ParameterError("column index out of range");
  return kernels::candidate_indices(p.matrix, v, s);
}

BestCandidate best_candidate(const Projector& p, int s) {
  const int n = p.matrix.dim();
  if (s < 1 || s > n) throw ParameterError("candidate set size out of range");
  const std::vector<double> norms = kernels::candidate_norms(p.matrix, s);
  int best = 0;
  for (int v = 1; v < n; ++v) {
    if (norms[v] > norms[best]) best = v;
  }
  BestCandidate out;
  out.column = best;
  out.set = kernels::candidate_indices(p.matrix, best, s);
  out.norm = norms[best];
  return out;
}

namespace {

// Top s vertices by (count desc, index asc), returned ascending.
std::vector<int> top_by_count(const std::vector<std::int64_t>& counts, int s) {
  const int n = static_cast<int>(counts.size());
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  const auto greater = [&counts](int a, int b) {
    if (counts[a] != counts[b]) return counts[a] > counts[b];
    return a < b;
  };
  if (s < n) {
    std::nth_element(order.begin(), order.begin() + s, order.end(), greater);
    order.resize(s);
  }
  std::sort(order.begin(), order.end());
  return order;
}

struct RefineOutcome {
  std::vector<int> cluster;
  std::int64_t min_selected = -1;
  std::int64_t max_excluded = -1;
};

RefineOutcome refine_with_stats(const UniformHypergraph& h, const std::vector<int>& w, int s) {
  const std::vector<std::int64_t> counts = incident_counts_all(h, w);
  RefineOutcome out;
  out.cluster = top_by_count(counts, s);
  std::vector<std::uint8_t> selected(counts.size(), 0);
  for (int v : out.cluster) selected[v] = 1;
  out.min_selected = std::numeric_limits<std::int64_t>::max();
  out.max_excluded = -1;
  for (std::size_t v = 0; v < counts.size(); ++v) {
    if (selected[v]) {
      out.min_selected = std::min(out.min_selected, counts[v]);
    } else {
      out.max_excluded = std::max(out.max_excluded, counts[v]);
    }
  }
  if (out.cluster.empty()) out.min_selected = -1;
  return out;
}

int best_overlap(const std::vector<int>& vertices, const Partition& truth) {
  std::vector<int> per_cluster(truth.k, 0);
  for (int v : vertices) ++per_cluster[truth.labels[v]];
  return *std::max_element(per_cluster.begin(), per_cluster.end());
}

}  // namespace

std::vector<int> refine_cluster(const UniformHypergraph& h, const std::vector<int>& w, int s) {
  if (s < 1 || s > h.vertex_count()) throw ParameterError("cluster size out of range");
  return refine_with_stats(h, w, s).cluster;
}

RecoveryResult recover(const UniformHypergraph& h, int k, int s, const Partition* ground_truth,
                       std::optional<int> rank_override) {
  const int n = h.vertex_count();
  if (k < 1 || s < 1 || static_cast<long long>(k) * s != n) {
    throw ParameterError("recover: need n = k*s, got n=" + std::to_string(n) +
                         ", k=" + std::to_string(k) + ", s=" + std::to_string(s));
  }
  if (n % s != 0) throw ParameterError("recover: n not divisible by s");
  if (rank_override && *rank_override < 1) {
    throw ParameterError("recover: rank override must be positive");
  }

  RecoveryResult result;
  result.partition.k = k;
  result.partition.labels.assign(n, -1);

  UniformHypergraph current = h;
  std::vector<int> to_orig(n);
  std::iota(to_orig.begin(), to_orig.end(), 0);

  for (int iteration = 1; iteration <= k; ++iteration) {
    const int remaining_clusters = current.vertex_count() / s;
    IterationTrace trace;
    trace.iteration = iteration;

    if (remaining_clusters == 1) {
      trace.direct = true;
      trace.candidate_norm = std::numeric_limits<double>::quiet_NaN();
      trace.candidate_set = to_orig;
      trace.recovered = to_orig;
      trace.chosen_column = to_orig.front();
      if (ground_truth) trace.overlap = best_overlap(trace.recovered, *ground_truth);
      for (int v : trace.recovered) result.partition.labels[v] = iteration - 1;
      result.traces.push_back(std::move(trace));
      break;
    }

    const int rank = rank_override ? std::min(*rank_override, current.vertex_count())
                                   : remaining_clusters;
    const SymmetricMatrix adjacency = adjacency_matrix(current);
    const EigenSystem sys = eig_sym(adjacency);
    trace.gap_nonpositive =
        rank < current.vertex_count() && !(sys.values[rank - 1] > sys.values[rank]);
    const Projector projector = dominant_projector(sys, rank);

    BestCandidate candidate = best_candidate(projector, s);
    trace.chosen_column = to_orig[candidate.column];
    trace.candidate_norm = candidate.norm;

    RefineOutcome refined = refine_with_stats(current, candidate.set, s);
    trace.min_count_selected = refined.min_selected;
    trace.max_count_excluded = refined.max_excluded;

    trace.candidate_set.reserve(candidate.set.size());
    for (int v : candidate.set) trace.candidate_set.push_back(to_orig[v]);
    std::sort(trace.candidate_set.begin(), trace.candidate_set.end());
    trace.recovered.reserve(refined.cluster.size());
    for (int v : refined.cluster) trace.recovered.push_back(to_orig[v]);
    std::sort(trace.recovered.begin(), trace.recovered.end());
    if (ground_truth) trace.overlap = best_overlap(trace.candidate_set, *ground_truth);

    for (int v : trace.recovered) result.partition.labels[v] = iteration - 1;

    std::vector<std::uint8_t> remove(current.vertex_count(), 0);
    for (int v : refined.cluster) remove[v] = 1;
    std::vector<int> keep;
    keep.reserve(current.vertex_count() - s);
    for (int v = 0; v < current.vertex_count(); ++v) {
      if (!remove[v]) keep.push_back(v);
    }
    result.traces.push_back(std::move(trace));

    InducedSubhypergraph sub = induced_subhypergraph(current, keep);
    std::vector<int> next_to_orig(sub.to_parent.size());
    for (std::size_t i = 0; i < sub.to_parent.size(); ++i) {
      next_to_orig[i] = to_orig[sub.to_parent[i]];
    }
    current = std::move(sub.hypergraph);
    to_orig = std::move(next_to_orig);
  }

  if (ground_truth) {
    result.exact = compare_partitions(result.partition, *ground_truth).exact;
  }
  return result;
}

Partition counting_recover(const UniformHypergraph& h, int s) {
  const int n = h.vertex_count();
  if (s < 1 || n % s != 0) {
    throw ParameterError("counting_recover: n=" + std::to_string(n) +
                         " not divisible by s=" + std::to_string(s));
  }
  const std::vector<std::int64_t> counts = kernels::adjacency_counts(h);
  const auto pair_count = [&counts, n](int u, int v) {
    return (u < v) ? counts[static_cast<std::size_t>(u) * n + v]
                   : counts[static_cast<std::size_t>(v) * n + u];
  };

  Partition partition;
  partition.k = n / s;
  partition.labels.assign(n, -1);
  int next_label = 0;
  std::vector<int> pool;
  for (int v = 0; v < n; ++v) {
    if (partition.labels[v] >= 0) continue;
    pool.clear();
    for (int u = 0; u < n; ++u) {
      if (u != v && partition.labels[u] < 0) pool.push_back(u);
    }
    const auto greater = [&pair_count, v](int a, int b) {
      const auto ca = pair_count(a, v);
      const auto cb = pair_count(b, v);
      if (ca != cb) return ca > cb;
      return a < b;
    };
    const int take = s - 1;
    if (take < static_cast<int>(pool.size())) {
      std::nth_element(pool.begin(), pool.begin() + take, pool.end(), greater);
      pool.resize(take);
    }
    partition.labels[v] = next_label;
    for (int u : pool) partition.labels[u] = next_label;
    ++next_label;
  }
  partition.k = next_label;
  return partition;
}

namespace {

constexpr std::int64_t kInf64 = std::numeric_limits<std::int64_t>::max() / 4;

// O(k^3) assignment on a square cost matrix; returns per-row column choices.
std::vector<int> hungarian_min_assignment(const std::vector<std::vector<std::int64_t>>& cost) {
  const int n = static_cast<int>(cost.size());
  std::vector<std::int64_t> u(n + 1, 0), v(n + 1, 0);
  std::vector<int> match(n + 1, 0), way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    match[0] = i;
    int j0 = 0;
    std::vector<std::int64_t> minv(n + 1, kInf64);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const int i0 = match[j0];
      int j1 = 0;
      std::int64_t delta = kInf64;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const std::int64_t cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[match[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (match[j0] != 0);
    do {
      const int j1 = way[j0];
      match[j0] = match[j1];
      j0 = j1;
    } while (j0);
  }
  std::vector<int> row_to_col(n, -1);
  for (int j = 1; j <= n; ++j) {
    if (match[j] > 0) row_to_col[match[j] - 1] = j - 1;
  }
  return row_to_col;
}

}  // namespace

ComparisonResult compare_partitions(const Partition& a, const Partition& b) {
  if (a.n() != b.n()) throw ParameterError("compare_partitions: vertex count mismatch");
  if (a.k != b.k) throw ParameterError("compare_partitions: cluster count mismatch");
  const int n = a.n();
  const int k = a.k;

  std::vector<std::vector<std::int64_t>> overlap(k, std::vector<std::int64_t>(k, 0));
  std::vector<std::int64_t> size_a(k, 0);
  for (int v = 0; v < n; ++v) {
    ++overlap[a.labels[v]][b.labels[v]];
    ++size_a[a.labels[v]];
  }

  // Exactness: each cluster of a maps onto its majority cluster of b with full
  // overlap, and the map is a bijection.
  bool exact = true;
  std::vector<char> hit(k, 0);
  for (int i = 0; i < k && exact; ++i) {
    int best = 0;
    for (int j = 1; j < k; ++j) {
      if (overlap[i][j] > overlap[i][best]) best = j;
    }
    if (overlap[i][best] != size_a[i] || hit[best]) {
      exact = false;
    } else {
      hit[best] = 1;
    }
  }

  std::int64_t max_entry = 0;
  for (const auto& row : overlap) {
    for (std::int64_t o : row) max_entry = std::max(max_entry, o);
  }
  std::vector<std::vector<std::int64_t>> cost(k, std::vector<std::int64_t>(k));
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) cost[i][j] = max_entry - overlap[i][j];
  }
  const std::vector<int> assign = hungarian_min_assignment(cost);
  std::int64_t agreement = 0;
  for (int i = 0; i < k; ++i) agreement += overlap[i][assign[i]];

  ComparisonResult result;
  result.exact = exact;
  result.misclassified = static_cast<int>(n - agreement);
  return result;
}

EpsilonWindow epsilon_window(const HsbmParams& params, Regime regime) {
  params.validate();
  const double gap = binomial(params.s - 2, params.d - 2) * (params.p - params.q) * params.s;
  EpsilonWindow window;
  window.regime = regime;
  if (regime == Regime::dense) {
    const double bound = concentration_bound(params.n, params.d);
    const double denominator = gap - 2.0 * bound;
    window.lower = denominator > 0.0 ? bound / denominator
                                     : std::numeric_limits<double>::infinity();
    window.upper = std::min(1.0 / 12.0, (params.p - params.q) / (32.0 * params.d));
    window.feasible = denominator > 0.0 && window.lower <= window.upper;
  } else {
    const double sparse_bound =
        2.0 * params.d * std::sqrt(std::pow(static_cast<double>(params.n), params.d - 1) * params.p);
    const double denominator = gap - 2.0 * sparse_bound;
    const double concentration_floor = denominator > 0.0
                                           ? sparse_bound / denominator
                                           : std::numeric_limits<double>::infinity();
    const double probability_floor =
        std::sqrt(3.0 * std::log(static_cast<double>(params.n)) /
                  binomial(params.s - 1, params.d - 1));
    window.lower = std::max(concentration_floor, probability_floor);
    window.upper = (params.p - params.q) / (32.0 * params.d);
    window.feasible = denominator > 0.0 && window.lower < window.upper;
  }
  return window;
}

bool trace_meets_success_conditions(const IterationTrace& trace, const HsbmParams& params,
                                    double epsilon) {
  if (trace.direct) return false;
  if (trace.overlap < 0) return false;  // needs ground truth
  const double s = params.s;
  const double scale = binomial(params.s, params.d - 1);
  const double member_floor = (params.p - 16.0 * params.d * epsilon) * scale;
  const double outsider_ceiling = (params.q + 16.0 * params.d * epsilon) * scale;
  if (!(member_floor > outsider_ceiling)) return false;
  if (!(trace.candidate_norm >= (1.0 - 2.0 * epsilon) * std::sqrt(s))) return false;
  if (!(trace.overlap >= (1.0 - 6.0 * epsilon) * s)) return false;
  if (!(static_cast<double>(trace.min_count_selected) >= member_floor)) return false;
  if (!(static_cast<double>(trace.max_count_excluded) <= outsider_ceiling)) return false;
  return true;
}

bool counting_condition(const HsbmParams& params) {
  const double lhs = binomial(params.s - 2, params.d - 2) * (params.p - params.q);
  const double rhs =
      std::sqrt(6.0 * binomial(params.n - 2, params.d - 2) * std::log(static_cast<double>(params.n)));
  return lhs > rhs;
}

void write_traces(std::ostream& os, std::span<const IterationTrace> traces,
                  std::span<const std::pair<std::string, std::string>> comments) {
  for (const auto& [key, value] : comments) os << "# " << key << '=' << value << '\n';
  char buf[40];
  for (const IterationTrace& trace : traces) {
    std::snprintf(buf, sizeof buf, "%.17g", trace.candidate_norm);
    os << "iter=" << trace.iteration << " mode=" << (trace.direct ? "direct" : "spectral")
       << " v_star=" << trace.chosen_column + 1 << " norm=" << buf
       << " overlap=" << trace.overlap << " min_count_in=" << trace.min_count_selected
       << " max_count_out=" << trace.max_count_excluded
       << " gap_nonpositive=" << (trace.gap_nonpositive ? 1 : 0) << " cluster=";
    for (std::size_t i = 0; i < trace.recovered.size(); ++i) {
      if (i) os << ',';
      os << trace.recovered[i] + 1;
    }
    os << '\n';
  }
}

}  // namespace hsbm
