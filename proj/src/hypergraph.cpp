#include "hsbm/hypergraph.hpp"

#include <algorithm>
#include <random>
#include <string>

namespace hsbm {

Partition Partition::contiguous(int k, int s) {
  Partition part;
  part.k = k;
  part.labels.resize(static_cast<std::size_t>(k) * s);
  for (int v = 0; v < k * s; ++v) part.labels[v] = v / s;
  return part;
}

std::vector<std::vector<int>> Partition::clusters() const {
  std::vector<std::vector<int>> out(k);
  for (int v = 0; v < n(); ++v) out[labels[v]].push_back(v);
  return out;
}

UniformHypergraph UniformHypergraph::from_canonical_edges(int n, int d,
                                                          std::vector<std::int32_t> flat) {
  UniformHypergraph h;
  h.n_ = n;
  h.d_ = d;
  h.flat_ = std::move(flat);
  h.build_incidence();
  return h;
}

UniformHypergraph UniformHypergraph::validated_edges(int n, int d,
                                                     std::vector<std::int32_t> flat) {
  if (n <= 0) throw ParameterError("vertex count must be positive");
  if (d < 2) throw ParameterError("uniformity d must be at least 2");
  if (flat.size() % d != 0) throw ParameterError("edge list length is not a multiple of d");
  const std::size_t m = flat.size() / d;
  for (std::size_t e = 0; e < m; ++e) {
    const std::int32_t* t = flat.data() + e * d;
    for (int i = 0; i < d; ++i) {
      if (t[i] < 0 || t[i] >= n) {
        throw ParameterError("edge " + std::to_string(e) + " has vertex out of range");
      }
      if (i > 0 && t[i] <= t[i - 1]) {
        throw ParameterError("edge " + std::to_string(e) + " is not strictly ascending");
      }
    }
    if (e > 0) {
      const std::int32_t* prev = flat.data() + (e - 1) * d;
      if (!std::lexicographical_compare(prev, prev + d, t, t + d)) {
        throw ParameterError("edge " + std::to_string(e) + " breaks sorted order or duplicates");
      }
    }
  }
  return from_canonical_edges(n, d, std::move(flat));
}

void UniformHypergraph::build_incidence() {
  inc_offset_.assign(n_ + 1, 0);
  for (std::int32_t v : flat_) ++inc_offset_[v + 1];
  for (int v = 0; v < n_; ++v) inc_offset_[v + 1] += inc_offset_[v];
  incidence_.resize(flat_.size());
  std::vector<std::size_t> cursor(inc_offset_.begin(), inc_offset_.end() - 1);
  const std::size_t m = edge_count();
  for (std::size_t e = 0; e < m; ++e) {
    for (int i = 0; i < d_; ++i) {
      incidence_[cursor[flat_[e * d_ + i]]++] = static_cast<std::int32_t>(e);
    }
  }
}

bool UniformHypergraph::contains(std::span<const std::int32_t> edge) const {
  if (static_cast<int>(edge.size()) != d_) return false;
  const std::size_t m = edge_count();
  std::size_t lo = 0, hi = m;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    const std::int32_t* t = flat_.data() + mid * d_;
    if (std::lexicographical_compare(t, t + d_, edge.data(), edge.data() + d_)) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  if (lo == m) return false;
  const std::int32_t* t = flat_.data() + lo * d_;
  return std::equal(t, t + d_, edge.data());
}

std::vector<std::uint8_t> membership_mask(int n, std::span<const int> vertices) {
  std::vector<std::uint8_t> mask(n, 0);
  for (int v : vertices) mask[v] = 1;
  return mask;
}

std::int64_t incident_count(const UniformHypergraph& h, int u, std::span<const int> w) {
  const auto mask = membership_mask(h.vertex_count(), w);
  return incident_count_masked(h, u, mask);
}

InducedSubhypergraph induced_subhypergraph(const UniformHypergraph& h, std::span<const int> keep) {
  const int d = h.uniformity();
  if (static_cast<int>(keep.size()) < d) {
    throw ParameterError("induced subhypergraph needs at least d=" + std::to_string(d) +
                         " vertices, got " + std::to_string(keep.size()));
  }
  std::vector<int> sorted_keep(keep.begin(), keep.end());
  std::sort(sorted_keep.begin(), sorted_keep.end());
  std::vector<std::int32_t> remap(h.vertex_count(), -1);
  for (std::size_t i = 0; i < sorted_keep.size(); ++i) {
    remap[sorted_keep[i]] = static_cast<std::int32_t>(i);
  }

  std::vector<std::int32_t> flat;
  const std::size_t m = h.edge_count();
  for (std::size_t e = 0; e < m; ++e) {
    const auto edge = h.edge(e);
    bool inside = true;
    for (std::int32_t v : edge) {
      if (remap[v] < 0) {
        inside = false;
        break;
      }
    }
    if (!inside) continue;
    for (std::int32_t v : edge) flat.push_back(remap[v]);
  }
  // Relabeling is monotone, so tuple order and sortedness survive.
  InducedSubhypergraph out;
  out.hypergraph = UniformHypergraph::from_canonical_edges(static_cast<int>(sorted_keep.size()), d,
                                                           std::move(flat));
  out.to_parent = std::move(sorted_keep);
  return out;
}

std::pair<UniformHypergraph, Partition> permute_vertices(const UniformHypergraph& h,
                                                         const Partition& truth,
                                                         std::uint64_t seed) {
  const int n = h.vertex_count();
  const int d = h.uniformity();
  std::vector<int> perm(n);
  for (int v = 0; v < n; ++v) perm[v] = v;
  std::mt19937_64 gen(seed);
  for (int i = n - 1; i > 0; --i) {
    const auto j = static_cast<int>(gen() % static_cast<std::uint64_t>(i + 1));
    std::swap(perm[i], perm[j]);
  }

  const std::size_t m = h.edge_count();
  std::vector<std::vector<std::int32_t>> edges(m);
  for (std::size_t e = 0; e < m; ++e) {
    std::vector<std::int32_t> t(d);
    for (int i = 0; i < d; ++i) t[i] = perm[h.edge(e)[i]];
    std::sort(t.begin(), t.end());
    edges[e] = std::move(t);
  }
  std::sort(edges.begin(), edges.end());
  std::vector<std::int32_t> flat;
  flat.reserve(m * d);
  for (const auto& t : edges) flat.insert(flat.end(), t.begin(), t.end());

  Partition permuted;
  permuted.k = truth.k;
  permuted.labels.resize(n);
  for (int v = 0; v < n; ++v) permuted.labels[perm[v]] = truth.labels[v];
  return {UniformHypergraph::from_canonical_edges(n, d, std::move(flat)), std::move(permuted)};
}

}  // namespace hsbm
