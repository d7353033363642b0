#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "hsbm/params.hpp"

namespace hsbm {

// Assignment of n vertices to clusters. Labels are 0-based internally;
// file formats and CLI output translate to 1-based.
struct Partition {
  std::vector<int> labels;
  int k = 0;

  int n() const { return static_cast<int>(labels.size()); }

  // Contiguous ground-truth layout: vertices [i*s, (i+1)*s) get label i.
  static Partition contiguous(int k, int s);

  std::vector<std::vector<int>> clusters() const;

  bool operator==(const Partition&) const = default;
};

// A d-uniform hypergraph on vertices 0..n-1. Edges are stored flat as
// ascending d-tuples in lexicographic order; a per-vertex incidence index is
// built once at construction.
class UniformHypergraph {
 public:
  UniformHypergraph() = default;

  // `flat` holds m*d vertex ids, each consecutive d-block an edge. Trusts the
  // caller to supply canonical input (ascending tuples, sorted, deduplicated);
  // use validated_edges() for untrusted input.
  static UniformHypergraph from_canonical_edges(int n, int d, std::vector<std::int32_t> flat);

  // Validates every structural invariant and throws ParameterError on the
  // first violation.
  static UniformHypergraph validated_edges(int n, int d, std::vector<std::int32_t> flat);

  int vertex_count() const { return n_; }
  int uniformity() const { return d_; }
  std::size_t edge_count() const { return d_ == 0 ? 0 : flat_.size() / d_; }

  std::span<const std::int32_t> edge(std::size_t e) const {
    return {flat_.data() + e * d_, static_cast<std::size_t>(d_)};
  }
  std::span<const std::int32_t> flat_edges() const { return flat_; }

  // Edge ids incident to vertex v.
  std::span<const std::int32_t> incident_edges(int v) const {
    return {incidence_.data() + inc_offset_[v], inc_offset_[v + 1] - inc_offset_[v]};
  }

  int degree(int v) const { return static_cast<int>(inc_offset_[v + 1] - inc_offset_[v]); }

  // Membership test for an ascending d-tuple (binary search on the sorted list).
  bool contains(std::span<const std::int32_t> edge) const;

 private:
  void build_incidence();

  int n_ = 0;
  int d_ = 0;
  std::vector<std::int32_t> flat_;
  std::vector<std::size_t> inc_offset_;
  std::vector<std::int32_t> incidence_;
};

std::vector<std::uint8_t> membership_mask(int n, std::span<const int> vertices);

// N_{u,W} with W already expanded to a membership mask.
inline std::int64_t incident_count_masked(const UniformHypergraph& h, int u,
                                          const std::vector<std::uint8_t>& in_w) {
  std::int64_t count = 0;
  for (std::int32_t e : h.incident_edges(u)) {
    bool ok = true;
    for (std::int32_t v : h.edge(e)) {
      if (v != u && !in_w[v]) {
        ok = false;
        break;
      }
    }
    if (ok) ++count;
  }
  return count;
}

// N_{u,W}: hyperedges containing u whose other d-1 vertices all lie in W.
// u itself may or may not belong to W.
std::int64_t incident_count(const UniformHypergraph& h, int u, std::span<const int> w);

struct InducedSubhypergraph {
  UniformHypergraph hypergraph;
  std::vector<int> to_parent;  // new id -> parent id
};

// Keeps exactly the hyperedges fully contained in `keep` and relabels
// vertices 0..|keep|-1 preserving relative order. The result's adjacency
// matrix must be recomputed from the surviving edges; pair counts can only
// drop relative to the parent.
InducedSubhypergraph induced_subhypergraph(const UniformHypergraph& h, std::span<const int> keep);

// Applies a seeded random vertex permutation to a hypergraph and its ground
// truth; used to exercise permutation invariance of the recovery algorithms.
std::pair<UniformHypergraph, Partition> permute_vertices(const UniformHypergraph& h,
                                                         const Partition& truth,
                                                         std::uint64_t seed);

}  // namespace hsbm
