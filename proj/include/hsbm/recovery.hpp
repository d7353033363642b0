#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hsbm/hypergraph.hpp"
#include "hsbm/params.hpp"
#include "hsbm/spectral.hpp"

namespace hsbm {

// One delete-and-repeat iteration. Vertex ids are original (pre-deletion)
// ids. The final iteration emits the last s vertices directly: it has no
// projector, a NaN candidate_norm and -1 count statistics.
struct IterationTrace {
  int iteration = 0;  // 1-based
  bool direct = false;
  int chosen_column = -1;          // original id of v*
  double candidate_norm = 0.0;     // ||P 1_W||_2
  int overlap = -1;                // max_i |W ∩ C_i| when ground truth given
  std::int64_t min_count_selected = -1;  // min N_{v,W} over the recovered cluster
  std::int64_t max_count_excluded = -1;  // max N_{v,W} over the rest
  bool gap_nonpositive = false;    // sampled spectral gap at the used rank was <= 0
  std::vector<int> candidate_set;  // W, ascending original ids, |W| = s
  std::vector<int> recovered;      // recovered cluster, ascending original ids, size s
};

struct RecoveryResult {
  Partition partition;
  std::vector<IterationTrace> traces;
  std::optional<bool> exact;  // set when ground truth was supplied
};

// Step 3: W_v = {v} plus the s-1 largest entries of column v (diagonal
// excluded, ties to the smaller index); ascending, |W_v| = s.
std::vector<int> candidate_set(const Projector& p, int v, int s);

struct BestCandidate {
  int column = -1;
  std::vector<int> set;
  double norm = 0.0;
};

// Step 4: the column maximizing ||P 1_{W_v}||_2, smallest v on ties.
BestCandidate best_candidate(const Projector& p, int s);

// Step 6: the s vertices with largest N_{v,W}, ties to the smaller index.
std::vector<int> refine_cluster(const UniformHypergraph& h, const std::vector<int>& w, int s);

// Iterated spectral projection with hyperedge-count refinement and
// delete-and-repeat. The adjacency matrix of each round is rebuilt from the
// surviving hyperedges; the rank equals the number of remaining clusters
// unless rank_override pins it (clamped to the surviving vertex count) for
// experiments.
RecoveryResult recover(const UniformHypergraph& h, int k, int s,
                       const Partition* ground_truth = nullptr,
                       std::optional<int> rank_override = std::nullopt);

// Counting baseline: greedy sequential assignment of W_v = {v} plus the s-1
// unassigned vertices with largest pair count A[u][v].
Partition counting_recover(const UniformHypergraph& h, int s);

struct ComparisonResult {
  bool exact = false;
  int misclassified = 0;
};

// exact: identical up to cluster relabeling; misclassified: minimum vertex
// disagreements over relabelings (optimal assignment on the overlap matrix).
ComparisonResult compare_partitions(const Partition& a, const Partition& b);

enum class Regime { dense, sparse };

// The interval of analysis parameters for which the recovery guarantee
// applies; purely diagnostic, never an algorithm input.
struct EpsilonWindow {
  double lower = 0.0;
  double upper = 0.0;
  bool feasible = false;
  Regime regime = Regime::dense;
};

EpsilonWindow epsilon_window(const HsbmParams& params, Regime regime);

// True when the logged quantities of a spectral iteration satisfy every
// hypothesis of the single-iteration success guarantee at the given epsilon:
// norm >= (1-2e)sqrt(s), overlap >= (1-6e)s, N-thresholds separated at
// (p-16de)C(s,d-1) vs (q+16de)C(s,d-1). When this holds for a feasible
// epsilon, the recovered cluster provably equals a true cluster.
bool trace_meets_success_conditions(const IterationTrace& trace, const HsbmParams& params,
                                    double epsilon);

// Sufficient condition for the counting baseline to separate within-cluster
// pair counts from cross-cluster ones:
// C(s-2,d-2)(p-q) > sqrt(6 C(n-2,d-2) ln n).
bool counting_condition(const HsbmParams& params);

// Line-oriented trace record: optional '#'-prefixed comment lines, then one
// `key=value ...` line per iteration with 1-based vertex ids.
void write_traces(std::ostream& os, std::span<const IterationTrace> traces,
                  std::span<const std::pair<std::string, std::string>> comments = {});

}  // namespace hsbm
