#pragma once

#include <cstdint>
#include <vector>

#include "hsbm/hypergraph.hpp"
#include "hsbm/matrix.hpp"

namespace hsbm::kernels {

// Worker count used by the parallel kernel variants and by trial-level
// parallelism in sweeps. Every parallel kernel is bitwise identical to its
// serial reference for any worker count, so this only affects speed.
int max_workers();
void set_max_workers(int workers);

// --- pair-count accumulation (adjacency matrix) ---------------------------
// counts[i*n+j], upper triangle only (i < j), int64 so large (n, d) stay exact.
std::vector<std::int64_t> adjacency_counts_serial(const UniformHypergraph& h);
std::vector<std::int64_t> adjacency_counts_parallel(const UniformHypergraph& h);
std::vector<std::int64_t> adjacency_counts(const UniformHypergraph& h);

// --- refinement statistic N_{v,W} for all v --------------------------------
std::vector<std::int64_t> incident_counts_serial(const UniformHypergraph& h,
                                                 const std::vector<std::uint8_t>& in_w);
std::vector<std::int64_t> incident_counts_parallel(const UniformHypergraph& h,
                                                   const std::vector<std::uint8_t>& in_w);
std::vector<std::int64_t> incident_counts(const UniformHypergraph& h,
                                          const std::vector<std::uint8_t>& in_w);

// --- dominant rank-r projector from an eigenvector matrix ------------------
// vectors is row-major n*n with vectors[i*n+t] = i-th component of the t-th
// eigenvector; out receives sum_{t<r} v_t v_t^T.
void rank_r_projection_serial(const double* vectors, int n, int r, double* out);
void rank_r_projection_parallel(const double* vectors, int n, int r, double* out);
void rank_r_projection(const double* vectors, int n, int r, double* out);

// --- candidate-column scan --------------------------------------------------
// W_v = {v} plus the s-1 largest entries of column v of P (diagonal excluded,
// ties to the smaller index), returned ascending.
std::vector<int> candidate_indices(const SymmetricMatrix& p, int v, int s);

// norms[v] = ||P 1_{W_v}||_2 for every column.
std::vector<double> candidate_norms_serial(const SymmetricMatrix& p, int s);
std::vector<double> candidate_norms_parallel(const SymmetricMatrix& p, int s);
std::vector<double> candidate_norms(const SymmetricMatrix& p, int s);

double candidate_norm_for_set(const SymmetricMatrix& p, const std::vector<int>& w);

}  // namespace hsbm::kernels

namespace hsbm {

// A[i][j] = number of hyperedges containing both i and j; zero diagonal.
SymmetricMatrix adjacency_matrix(const UniformHypergraph& h);

// N_{v,W} for every vertex at once.
std::vector<std::int64_t> incident_counts_all(const UniformHypergraph& h, std::span<const int> w);

}  // namespace hsbm
