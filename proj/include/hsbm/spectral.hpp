#pragma once

#include "hsbm/binomial.hpp"
#include "hsbm/eigen_sym.hpp"
#include "hsbm/hypergraph.hpp"
#include "hsbm/matrix.hpp"
#include "hsbm/params.hpp"

namespace hsbm {

// Orthogonal projection onto the span of the eigenvectors of the r largest
// eigenvalues. Ties at position r resolve to the first r columns of the
// stable descending order.
struct Projector {
  SymmetricMatrix matrix;
  int rank = 0;
};

Projector dominant_projector(const SymmetricMatrix& x, int r);
Projector dominant_projector(const EigenSystem& sys, int r);

// Closed-form summary of the expected-adjacency spectrum: lambda1 once,
// lambda_mid with multiplicity k-1, lambda_tail with multiplicity n-k,
// gap = lambda_k - lambda_{k+1}. lambda_mid is NaN when k == 1.
struct SpectrumSummary {
  double lambda1 = 0.0;
  double lambda_mid = 0.0;
  double lambda_tail = 0.0;
  double gap = 0.0;
};

// EA[i][j] = C(s-2,d-2)(p-q) + C(n-2,d-2)q within a cluster, C(n-2,d-2)q
// across, 0 on the diagonal.
SymmetricMatrix expected_adjacency(const HsbmParams& params);

SpectrumSummary expected_spectrum(const HsbmParams& params);

double expected_within_entry(const HsbmParams& params);
double expected_cross_entry(const HsbmParams& params);

// Cluster incidence matrix Y: Y[u][v] = 1 iff u and v share a cluster
// (diagonal included); the dominant rank-k projector of EA equals Y/s.
SymmetricMatrix incidence_matrix(const Partition& partition);

struct ProjectorDistance {
  double spectral = 0.0;
  double frobenius = 0.0;
};

// Norms of P_r(a) - P_r(b).
ProjectorDistance projector_distance(const SymmetricMatrix& a, const SymmetricMatrix& b, int r);

// Concentration reference 6d*sqrt(d*C(n,d-1)) for ||A - EA||_2.
double concentration_bound(int n, int d);

}  // namespace hsbm
