#include "hsbm/spectral.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "hsbm/kernels.hpp"

namespace hsbm {

Projector dominant_projector(const SymmetricMatrix& x, int r) {
  return dominant_projector(eig_sym(x), r);
}

Projector dominant_projector(const EigenSystem& sys, int r) {
  if (r < 1 || r > sys.n) {
    throw ParameterError("projector rank " + std::to_string(r) + " out of range [1, " +
                         std::to_string(sys.n) + "]");
  }
  Projector proj;
  proj.rank = r;
  proj.matrix = SymmetricMatrix(sys.n);
  kernels::rank_r_projection(sys.vectors.data(), sys.n, r, proj.matrix.data());
  return proj;
}

double expected_within_entry(const HsbmParams& params) {
  return binomial(params.s - 2, params.d - 2) * (params.p - params.q) +
         binomial(params.n - 2, params.d - 2) * params.q;
}

double expected_cross_entry(const HsbmParams& params) {
  return binomial(params.n - 2, params.d - 2) * params.q;
}

SymmetricMatrix expected_adjacency(const HsbmParams& params) {
  params.validate();
  const double within = expected_within_entry(params);
  const double cross = expected_cross_entry(params);
  const int n = params.n;
  const int s = params.s;
  SymmetricMatrix ea(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      ea.set(i, j, (i / s == j / s) ? within : cross);
    }
  }
  return ea;
}

SpectrumSummary expected_spectrum(const HsbmParams& params) {
  params.validate();
  const double w = binomial(params.s - 2, params.d - 2) * (params.p - params.q);
  const double c = binomial(params.n - 2, params.d - 2) * params.q;
  SpectrumSummary summary;
  summary.lambda1 = w * (params.s - 1) + c * (params.n - 1);
  summary.lambda_mid =
      (params.k > 1) ? w * (params.s - 1) - c : std::numeric_limits<double>::quiet_NaN();
  summary.lambda_tail = -w - c;
  const double lambda_k = (params.k > 1) ? summary.lambda_mid : summary.lambda1;
  summary.gap = lambda_k - summary.lambda_tail;
  return summary;
}

SymmetricMatrix incidence_matrix(const Partition& partition) {
  const int n = partition.n();
  SymmetricMatrix y(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      if (partition.labels[i] == partition.labels[j]) y.set(i, j, 1.0);
    }
  }
  return y;
}

ProjectorDistance projector_distance(const SymmetricMatrix& a, const SymmetricMatrix& b, int r) {
  if (a.dim() != b.dim()) throw ParameterError("projector_distance: dimension mismatch");
  const SymmetricMatrix diff = dominant_projector(a, r).matrix - dominant_projector(b, r).matrix;
  ProjectorDistance dist;
  dist.spectral = spectral_norm(diff);
  dist.frobenius = frobenius_norm(diff);
  return dist;
}


double concentration_bound(int n, int d) {
  return 6.0 * d * std::sqrt(d * binomial(n, d - 1));
}

}  // namespace hsbm
