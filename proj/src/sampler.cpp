#include "hsbm/sampler.hpp"

namespace hsbm {

Sample sample_hsbm(const HsbmParams& params) {
  params.validate();
  const int n = params.n;
  const int d = params.d;
  const int s = params.s;

  UniformStream stream(params.seed);
  std::vector<std::int32_t> flat;

  std::vector<std::int32_t> idx(d);
  for (int i = 0; i < d; ++i) idx[i] = i;

  while (true) {
    // Contiguous layout: the subset is within-cluster iff its extremes agree.
    const bool within = idx[0] / s == idx[d - 1] / s;
    const double u = stream.next();
    if (u < (within ? params.p : params.q)) {
      flat.insert(flat.end(), idx.begin(), idx.end());
    }
    int i = d - 1;
    while (i >= 0 && idx[i] == n - d + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < d; ++j) idx[j] = idx[j - 1] + 1;
  }

  Sample out;
  out.hypergraph = UniformHypergraph::from_canonical_edges(n, d, std::move(flat));
  out.ground_truth = Partition::contiguous(params.k, s);
  return out;
}

}  // namespace hsbm
