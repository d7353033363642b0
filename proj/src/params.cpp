#include "hsbm/params.hpp"

#include <string>

namespace hsbm {

HsbmParams HsbmParams::make(int n, int k, int d, double p, double q, std::uint64_t seed) {
  HsbmParams params;
  params.n = n;
  params.k = k;
  params.s = (k > 0) ? n / k : 0;
  params.d = d;
  params.p = p;
  params.q = q;
  params.seed = seed;
  params.validate();
  return params;
}

void HsbmParams::validate() const {
  if (n <= 0) throw ParameterError("vertex count n must be positive, got " + std::to_string(n));
  if (k <= 0) throw ParameterError("cluster count k must be positive, got " + std::to_string(k));
  if (n % k != 0) {
    throw ParameterError("n=" + std::to_string(n) + " is not divisible by k=" + std::to_string(k));
  }
  if (s <= 0 || static_cast<long long>(k) * s != n) {
    throw ParameterError("n must equal k*s exactly: n=" + std::to_string(n) +
                         ", k=" + std::to_string(k) + ", s=" + std::to_string(s));
  }
  if (d < 2) throw ParameterError("uniformity d must be at least 2, got " + std::to_string(d));
  if (d > s) {
    throw ParameterError("d=" + std::to_string(d) + " exceeds cluster size s=" + std::to_string(s) +
                         " (a within-cluster hyperedge must fit in one cluster)");
  }
  if (!(p >= 0.0 && p <= 1.0)) throw ParameterError("p must lie in [0,1], got " + std::to_string(p));
  if (!(q >= 0.0 && q <= 1.0)) throw ParameterError("q must lie in [0,1], got " + std::to_string(q));
  if (q > p) {
    throw ParameterError("q=" + std::to_string(q) + " must not exceed p=" + std::to_string(p));
  }
}

}  // namespace hsbm
