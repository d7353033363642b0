#pragma once

#include <cstdint>
#include <stdexcept>

namespace hsbm {

class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Model parameters for H(n, d, C, p, q): n vertices split into k clusters of
// size s = n/k; a d-subset becomes a hyperedge with probability p when it lies
// inside one cluster and q otherwise. A seed fixes one reproducible draw.
struct HsbmParams {
  int n = 0;
  int k = 0;
  int s = 0;
  int d = 0;
  double p = 0.0;
  double q = 0.0;
  std::uint64_t seed = 0;

  static HsbmParams make(int n, int k, int d, double p, double q, std::uint64_t seed = 0);

  // Throws ParameterError naming the violated invariant.
  void validate() const;

  HsbmParams with_seed(std::uint64_t new_seed) const {
    HsbmParams c = *this;
    c.seed = new_seed;
    return c;
  }
};

}  // namespace hsbm
