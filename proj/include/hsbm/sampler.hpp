#pragma once

#include <cstdint>
#include <random>

#include "hsbm/hypergraph.hpp"
#include "hsbm/params.hpp"

namespace hsbm {

// 53-bit uniforms in [0,1) from mt19937_64. Both the engine and the mapping
// are fully specified, so draws are bit-identical across platforms.
class UniformStream {
 public:
  explicit UniformStream(std::uint64_t seed) : gen_(seed) {}
  double next() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 gen_;
};

struct Sample {
  UniformHypergraph hypergraph;
  Partition ground_truth;
};

// Draws one hypergraph from H(n, d, C, p, q) with the contiguous ground-truth
// layout. Every d-subset of [n] is visited in lexicographic order and consumes
// exactly one uniform, whether or not it becomes an edge, so a seed yields the
// same draw under any (p, q) and edge sets are coupled monotonically in p.
Sample sample_hsbm(const HsbmParams& params);

}  // namespace hsbm
