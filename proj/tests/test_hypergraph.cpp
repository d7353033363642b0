#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "hsbm/binomial.hpp"
#include "hsbm/kernels.hpp"
#include "hsbm/sampler.hpp"
#include "oracles.hpp"

using namespace hsbm;

namespace {

UniformHypergraph make_graph(int n, int d, std::vector<std::int32_t> flat) {
  return UniformHypergraph::validated_edges(n, d, std::move(flat));
}

}  // namespace

TEST_CASE("adjacency matrix counts pair memberships") {
  // edges {1,2,3} and {1,2,4} on n=4 (1-based ids in the comment, 0-based here)
  const auto h = make_graph(4, 3, {0, 1, 2, 0, 1, 3});
  const SymmetricMatrix a = adjacency_matrix(h);
  CHECK(a(0, 1) == 2.0);
  CHECK(a(0, 2) == 1.0);
  CHECK(a(1, 2) == 1.0);
  CHECK(a(0, 3) == 1.0);
  CHECK(a(1, 3) == 1.0);
  CHECK(a(2, 3) == 0.0);
  for (int i = 0; i < 4; ++i) CHECK(a(i, i) == 0.0);
}

TEST_CASE("d=2 adjacency equals the ordinary graph adjacency") {
  const auto h = make_graph(4, 2, {0, 1, 1, 2, 2, 3});
  const SymmetricMatrix a = adjacency_matrix(h);
  CHECK(a(0, 1) == 1.0);
  CHECK(a(1, 2) == 1.0);
  CHECK(a(2, 3) == 1.0);
  CHECK(a(0, 2) == 0.0);
  CHECK(a(0, 3) == 0.0);
}

TEST_CASE("adjacency sum identity and entrywise brute-force check") {
  // sum of all entries = 2 * C(d,2) * m, and every entry matches the
  // edge-by-edge pair count
  for (std::uint64_t seed : {11u, 12u, 13u}) {
    const auto params = HsbmParams::make(12, 3, 3, 0.7, 0.2, seed);
    const Sample sample = sample_hsbm(params);
    const SymmetricMatrix a = adjacency_matrix(sample.hypergraph);
    double sum = 0.0;
    for (int i = 0; i < 12; ++i) {
      for (int j = 0; j < 12; ++j) sum += a(i, j);
    }
    const double d = params.d;
    CHECK(sum == 2.0 * (d * (d - 1) / 2) * sample.hypergraph.edge_count());
    for (int i = 0; i < 12; ++i) {
      for (int j = i + 1; j < 12; ++j) {
        CHECK(a(i, j) == static_cast<double>(oracles::brute_force_pair_count(sample.hypergraph, i, j)));
      }
    }
  }
}

TEST_CASE("adjacency entries stay under C(n-2, d-2)") {
  const auto params = HsbmParams::make(10, 2, 3, 1.0, 1.0, 3);
  const Sample sample = sample_hsbm(params);
  const SymmetricMatrix a = adjacency_matrix(sample.hypergraph);
  CHECK(max_abs(a) <= binomial(8, 1));
  CHECK(max_abs(a) == binomial(8, 1));  // p=q=1: complete hypergraph attains it
}

TEST_CASE("incident_count") {
  SUBCASE("three qualifying hyperedges") {
    // u=0 with W={1,2,3,4}: {0,1,2}, {0,3,4}, {0,1,4} qualify; {0,1,5} and
    // {1,2,3} do not
    const auto h = make_graph(6, 3, {0, 1, 2, 0, 1, 4, 0, 1, 5, 0, 3, 4, 1, 2, 3});
    const std::vector<int> w{1, 2, 3, 4};
    CHECK(incident_count(h, 0, w) == 3);
  }
  SUBCASE("empty W yields zero") {
    const auto h = make_graph(4, 2, {0, 1, 2, 3});
    CHECK(incident_count(h, 0, {}) == 0);
  }
  SUBCASE("noiseless cluster attains C(s-1, d-1)") {
    const auto params = HsbmParams::make(10, 2, 3, 1.0, 0.0, 5);
    const Sample sample = sample_hsbm(params);
    const std::vector<int> cluster{0, 1, 2, 3, 4};
    CHECK(incident_count(sample.hypergraph, 0, cluster) == static_cast<std::int64_t>(binomial(4, 2)));
    // u outside W: all d-1 others must come from W
    CHECK(incident_count(sample.hypergraph, 7, cluster) == 0);
  }
  SUBCASE("u need not belong to W") {
    const auto h = make_graph(5, 3, {0, 1, 2});
    const std::vector<int> w{1, 2};
    CHECK(incident_count(h, 0, w) == 1);
  }
}

TEST_CASE("incident_count over the full vertex set equals the degree") {
  const auto params = HsbmParams::make(12, 2, 3, 0.6, 0.3, 9);
  const Sample sample = sample_hsbm(params);
  const auto& h = sample.hypergraph;
  std::vector<int> everyone(12);
  std::iota(everyone.begin(), everyone.end(), 0);
  for (int u = 0; u < 12; ++u) {
    CHECK(incident_count(h, u, everyone) == h.degree(u));
  }
}

TEST_CASE("induced subhypergraph") {
  SUBCASE("drops straddling edges and relabels") {
    const auto h = make_graph(4, 3, {0, 1, 2, 1, 2, 3});
    const std::vector<int> keep{1, 2, 3};
    const InducedSubhypergraph sub = induced_subhypergraph(h, keep);
    REQUIRE(sub.hypergraph.edge_count() == 1);
    const auto edge = sub.hypergraph.edge(0);
    CHECK(edge[0] == 0);
    CHECK(edge[1] == 1);
    CHECK(edge[2] == 2);
    CHECK(sub.to_parent == std::vector<int>{1, 2, 3});
    // the (1,2) pair count drops from 2 to 1: not a submatrix of the parent
    const SymmetricMatrix parent = adjacency_matrix(h);
    const SymmetricMatrix child = adjacency_matrix(sub.hypergraph);
    CHECK(parent(1, 2) == 2.0);
    CHECK(child(0, 1) == 1.0);
  }
  SUBCASE("keeping everything is the identity") {
    const auto params = HsbmParams::make(9, 3, 2, 0.8, 0.3, 2);
    const Sample sample = sample_hsbm(params);
    std::vector<int> keep(9);
    std::iota(keep.begin(), keep.end(), 0);
    const InducedSubhypergraph sub = induced_subhypergraph(sample.hypergraph, keep);
    CHECK(sub.hypergraph.edge_count() == sample.hypergraph.edge_count());
    CHECK(std::equal(sub.hypergraph.flat_edges().begin(), sub.hypergraph.flat_edges().end(),
                     sample.hypergraph.flat_edges().begin()));
  }
  SUBCASE("induced adjacency is entrywise at most the sliced parent adjacency") {
    for (std::uint64_t seed : {21u, 22u, 23u, 24u}) {
      const auto params = HsbmParams::make(12, 2, 3, 0.7, 0.3, seed);
      const Sample sample = sample_hsbm(params);
      const std::vector<int> keep{0, 2, 3, 5, 7, 8, 10, 11};
      const InducedSubhypergraph sub = induced_subhypergraph(sample.hypergraph, keep);
      const SymmetricMatrix parent = adjacency_matrix(sample.hypergraph);
      const SymmetricMatrix child = adjacency_matrix(sub.hypergraph);
      for (std::size_t i = 0; i < keep.size(); ++i) {
        for (std::size_t j = 0; j < keep.size(); ++j) {
          CHECK(child(static_cast<int>(i), static_cast<int>(j)) <= parent(keep[i], keep[j]));
        }
      }
    }
  }
  SUBCASE("fewer than d vertices is degenerate") {
    const auto h = make_graph(4, 3, {0, 1, 2});
    CHECK_THROWS_AS(induced_subhypergraph(h, std::vector<int>{0, 1}), ParameterError);
  }
}

TEST_CASE("validated_edges rejects malformed input") {
  CHECK_THROWS_AS(make_graph(4, 3, {0, 2, 1}), ParameterError);        // not ascending
  CHECK_THROWS_AS(make_graph(4, 3, {0, 1, 1}), ParameterError);        // repeated vertex
  CHECK_THROWS_AS(make_graph(4, 3, {0, 1, 4}), ParameterError);        // out of range
  CHECK_THROWS_AS(make_graph(4, 3, {0, 1, 2, 0, 1, 2}), ParameterError);  // duplicate edge
  CHECK_THROWS_AS(make_graph(4, 3, {1, 2, 3, 0, 1, 2}), ParameterError);  // unsorted list
}

TEST_CASE("membership lookup") {
  const auto h = make_graph(6, 3, {0, 1, 2, 0, 1, 4, 2, 4, 5});
  const std::int32_t yes[] = {0, 1, 4};
  const std::int32_t no[] = {0, 2, 4};
  CHECK(h.contains(yes));
  CHECK(!h.contains(no));
}

TEST_CASE("permuted instances recover permuted labels") {
  const auto params = HsbmParams::make(12, 3, 2, 1.0, 0.0, 77);
  const Sample sample = sample_hsbm(params);
  const auto [permuted, truth] = permute_vertices(sample.hypergraph, sample.ground_truth, 5);
  CHECK(permuted.edge_count() == sample.hypergraph.edge_count());
  // cluster structure survives: each vertex still has degree C(s-1, d-1)
  for (int v = 0; v < 12; ++v) CHECK(permuted.degree(v) == 3);
  std::vector<int> counts(truth.k, 0);
  for (int label : truth.labels) ++counts[label];
  for (int c : counts) CHECK(c == 4);
}
