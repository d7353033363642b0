#include <doctest.h>

#include <sstream>

#include "hsbm/io.hpp"
#include "hsbm/sampler.hpp"

using namespace hsbm;

TEST_CASE("hypergraph round trip") {
  const auto params = HsbmParams::make(15, 3, 3, 0.5, 0.2, 31);
  const Sample sample = sample_hsbm(params);
  std::ostringstream os;
  write_hypergraph(os, sample.hypergraph);
  std::istringstream is(os.str());
  const UniformHypergraph back = read_hypergraph(is);
  CHECK(back.vertex_count() == 15);
  CHECK(back.uniformity() == 3);
  CHECK(back.edge_count() == sample.hypergraph.edge_count());
  CHECK(std::equal(back.flat_edges().begin(), back.flat_edges().end(),
                   sample.hypergraph.flat_edges().begin()));
}

TEST_CASE("hypergraph file format is exact") {
  const auto params = HsbmParams::make(6, 2, 3, 1.0, 0.0, 1);
  const Sample sample = sample_hsbm(params);
  std::ostringstream os;
  write_hypergraph(os, sample.hypergraph);
  CHECK(os.str() == "6 3 2\n1 2 3\n4 5 6\n");
}

TEST_CASE("hypergraph parse errors carry line numbers") {
  SUBCASE("descending edge") {
    std::istringstream is("4 3 1\n3 2 1\n");
    CHECK_THROWS_WITH_AS(read_hypergraph(is), doctest::Contains("line 2"), ParseError);
  }
  SUBCASE("duplicate edge line") {
    std::istringstream is("4 3 2\n1 2 3\n1 2 3\n");
    CHECK_THROWS_WITH_AS(read_hypergraph(is), doctest::Contains("line 3"), ParseError);
  }
  SUBCASE("vertex out of range") {
    std::istringstream is("4 3 1\n2 3 5\n");
    CHECK_THROWS_WITH_AS(read_hypergraph(is), doctest::Contains("out of range"), ParseError);
  }
  SUBCASE("malformed header") {
    std::istringstream is("4 3\n");
    CHECK_THROWS_AS(read_hypergraph(is), ParseError);
  }
  SUBCASE("wrong arity") {
    std::istringstream is("4 3 1\n1 2\n");
    CHECK_THROWS_AS(read_hypergraph(is), ParseError);
  }
  SUBCASE("trailing whitespace") {
    std::istringstream is("4 3 1\n1 2 3 \n");
    CHECK_THROWS_AS(read_hypergraph(is), ParseError);
  }
  SUBCASE("missing edges") {
    std::istringstream is("4 3 2\n1 2 3\n");
    CHECK_THROWS_AS(read_hypergraph(is), ParseError);
  }
  SUBCASE("extra content") {
    std::istringstream is("4 3 1\n1 2 3\n1 2 4\n");
    CHECK_THROWS_AS(read_hypergraph(is), ParseError);
  }
}

TEST_CASE("partition round trip and format") {
  Partition part;
  part.k = 2;
  part.labels = {0, 1, 0, 1};
  std::ostringstream os;
  write_partition(os, part);
  CHECK(os.str() == "1 1\n2 2\n3 1\n4 2\n");
  std::istringstream is(os.str());
  const Partition back = read_partition(is);
  CHECK(back == part);
}

TEST_CASE("partition parse errors") {
  SUBCASE("out-of-order vertex ids") {
    std::istringstream is("1 1\n3 2\n");
    CHECK_THROWS_WITH_AS(read_partition(is), doctest::Contains("line 2"), ParseError);
  }
  SUBCASE("unused label") {
    std::istringstream is("1 1\n2 3\n");
    CHECK_THROWS_WITH_AS(read_partition(is), doctest::Contains("unused"), ParseError);
  }
  SUBCASE("nonpositive label") {
    std::istringstream is("1 0\n");
    CHECK_THROWS_AS(read_partition(is), ParseError);
  }
}

TEST_CASE("atomic file write round trip") {
  const auto dir = std::filesystem::temp_directory_path() / "hsbm_io_test";
  std::filesystem::create_directories(dir);
  const auto path = dir / "h.txt";
  const auto params = HsbmParams::make(8, 2, 2, 0.9, 0.2, 4);
  const Sample sample = sample_hsbm(params);
  write_hypergraph(path, sample.hypergraph);
  const UniformHypergraph back = read_hypergraph(path);
  CHECK(back.edge_count() == sample.hypergraph.edge_count());
  std::filesystem::remove_all(dir);
}
