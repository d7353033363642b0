#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include "hsbm/hypergraph.hpp"

namespace hsbm {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line)
      : std::runtime_error(what + " (line " + std::to_string(line) + ")"), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Hypergraph file: line 1 is `n d m`; the next m lines hold d space-separated
// strictly ascending 1-based vertex ids, one edge per line, lines sorted in
// tuple lexicographic order, LF endings, no trailing whitespace.
void write_hypergraph(std::ostream& os, const UniformHypergraph& h);
void write_hypergraph(const std::filesystem::path& path, const UniformHypergraph& h);
UniformHypergraph read_hypergraph(std::istream& is);
UniformHypergraph read_hypergraph(const std::filesystem::path& path);

// Partition file: n lines of `vertex_id cluster_label`, vertex ids 1..n in
// order, labels 1..k with every label used.
void write_partition(std::ostream& os, const Partition& partition);
void write_partition(const std::filesystem::path& path, const Partition& partition);
Partition read_partition(std::istream& is);
Partition read_partition(const std::filesystem::path& path);

// Writes via a temporary file in the same directory followed by a rename.
void atomic_write_file(const std::filesystem::path& path, const std::string& contents);

}  // namespace hsbm
