#include "hsbm/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

namespace hsbm {

namespace {

// Splits on single spaces, rejecting leading/trailing/double whitespace and
// non-integer tokens.
std::vector<long long> parse_int_fields(const std::string& line, int line_no) {
  if (line.empty()) throw ParseError("empty line", line_no);
  if (line.front() == ' ' || line.back() == ' ') {
    throw ParseError("leading or trailing whitespace", line_no);
  }
  std::vector<long long> fields;
  std::size_t pos = 0;
  while (pos < line.size()) {
    std::size_t next = line.find(' ', pos);
    if (next == std::string::npos) next = line.size();
    if (next == pos) throw ParseError("repeated space", line_no);
    long long value = 0;
    const auto [ptr, ec] = std::from_chars(line.data() + pos, line.data() + next, value);
    if (ec != std::errc() || ptr != line.data() + next) {
      throw ParseError("malformed integer field '" + line.substr(pos, next - pos) + "'", line_no);
    }
    fields.push_back(value);
    pos = next + 1;
  }
  return fields;
}

std::string read_line_or_throw(std::istream& is, int line_no, const char* what) {
  std::string line;
  if (!std::getline(is, line)) throw ParseError(std::string("missing ") + what, line_no);
  if (!line.empty() && line.back() == '\r') throw ParseError("CR line ending", line_no);
  return line;
}

}  // namespace

void write_hypergraph(std::ostream& os, const UniformHypergraph& h) {
  os << h.vertex_count() << ' ' << h.uniformity() << ' ' << h.edge_count() << '\n';
  const std::size_t m = h.edge_count();
  for (std::size_t e = 0; e < m; ++e) {
    const auto edge = h.edge(e);
    for (std::size_t i = 0; i < edge.size(); ++i) {
      if (i) os << ' ';
      os << edge[i] + 1;
    }
    os << '\n';
  }
}

void write_hypergraph(const std::filesystem::path& path, const UniformHypergraph& h) {
  std::ostringstream os;
  write_hypergraph(os, h);
  atomic_write_file(path, os.str());
}

UniformHypergraph read_hypergraph(std::istream& is) {
  const std::string header = read_line_or_throw(is, 1, "header");
  const auto fields = parse_int_fields(header, 1);
  if (fields.size() != 3) throw ParseError("header must be `n d m`", 1);
  const long long n = fields[0];
  const long long d = fields[1];
  const long long m = fields[2];
  if (n < 1 || d < 2 || d > n || m < 0) throw ParseError("invalid header values", 1);

  std::vector<std::int32_t> flat;
  // trust the declared size only up to a modest cap; a bogus header should
  // fail on a missing edge line, not on allocation
  flat.reserve(static_cast<std::size_t>(std::min<long long>(m, 1 << 20) * d));
  std::vector<std::int32_t> prev;
  for (long long e = 0; e < m; ++e) {
    const int line_no = static_cast<int>(e) + 2;
    const std::string line = read_line_or_throw(is, line_no, "edge line");
    const auto ids = parse_int_fields(line, line_no);
    if (static_cast<long long>(ids.size()) != d) {
      throw ParseError("expected " + std::to_string(d) + " vertex ids, got " +
                           std::to_string(ids.size()),
                       line_no);
    }
    std::vector<std::int32_t> tuple(d);
    for (long long i = 0; i < d; ++i) {
      const long long id = ids[i];
      if (id < 1 || id > n) throw ParseError("vertex id " + std::to_string(id) + " out of range", line_no);
      if (i > 0 && id <= ids[i - 1]) throw ParseError("vertex ids not strictly ascending", line_no);
      tuple[i] = static_cast<std::int32_t>(id - 1);
    }
    if (!prev.empty() && !std::lexicographical_compare(prev.begin(), prev.end(), tuple.begin(),
                                                       tuple.end())) {
      throw ParseError("edge lines out of order or duplicated", line_no);
    }
    flat.insert(flat.end(), tuple.begin(), tuple.end());
    prev = std::move(tuple);
  }
  std::string tail;
  if (std::getline(is, tail)) {
    throw ParseError("unexpected content after last edge", static_cast<int>(m) + 2);
  }
  return UniformHypergraph::from_canonical_edges(static_cast<int>(n), static_cast<int>(d),
                                                 std::move(flat));
}

UniformHypergraph read_hypergraph(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open hypergraph file: " + path.string());
  return read_hypergraph(is);
}

void write_partition(std::ostream& os, const Partition& partition) {
  for (int v = 0; v < partition.n(); ++v) {
    os << v + 1 << ' ' << partition.labels[v] + 1 << '\n';
  }
}

void write_partition(const std::filesystem::path& path, const Partition& partition) {
  std::ostringstream os;
  write_partition(os, partition);
  atomic_write_file(path, os.str());
}

Partition read_partition(std::istream& is) {
  Partition partition;
  std::string line;
  int line_no = 0;
  int max_label = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') throw ParseError("CR line ending", line_no);
    const auto fields = parse_int_fields(line, line_no);
    if (fields.size() != 2) throw ParseError("expected `vertex_id cluster_label`", line_no);
    if (fields[0] != line_no) {
      throw ParseError("vertex ids must be 1..n in order, got " + std::to_string(fields[0]),
                       line_no);
    }
    const long long label = fields[1];
    if (label < 1) throw ParseError("cluster label must be positive", line_no);
    partition.labels.push_back(static_cast<int>(label - 1));
    max_label = std::max(max_label, static_cast<int>(label));
  }
  if (partition.labels.empty()) throw ParseError("empty partition file", 1);
  partition.k = max_label;
  std::vector<char> used(max_label, 0);
  for (int label : partition.labels) used[label] = 1;
  for (int c = 0; c < max_label; ++c) {
    if (!used[c]) {
      throw ParseError("cluster label " + std::to_string(c + 1) + " unused",
                       static_cast<int>(partition.labels.size()));
    }
  }
  return partition;
}

Partition read_partition(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open partition file: " + path.string());
  return read_partition(is);
}

void atomic_write_file(const std::filesystem::path& path, const std::string& contents) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw IoError("cannot open for writing: " + tmp.string());
    os.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!os) throw IoError("write failed: " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace hsbm
