#include "polymerdyn/graph_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace polymerdyn {

namespace {

bool next_content_line(std::istream& in, std::string& line) {
  while (std::getline(in, line)) {
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    return true;
  }
  return false;
}

long parse_index(std::istringstream& ss, const std::string& line) {
  long x = 0;
  if (!(ss >> x)) throw ValidationError("malformed edge-list line: '" + line + "'");
  if (x < 0) throw ValidationError("negative vertex index in line: '" + line + "'");
  return x;
}

}  // namespace

AnyGraph read_edge_list(std::istream& in) {
  std::string line;
  if (!next_content_line(in, line)) throw ValidationError("empty edge-list input");
  bool multi = false;
  {
    std::istringstream ss(line);
    std::string tag;
    ss >> tag;
    if (tag == "multigraph") {
      multi = true;
      if (!next_content_line(in, line)) throw ValidationError("missing 'n m' header");
    }
  }
  std::istringstream header(line);
  const long n = parse_index(header, line);
  const long m = parse_index(header, line);
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(m));
  for (long i = 0; i < m; ++i) {
    if (!next_content_line(in, line))
      throw ValidationError("expected " + std::to_string(m) + " edges, found " + std::to_string(i));
    std::istringstream ss(line);
    const long u = parse_index(ss, line);
    const long v = parse_index(ss, line);
    edges.push_back(Edge{static_cast<Vertex>(u), static_cast<Vertex>(v)});
    if (u >= n || v >= n)
      throw ValidationError("edge (" + std::to_string(u) + "," + std::to_string(v) +
                            ") out of range for n = " + std::to_string(n));
  }
  if (next_content_line(in, line)) throw ValidationError("trailing content after edge list: '" + line + "'");
  if (multi) return MultiGraph(static_cast<std::size_t>(n), std::move(edges));
  return SimpleGraph(static_cast<std::size_t>(n), edges);
}

AnyGraph read_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open graph file '" + path + "'");
  return read_edge_list(in);
}

SimpleGraph read_simple_graph_file(const std::string& path) {
  auto g = read_edge_list_file(path);
  if (auto* s = std::get_if<SimpleGraph>(&g)) return std::move(*s);
  throw ValidationError("'" + path + "' is a multigraph; a simple graph is required");
}

void write_edge_list(std::ostream& out, const SimpleGraph& g) {
  out << g.vertex_count() << ' ' << g.edge_count() << '\n';
  for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

void write_edge_list(std::ostream& out, const MultiGraph& g) {
  out << "multigraph\n" << g.vertex_count() << ' ' << g.edge_count() << '\n';
  for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

std::vector<long> read_degree_sequence(std::istream& in) {
  std::vector<long> x;
  std::string tok;
  while (in >> tok) {
    std::size_t pos = 0;
    long v = 0;
    try {
      v = std::stol(tok, &pos);
    } catch (const std::exception&) {
      throw ValidationError("degree sequence: not an integer: '" + tok + "'");
    }
    if (pos != tok.size()) throw ValidationError("degree sequence: not an integer: '" + tok + "'");
    if (v < 0) throw ValidationError("degree sequence: negative entry " + tok);
    x.push_back(v);
  }
  return x;
}

std::vector<long> read_degree_sequence_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open degree-sequence file '" + path + "'");
  return read_degree_sequence(in);
}

}  // namespace polymerdyn
