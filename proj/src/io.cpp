#include "mw/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace mw {

namespace {

std::ifstream open_or_throw(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  return in;
}

}  // namespace

Graph read_graph(std::istream& in) {
  int n = 0, m = 0;
  if (!(in >> n >> m)) throw Error("graph file: expected 'n m' header");
  if (n < 0 || m < 0) throw Error("graph file: negative counts");
  Graph g(n);
  std::set<PairKey> seen;
  for (int i = 0; i < m; ++i) {
    Vertex u, v;
    if (!(in >> u >> v)) throw Error("graph file: expected edge line " + std::to_string(i + 1));
    if (u < 1 || u > n || v < 1 || v > n)
      throw Error("graph file: endpoint out of range on edge " + std::to_string(i + 1));
    if (u == v) throw Error("graph file: self-loop on edge " + std::to_string(i + 1));
    if (!seen.insert(pair_key(u, v)).second)
      throw Error("graph file: duplicate edge on line " + std::to_string(i + 1));
    g.add_edge(u, v);
  }
  return g;
}

Graph read_graph_file(const std::string& path) {
  auto in = open_or_throw(path);
  return read_graph(in);
}

void write_graph(std::ostream& out, const Graph& g) {
  auto edges = g.edges();
  out << g.n() << ' ' << edges.size() << '\n';
  for (auto [u, v] : edges) out << u << ' ' << v << '\n';
}

BinaryStructure read_structure(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw Error("structure file: empty");
  std::istringstream head(line);
  std::string tag;
  int n = 0;
  if (!(head >> tag >> n) || tag != "structure")
    throw Error("structure file: expected 'structure n' header");
  BinaryStructure s(n);
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string kind;
    if (!(ls >> kind)) continue;
    std::string name;
    if (!(ls >> name)) throw Error("structure file: missing relation name at line " +
                                   std::to_string(lineno));
    if (!name.empty() && name.back() == ':') name.pop_back();
    std::string rest;
    std::getline(ls, rest);
    if (auto colon = rest.find(':'); colon != std::string::npos) rest = rest.substr(colon + 1);
    PredId id = intern_name(name);
    if (kind == "unary") {
      s.add_unary(id);
      std::istringstream vs(rest);
      Vertex v;
      while (vs >> v) {
        if (v < 1 || v > n)
          throw Error("structure file: vertex out of range at line " + std::to_string(lineno));
        s.set_unary(id, v, true);
      }
    } else if (kind == "binary") {
      s.add_binary(id);
      std::istringstream ps(rest);
      std::string pairtok;
      while (std::getline(ps, pairtok, ';')) {
        std::istringstream pt(pairtok);
        Vertex u, v;
        if (!(pt >> u)) continue;
        if (!(pt >> v))
          throw Error("structure file: incomplete pair at line " + std::to_string(lineno));
        if (u < 1 || u > n || v < 1 || v > n)
          throw Error("structure file: vertex out of range at line " + std::to_string(lineno));
        s.add_pair(id, u, v);
      }
    } else {
      throw Error("structure file: unknown block '" + kind + "' at line " +
                  std::to_string(lineno));
    }
  }
  return s;
}

BinaryStructure read_structure_file(const std::string& path) {
  auto in = open_or_throw(path);
  return read_structure(in);
}

void write_structure(std::ostream& out, const BinaryStructure& s) {
  out << "structure " << s.n() << '\n';
  for (PredId u : s.unary_names()) {
    out << "unary " << pred_name(u) << ":";
    for (Vertex v : s.unary_members(u)) out << ' ' << v;
    out << '\n';
  }
  for (PredId b : s.binary_names()) {
    out << "binary " << pred_name(b) << ":";
    bool first = true;
    const auto& succ = s.successors(b);
    for (Vertex u = 1; u <= s.n(); ++u)
      for (Vertex v : succ[u]) {
        out << (first ? " " : "; ") << u << ' ' << v;
        first = false;
      }
    out << '\n';
  }
}

std::vector<Vertex> read_order(std::istream& in, int n) {
  std::vector<Vertex> order;
  Vertex v;
  while (in >> v) order.push_back(v);
  if (static_cast<int>(order.size()) != n)
    throw Error("order file: expected " + std::to_string(n) + " lines");
  std::vector<uint8_t> seen(n + 1, 0);
  for (Vertex u : order) {
    if (u < 1 || u > n || seen[u]) throw Error("order file: not a permutation");
    seen[u] = 1;
  }
  return order;
}

std::vector<Vertex> read_order_file(const std::string& path, int n) {
  auto in = open_or_throw(path);
  return read_order(in, n);
}

void write_order(std::ostream& out, const std::vector<Vertex>& order) {
  for (Vertex v : order) out << v << '\n';
}

std::string read_text_file(const std::string& path) {
  auto in = open_or_throw(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace mw
