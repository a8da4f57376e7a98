#include "hs2/hypergraph.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>
#include <unordered_set>

namespace hs2 {

namespace {

struct SpanHash {
  std::size_t operator()(const std::vector<NodeId>& v) const noexcept {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (NodeId x : v) {
      h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }
};

}  // namespace

Hypergraph::Hypergraph(std::size_t n, const std::vector<std::vector<NodeId>>& edges) : n_(n) {
  if (n == 0) throw Error("hypergraph needs at least one node");
  if (edges.size() >= kRemovedEdge) throw Error("too many hyperedges");

  std::unordered_set<std::vector<NodeId>, SpanHash> seen;
  seen.reserve(edges.size());
  edge_offsets_.reserve(edges.size() + 1);
  edge_offsets_.push_back(0);

  std::vector<std::size_t> degree(n, 0);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    std::vector<NodeId> e = edges[i];
    std::sort(e.begin(), e.end());
    if (std::adjacent_find(e.begin(), e.end()) != e.end()) {
      throw Error("hyperedge " + std::to_string(i) + " repeats a node");
    }
    if (e.size() < 2) throw Error("hyperedge " + std::to_string(i) + " has fewer than 2 nodes");
    if (e.back() >= n) {
      throw Error("hyperedge " + std::to_string(i) + " has node " + std::to_string(e.back()) +
                  " out of range for n=" + std::to_string(n));
    }
    for (NodeId v : e) ++degree[v];
    edge_nodes_.insert(edge_nodes_.end(), e.begin(), e.end());
    edge_offsets_.push_back(edge_nodes_.size());
    if (!seen.insert(std::move(e)).second) {
      throw Error("duplicate hyperedge at index " + std::to_string(i));
    }
  }

  node_offsets_.assign(n + 1, 0);
  for (std::size_t v = 0; v < n; ++v) node_offsets_[v + 1] = node_offsets_[v] + degree[v];
  node_edges_.resize(edge_nodes_.size());
  std::vector<std::size_t> fill(node_offsets_.begin(), node_offsets_.end() - 1);
  for (EdgeId e = 0; e < num_edges(); ++e) {
    for (NodeId v : edge(e)) node_edges_[fill[v]++] = e;
  }
}

std::vector<std::vector<NodeId>> Hypergraph::edge_lists() const {
  std::vector<std::vector<NodeId>> out;
  out.reserve(num_edges());
  for (EdgeId e = 0; e < num_edges(); ++e) {
    auto s = edge(e);
    out.emplace_back(s.begin(), s.end());
  }
  return out;
}

bool Hypergraph::is_two_uniform() const {
  for (EdgeId e = 0; e < num_edges(); ++e) {
    if (edge(e).size() != 2) return false;
  }
  return true;
}

bool Hypergraph::incidence_consistent() const {
  if (n_ == 0) return num_edges() == 0;
  Hypergraph rebuilt(n_, edge_lists());
  return rebuilt.node_offsets_ == node_offsets_ && rebuilt.node_edges_ == node_edges_;
}

bool is_valid_path(const Hypergraph& g, const HyperPath& path) {
  auto contains = [&](EdgeId e, NodeId v) {
    auto s = g.edge(e);
    return std::binary_search(s.begin(), s.end(), v);
  };
  if (path.edges.empty()) return path.source == path.target && path.junctions.empty();
  if (path.junctions.size() + 1 != path.edges.size()) return false;
  for (EdgeId e : path.edges) {
    if (e >= g.num_edges()) return false;
  }
  if (!contains(path.edges.front(), path.source) || !contains(path.edges.back(), path.target)) {
    return false;
  }
  for (std::size_t i = 0; i < path.junctions.size(); ++i) {
    if (!contains(path.edges[i], path.junctions[i]) || !contains(path.edges[i + 1], path.junctions[i])) {
      return false;
    }
  }
  return true;
}

std::vector<Distance> distances_from(HypergraphView g, std::span<const NodeId> sources, Distance limit) {
  const Hypergraph& h = g.graph();
  std::vector<Distance> dist(h.num_nodes(), kInfinite);
  std::vector<std::uint8_t> expanded(h.num_edges(), 0);
  std::vector<NodeId> frontier;
  for (NodeId s : sources) {
    if (s >= h.num_nodes()) throw Error("source node out of range");
    if (dist[s] != 0) {
      dist[s] = 0;
      frontier.push_back(s);
    }
  }
  // Each hyperedge is expanded once, from the first level that touches it.
  std::vector<NodeId> next;
  for (Distance level = 1; !frontier.empty() && level <= limit; ++level) {
    next.clear();
    for (NodeId x : frontier) {
      for (EdgeId e : h.incident(x)) {
        if (expanded[e] || !g.alive(e)) continue;
        expanded[e] = 1;
        for (NodeId y : h.edge(e)) {
          if (dist[y] == kInfinite) {
            dist[y] = level;
            next.push_back(y);
          }
        }
      }
    }
    frontier.swap(next);
  }
  return dist;
}

std::optional<HyperPath> shortest_path(HypergraphView g, NodeId u, NodeId v) {
  const Hypergraph& h = g.graph();
  if (u >= h.num_nodes() || v >= h.num_nodes()) throw Error("path endpoint out of range");
  HyperPath path{u, v, {}, {}};
  if (u == v) return path;

  const NodeId target[] = {v};
  const std::vector<Distance> dist = distances_from(g, target);
  if (dist[u] == kInfinite) return std::nullopt;

  // Walk downhill in distance-to-target; the first admissible hyperedge and
  // junction in ascending order give the lexicographic tie-break.
  NodeId x = u;
  for (Distance d = dist[u]; d > 0; --d) {
    bool advanced = false;
    for (EdgeId e : h.incident(x)) {
      if (!g.alive(e)) continue;
      for (NodeId y : h.edge(e)) {
        if (dist[y] == d - 1) {
          path.edges.push_back(e);
          if (d > 1) path.junctions.push_back(y);
          x = y;
          advanced = true;
          break;
        }
      }
      if (advanced) break;
    }
  }
  return path;
}

std::vector<std::uint32_t> component_ids(HypergraphView g) {
  const Hypergraph& h = g.graph();
  constexpr std::uint32_t kUnset = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> comp(h.num_nodes(), kUnset);
  std::vector<std::uint8_t> expanded(h.num_edges(), 0);
  std::vector<NodeId> stack;
  std::uint32_t next_id = 0;
  for (NodeId s = 0; s < h.num_nodes(); ++s) {
    if (comp[s] != kUnset) continue;
    comp[s] = next_id;
    stack.push_back(s);
    while (!stack.empty()) {
      const NodeId x = stack.back();
      stack.pop_back();
      for (EdgeId e : h.incident(x)) {
        if (expanded[e] || !g.alive(e)) continue;
        expanded[e] = 1;
        for (NodeId y : h.edge(e)) {
          if (comp[y] == kUnset) {
            comp[y] = next_id;
            stack.push_back(y);
          }
        }
      }
    }
    ++next_id;
  }
  return comp;
}

std::vector<std::vector<NodeId>> connected_components(HypergraphView g) {
  const auto comp = component_ids(g);
  std::uint32_t count = 0;
  for (auto c : comp) count = std::max(count, c + 1);
  std::vector<std::vector<NodeId>> blocks(count);
  for (NodeId v = 0; v < comp.size(); ++v) blocks[comp[v]].push_back(v);
  return blocks;
}

EdgeRemoval remove_edges(const Hypergraph& g, std::span<const EdgeId> edge_ids) {
  std::vector<std::uint8_t> drop(g.num_edges(), 0);
  for (EdgeId e : edge_ids) {
    if (e >= g.num_edges()) throw Error("edge id " + std::to_string(e) + " out of range");
    drop[e] = 1;
  }
  EdgeRemoval out;
  out.old_to_new.assign(g.num_edges(), kRemovedEdge);
  std::vector<std::vector<NodeId>> kept;
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    if (drop[e]) continue;
    out.old_to_new[e] = static_cast<EdgeId>(kept.size());
    out.new_to_old.push_back(e);
    auto s = g.edge(e);
    kept.emplace_back(s.begin(), s.end());
  }
  out.graph = Hypergraph(g.num_nodes(), kept);
  return out;
}

Hypergraph clique_expansion(const Hypergraph& g) {
  std::unordered_set<std::uint64_t> seen;
  std::vector<std::vector<NodeId>> pairs;
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    auto s = g.edge(e);
    for (std::size_t i = 0; i < s.size(); ++i) {
      for (std::size_t j = i + 1; j < s.size(); ++j) {
        const std::uint64_t key = (std::uint64_t{s[i]} << 32) | s[j];
        if (seen.insert(key).second) pairs.push_back({s[i], s[j]});
      }
    }
  }
  return Hypergraph(g.num_nodes(), pairs);
}

namespace {

bool next_content_line(std::istream& in, std::string& line, std::size_t& line_no) {
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    return true;
  }
  return false;
}

[[noreturn]] void parse_fail(std::size_t line_no, const std::string& what) {
  throw Error("line " + std::to_string(line_no) + ": " + what);
}

}  // namespace

Hypergraph read_hypergraph(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  if (!next_content_line(in, line, line_no)) throw Error("empty hypergraph file");
  std::istringstream header(line);
  long long n = -1, m = -1;
  std::string extra;
  if (!(header >> n >> m) || (header >> extra) || n < 1 || m < 0) {
    parse_fail(line_no, "expected header 'n m'");
  }
  std::vector<std::vector<NodeId>> edges;
  edges.reserve(static_cast<std::size_t>(m));
  for (long long i = 0; i < m; ++i) {
    if (!next_content_line(in, line, line_no)) {
      throw Error("expected " + std::to_string(m) + " hyperedges, found " + std::to_string(i));
    }
    std::istringstream row(line);
    std::vector<NodeId> e;
    long long id;
    while (row >> id) {
      if (id < 0 || id >= n) parse_fail(line_no, "node id " + std::to_string(id) + " out of range");
      e.push_back(static_cast<NodeId>(id));
    }
    if (!row.eof()) parse_fail(line_no, "non-numeric token");
    if (!std::is_sorted(e.begin(), e.end())) parse_fail(line_no, "node ids must be sorted");
    edges.push_back(std::move(e));
  }
  if (next_content_line(in, line, line_no)) parse_fail(line_no, "trailing content after hyperedges");
  try {
    return Hypergraph(static_cast<std::size_t>(n), edges);
  } catch (const Error& err) {
    throw Error(std::string("invalid hypergraph: ") + err.what());
  }
}

Hypergraph read_hypergraph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  return read_hypergraph(in);
}

void write_hypergraph(std::ostream& out, const Hypergraph& g) {
  out << g.num_nodes() << ' ' << g.num_edges() << '\n';
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    bool first = true;
    for (NodeId v : g.edge(e)) {
      if (!first) out << ' ';
      out << v;
      first = false;
    }
    out << '\n';
  }
}

void write_hypergraph_file(const std::string& path, const Hypergraph& g) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  write_hypergraph(out, g);
}

}  // namespace hs2
