// Brute-force reference implementations used by the tests. Deliberately
// naive: they share no code with the library beyond the Hypergraph type.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "hs2/hypergraph.hpp"

namespace oracle {

using hs2::EdgeId;
using hs2::NodeId;

constexpr std::uint32_t kInf = std::numeric_limits<std::uint32_t>::max();

inline bool edge_has(const hs2::Hypergraph& g, EdgeId e, NodeId v) {
  for (NodeId x : g.edge(e)) {
    if (x == v) return true;
  }
  return false;
}

/// Every path of minimum length from u to v, as the flat sequence
/// (e1, w1, e2, w2, ..., el), found by depth-first enumeration of sequences
/// of distinct hyperedges. Empty when disconnected; {{}} when u == v.
inline std::vector<std::vector<std::uint32_t>> all_shortest_paths(const hs2::Hypergraph& g, NodeId u, NodeId v,
                                                                   const std::vector<bool>& alive = {}) {
  if (u == v) return {{}};
  auto live = [&](EdgeId e) { return alive.empty() || alive[e]; };
  std::size_t best = std::numeric_limits<std::size_t>::max();
  std::vector<std::vector<std::uint32_t>> found;
  std::vector<std::uint32_t> seq;
  std::vector<bool> used(g.num_edges(), false);
  std::function<void(NodeId, std::size_t)> dfs = [&](NodeId at, std::size_t len) {
    if (len >= best) return;
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
      if (used[e] || !live(e) || !edge_has(g, e, at)) continue;
      used[e] = true;
      seq.push_back(e);
      if (edge_has(g, e, v)) {
        if (len + 1 < best) {
          best = len + 1;
          found.clear();
        }
        found.push_back(seq);
      }
      if (len + 2 <= best) {
        for (NodeId w : g.edge(e)) {
          if (w == at || w == v) continue;
          seq.push_back(w);
          dfs(w, len + 1);
          seq.pop_back();
        }
      }
      seq.pop_back();
      used[e] = false;
    }
  };
  dfs(u, 0);
  // The search may record paths that were minimal only before best shrank.
  std::vector<std::vector<std::uint32_t>> out;
  for (auto& p : found) {
    if ((p.size() + 1) / 2 == best) out.push_back(p);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline std::uint32_t path_length(const hs2::Hypergraph& g, NodeId u, NodeId v, const std::vector<bool>& alive = {}) {
  const auto paths = all_shortest_paths(g, u, v, alive);
  if (paths.empty()) return kInf;
  return static_cast<std::uint32_t>((paths.front().size() + 1) / 2);
}

/// All-pairs distances by repeated relaxation over hyperedges (Bellman-Ford
/// style), independent of the library's BFS.
inline std::vector<std::vector<std::uint32_t>> all_pairs(const hs2::Hypergraph& g, const std::vector<bool>& alive = {}) {
  const std::size_t n = g.num_nodes();
  std::vector<std::vector<std::uint32_t>> d(n, std::vector<std::uint32_t>(n, kInf));
  for (NodeId s = 0; s < n; ++s) {
    d[s][s] = 0;
    bool changed = true;
    while (changed) {
      changed = false;
      for (EdgeId e = 0; e < g.num_edges(); ++e) {
        if (!alive.empty() && !alive[e]) continue;
        std::uint32_t lo = kInf;
        for (NodeId x : g.edge(e)) lo = std::min(lo, d[s][x]);
        if (lo == kInf) continue;
        for (NodeId x : g.edge(e)) {
          if (d[s][x] > lo + 1) {
            d[s][x] = lo + 1;
            changed = true;
          }
        }
      }
    }
  }
  return d;
}

inline std::uint32_t sat_add(std::uint32_t a, std::uint32_t b) {
  if (a == kInf || b == kInf) return kInf;
  return a + b;
}

struct CutTruth {
  std::vector<EdgeId> cut;
  std::set<NodeId> boundary;
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::vector<EdgeId>> components;
  std::vector<bool> alive_without_cut;
};

inline CutTruth cut_truth(const hs2::Hypergraph& g, const std::vector<std::uint32_t>& label) {
  CutTruth t;
  t.alive_without_cut.assign(g.num_edges(), true);
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    std::set<std::uint32_t> cls;
    for (NodeId v : g.edge(e)) cls.insert(label[v]);
    if (cls.size() < 2) continue;
    t.cut.push_back(e);
    t.alive_without_cut[e] = false;
    for (NodeId v : g.edge(e)) t.boundary.insert(v);
    for (auto i : cls) {
      for (auto j : cls) {
        if (i < j) t.components[{i, j}].push_back(e);
      }
    }
  }
  return t;
}

/// Δ(e1, e2) straight from its definition: maximum over class pairs (i, j)
/// whose component holds both hyperedges.
inline std::uint32_t delta(const hs2::Hypergraph& g, const std::vector<std::uint32_t>& label, const CutTruth& t,
                           const std::vector<std::vector<std::uint32_t>>& dist, EdgeId e1, EdgeId e2) {
  auto h = [&](std::uint32_t c) {
    std::uint32_t sup = 0;
    for (NodeId x : g.edge(e1)) {
      if (label[x] != c) continue;
      std::uint32_t inf = kInf;
      for (NodeId y : g.edge(e2)) {
        if (label[y] == c) inf = std::min(inf, dist[x][y]);
      }
      sup = std::max(sup, inf);
    }
    return sup;
  };
  bool any = false;
  std::uint32_t best = 0;
  for (const auto& [pair, edges] : t.components) {
    const bool has1 = std::find(edges.begin(), edges.end(), e1) != edges.end();
    const bool has2 = std::find(edges.begin(), edges.end(), e2) != edges.end();
    if (!has1 || !has2) continue;
    const std::uint32_t value = sat_add(sat_add(h(pair.first), h(pair.second)), 1);
    best = any ? std::max(best, value) : value;
    any = true;
  }
  return any ? best : kInf;
}

/// Tarjan SCC count on the subgraph induced by `members` with arc a->b iff
/// w(a, b) <= r.
inline std::size_t scc_count(const std::vector<EdgeId>& members,
                             const std::function<std::uint32_t(EdgeId, EdgeId)>& w, std::uint32_t r) {
  const std::size_t n = members.size();
  std::vector<int> index(n, -1), low(n, 0);
  std::vector<bool> on(n, false);
  std::vector<std::size_t> stack;
  int counter = 0;
  std::size_t comps = 0;
  std::function<void(std::size_t)> visit = [&](std::size_t a) {
    index[a] = low[a] = counter++;
    stack.push_back(a);
    on[a] = true;
    for (std::size_t b = 0; b < n; ++b) {
      if (w(members[a], members[b]) > r) continue;
      if (index[b] < 0) {
        visit(b);
        low[a] = std::min(low[a], low[b]);
      } else if (on[b]) {
        low[a] = std::min(low[a], index[b]);
      }
    }
    if (low[a] == index[a]) {
      ++comps;
      while (true) {
        const std::size_t x = stack.back();
        stack.pop_back();
        on[x] = false;
        if (x == a) break;
      }
    }
  };
  for (std::size_t a = 0; a < n; ++a) {
    if (index[a] < 0) visit(a);
  }
  return comps;
}

/// κ by binary search over the sorted distinct Δ values, checking strong
/// connectivity of every cut component. nullopt when C is empty, kInf when
/// no finite radius works.
inline std::optional<std::uint32_t> kappa(const hs2::Hypergraph& g, const std::vector<std::uint32_t>& label) {
  const CutTruth t = cut_truth(g, label);
  if (t.cut.empty()) return std::nullopt;
  const auto dist = all_pairs(g, t.alive_without_cut);
  std::map<std::pair<EdgeId, EdgeId>, std::uint32_t> memo;
  auto w = [&](EdgeId a, EdgeId b) {
    auto it = memo.find({a, b});
    if (it != memo.end()) return it->second;
    return memo[{a, b}] = delta(g, label, t, dist, a, b);
  };
  std::set<std::uint32_t> values{1};
  for (const auto& [pair, edges] : t.components) {
    for (EdgeId a : edges) {
      for (EdgeId b : edges) {
        if (w(a, b) != kInf) values.insert(w(a, b));
      }
    }
  }
  auto ok = [&](std::uint32_t r) {
    for (const auto& [pair, edges] : t.components) {
      if (scc_count(edges, w, r) != 1) return false;
    }
    return true;
  };
  std::vector<std::uint32_t> cand(values.begin(), values.end());
  if (!ok(cand.back())) return kInf;
  std::size_t lo = 0, hi = cand.size() - 1;
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (ok(cand[mid])) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return cand[lo];
}

struct RandomInstance {
  hs2::Hypergraph graph;
  std::vector<std::uint32_t> label;
};

/// Random hypergraph on n nodes with up to m distinct hyperedges of size
/// 2..max_size, and a labelling that uses every class in [0, k).
inline RandomInstance random_instance(std::mt19937_64& rng, std::size_t n, std::size_t m, std::size_t max_size,
                                      std::size_t k) {
  std::set<std::vector<NodeId>> edges;
  std::uniform_int_distribution<std::size_t> size_pick(2, std::min(max_size, n));
  for (std::size_t tries = 0; tries < 4 * m && edges.size() < m; ++tries) {
    std::vector<NodeId> all(n);
    for (NodeId v = 0; v < n; ++v) all[v] = v;
    std::shuffle(all.begin(), all.end(), rng);
    std::vector<NodeId> e(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(size_pick(rng)));
    std::sort(e.begin(), e.end());
    edges.insert(e);
  }
  std::vector<std::vector<NodeId>> list(edges.begin(), edges.end());
  std::shuffle(list.begin(), list.end(), rng);
  std::vector<std::uint32_t> label(n);
  for (NodeId v = 0; v < n; ++v) label[v] = static_cast<std::uint32_t>(v < k ? v : rng() % k);
  std::shuffle(label.begin(), label.end(), rng);
  return {hs2::Hypergraph(n, list), label};
}

}  // namespace oracle
