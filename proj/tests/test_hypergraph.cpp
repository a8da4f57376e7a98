#include <doctest.h>

#include <random>
#include <sstream>

#include "hs2/hypergraph.hpp"
#include "oracles.hpp"

using namespace hs2;

namespace {

Hypergraph line(std::size_t n) {
  std::vector<std::vector<NodeId>> edges;
  for (NodeId v = 0; v + 1 < n; ++v) edges.push_back({v, v + 1});
  return Hypergraph(n, edges);
}

std::vector<std::uint32_t> flatten(const HyperPath& p) {
  std::vector<std::uint32_t> out;
  for (std::size_t i = 0; i < p.edges.size(); ++i) {
    out.push_back(p.edges[i]);
    if (i < p.junctions.size()) out.push_back(p.junctions[i]);
  }
  return out;
}

}  // namespace

TEST_SUITE("hypergraph-core") {
  TEST_CASE("construction sorts members and builds incidence") {
    Hypergraph g(5, {{3, 1, 0}, {4, 2}, {1, 2}});
    CHECK(g.num_nodes() == 5);
    CHECK(g.num_edges() == 3);
    auto e0 = g.edge(0);
    CHECK(std::vector<NodeId>(e0.begin(), e0.end()) == std::vector<NodeId>{0, 1, 3});
    auto inc = g.incident(1);
    CHECK(std::vector<EdgeId>(inc.begin(), inc.end()) == std::vector<EdgeId>{0, 2});
    CHECK(g.incident(4).size() == 1);
    CHECK(g.incidence_consistent());
    CHECK_FALSE(g.is_two_uniform());
    CHECK(line(4).is_two_uniform());
  }

  TEST_CASE("construction rejects bad input") {
    CHECK_THROWS_AS(Hypergraph(0, {}), Error);
    CHECK_THROWS_AS(Hypergraph(3, {{0}}), Error);
    CHECK_THROWS_AS(Hypergraph(3, {{0, 0}}), Error);
    CHECK_THROWS_AS(Hypergraph(3, {{0, 3}}), Error);
    CHECK_THROWS_WITH_AS(Hypergraph(3, {{0, 1}, {1, 0}}), doctest::Contains("duplicate"), Error);
    CHECK_NOTHROW(Hypergraph(3, {}));
  }

  TEST_CASE("text format round-trips bit-exactly") {
    const std::string text = "6 3\n0 1 2\n2 3\n3 4 5\n";
    std::istringstream in(text);
    const Hypergraph g = read_hypergraph(in);
    std::ostringstream out;
    write_hypergraph(out, g);
    CHECK(out.str() == text);

    std::istringstream commented("# header\n6 3\n0 1 2\n\n# mid\n2 3\n3 4 5\n");
    CHECK(read_hypergraph(commented) == g);
  }

  TEST_CASE("reader reports line numbers") {
    auto fails_with = [](const std::string& text, const std::string& what) {
      std::istringstream in(text);
      CHECK_THROWS_WITH_AS(read_hypergraph(in), doctest::Contains(what.c_str()), Error);
    };
    fails_with("", "empty");
    fails_with("3\n", "line 1");
    fails_with("3 1\n2 1\n", "line 2");
    fails_with("3 1\n0 x\n", "line 2");
    fails_with("3 1\n0 5\n", "out of range");
    fails_with("3 2\n0 1\n", "expected 2");
    fails_with("3 1\n0 1\n1 2\n", "trailing");
    fails_with("3 2\n0 1\n0 1\n", "duplicate");
  }

  TEST_CASE("line graph distances and the middle junction") {
    const Hypergraph g = line(5);
    const NodeId src[] = {0};
    const auto d = distances_from(g, src);
    CHECK(d == std::vector<Distance>{0, 1, 2, 3, 4});
    const auto capped = distances_from(g, src, 2);
    CHECK(capped == std::vector<Distance>{0, 1, 2, kInfinite, kInfinite});

    const auto p = shortest_path(g, 0, 4);
    REQUIRE(p);
    CHECK(p->length() == 4);
    CHECK(p->junctions == std::vector<NodeId>{1, 2, 3});
    CHECK(is_valid_path(g, *p));
    CHECK(shortest_path(g, 3, 3)->length() == 0);
  }

  TEST_CASE("disconnected pairs have no path") {
    Hypergraph g(4, {{0, 1}, {2, 3}});
    CHECK_FALSE(shortest_path(g, 0, 3).has_value());
    const NodeId src[] = {0};
    CHECK(distances_from(g, src)[3] == kInfinite);
    CHECK(connected_components(g) == std::vector<std::vector<NodeId>>{{0, 1}, {2, 3}});
  }

  TEST_CASE("ties go to the smallest hyperedge, then the smallest junction") {
    // Two length-2 routes from 0 to 3: via edge 1 then 3, or via edge 0.
    Hypergraph g(4, {{0, 2}, {0, 1}, {2, 3}, {1, 3}});
    const auto p = shortest_path(g, 0, 3);
    REQUIRE(p);
    CHECK(p->edges == std::vector<EdgeId>{0, 2});
    CHECK(p->junctions == std::vector<NodeId>{2});
  }

  TEST_CASE("BFS agrees with exhaustive path enumeration") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 60; ++trial) {
      const std::size_t n = 2 + rng() % 8;
      const auto inst = oracle::random_instance(rng, n, 1 + rng() % 10, 4, 1);
      std::vector<std::uint8_t> mask(inst.graph.num_edges());
      std::vector<bool> alive(inst.graph.num_edges());
      for (std::size_t e = 0; e < mask.size(); ++e) alive[e] = mask[e] = (rng() % 5) != 0;
      const HypergraphView view(inst.graph, mask);
      for (NodeId u = 0; u < n; ++u) {
        const NodeId src[] = {u};
        const auto d = distances_from(view, src);
        for (NodeId v = 0; v < n; ++v) {
          const auto paths = oracle::all_shortest_paths(inst.graph, u, v, alive);
          const auto p = shortest_path(view, u, v);
          if (paths.empty()) {
            CHECK(d[v] == kInfinite);
            CHECK_FALSE(p.has_value());
            continue;
          }
          REQUIRE(p.has_value());
          CHECK(d[v] == (paths.front().size() + 1) / 2);
          CHECK(flatten(*p) == paths.front());
          CHECK(is_valid_path(inst.graph, *p));
        }
      }
    }
  }

  TEST_CASE("component ids are numbered by smallest member") {
    Hypergraph g(6, {{4, 5}, {0, 3}, {1, 2}});
    CHECK(component_ids(g) == std::vector<std::uint32_t>{0, 1, 1, 0, 2, 2});
  }

  TEST_CASE("edge removal keeps an id map") {
    Hypergraph g(4, {{0, 1}, {1, 2}, {2, 3}});
    const EdgeId drop[] = {1};
    const auto r = remove_edges(g, drop);
    CHECK(r.graph.num_edges() == 2);
    CHECK(r.new_to_old == std::vector<EdgeId>{0, 2});
    CHECK(r.old_to_new == std::vector<EdgeId>{0, kRemovedEdge, 1});
    const EdgeId bad[] = {7};
    CHECK_THROWS_AS(remove_edges(g, bad), Error);
  }

  TEST_CASE("clique expansion") {
    Hypergraph four(4, {{0, 1, 2, 3}});
    const Hypergraph ce = clique_expansion(four);
    CHECK(ce.num_edges() == 6);
    CHECK(ce.is_two_uniform());

    // Shared pairs appear once.
    Hypergraph two(4, {{0, 1, 2}, {1, 2, 3}});
    CHECK(clique_expansion(two).num_edges() == 5);

    const Hypergraph l = line(5);
    CHECK(clique_expansion(l) == l);
  }

  TEST_CASE("clique expansion preserves node-to-node distances") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 40; ++trial) {
      const auto inst = oracle::random_instance(rng, 9, 8, 5, 1);
      const Hypergraph ce = clique_expansion(inst.graph);
      for (NodeId u = 0; u < 9; ++u) {
        const NodeId src[] = {u};
        CHECK(distances_from(inst.graph, src) == distances_from(ce, src));
      }
    }
  }
}
