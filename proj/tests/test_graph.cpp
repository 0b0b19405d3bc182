#include <random>
#include <stdexcept>

#include "doctest.h"
#include "oracles.hpp"
#include "seedflow/graph.hpp"

using namespace seedflow;

TEST_CASE("node set basics") {
  NodeSet s{3, 1, 2, 3};
  CHECK(s.size() == 3);
  CHECK(s.contains(1));
  CHECK(!s.contains(0));
  CHECK(s.ids() == std::vector<NodeId>{1, 2, 3});

  s.insert(0);
  s.insert(2);
  CHECK(s.ids() == std::vector<NodeId>{0, 1, 2, 3});

  NodeSet t{2, 3, 9};
  CHECK(s.intersect(t) == NodeSet{2, 3});
  CHECK(s.unite(t) == NodeSet{0, 1, 2, 3, 9});
  CHECK(s.minus(t) == NodeSet{0, 1});
  CHECK(NodeSet{2, 3}.subset_of(s));
  CHECK(!t.subset_of(s));
  CHECK(NodeSet{}.subset_of(s));
}

TEST_CASE("degrees and volumes on the barbell") {
  const Graph g = oracle::barbell6();
  CHECK(g.node_count() == 6);
  CHECK(g.edge_count() == 7);
  CHECK(g.degree(2) == doctest::Approx(3.0));
  CHECK(g.total_volume() == doctest::Approx(14.0));
  CHECK(g.volume(NodeSet{0, 1, 2}) == doctest::Approx(7.0));
  CHECK(g.volume(NodeSet{}) == doctest::Approx(0.0));

  std::vector<NodeId> all{0, 1, 2, 3, 4, 5};
  CHECK(g.volume(NodeSet(all)) == doctest::Approx(g.total_volume()));
}

TEST_CASE("degree edge cases") {
  const Graph isolated = Graph::from_edges(3, {{0, 1, 1.0}});
  CHECK(isolated.degree(2) == doctest::Approx(0.0));

  const Graph single = Graph::from_edges(2, {{0, 1, 2.5}});
  CHECK(single.degree(0) == doctest::Approx(2.5));

  CHECK_THROWS_AS((void)single.degree(7), std::out_of_range);
  CHECK_THROWS_AS((void)single.degree(-1), std::out_of_range);
}

TEST_CASE("cut values") {
  const Graph g = oracle::barbell6();
  CHECK(g.cut(NodeSet{0, 1, 2}) == doctest::Approx(1.0));
  CHECK(g.cut(NodeSet{0, 1, 2, 3, 4, 5}) == doctest::Approx(0.0));
  CHECK(g.cut(NodeSet{2}) == doctest::Approx(g.degree(2)));
}

TEST_CASE("conductance values and errors") {
  const Graph g = oracle::barbell6();
  CHECK(g.conductance(NodeSet{0, 1, 2}) == doctest::Approx(1.0 / 7.0));
  CHECK(g.conductance(NodeSet{2}) == doctest::Approx(1.0));
  // Complement of one triangle node: cut 2, volumes 12 vs 2.
  CHECK(g.conductance(NodeSet{0, 1, 2, 3, 4}) == doctest::Approx(2.0 / 2.0));

  CHECK_THROWS_AS((void)g.conductance(NodeSet{}), std::invalid_argument);
  CHECK_THROWS_AS((void)g.conductance(NodeSet{0, 1, 2, 3, 4, 5}), std::invalid_argument);
}

TEST_CASE("construction merges duplicates and drops self-loops") {
  Graph::BuildStats stats;
  const Graph g = Graph::from_edges(
      3, {{0, 1, 1.0}, {1, 0, 1.0}, {1, 1, 5.0}, {1, 2, 0.5}}, &stats);
  CHECK(stats.duplicates_merged == 1);
  CHECK(stats.self_loops_dropped == 1);
  CHECK(g.degree(0) == doctest::Approx(2.0));  // merged weight
  CHECK(g.degree(1) == doctest::Approx(2.5));
  CHECK(g.edge_count() == 2);

  CHECK_THROWS_AS(Graph::from_edges(2, {{0, 1, 0.0}}), std::invalid_argument);
  CHECK_THROWS_AS(Graph::from_edges(2, {{0, 1, -1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(Graph::from_edges(2, {{0, 5, 1.0}}), std::invalid_argument);
}

TEST_CASE("rebuilding from the emitted edge list is a fixed point") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const Graph g = oracle::random_graph(8, 0.4, rng);
    const Graph h = Graph::from_edges(g.node_count(), g.edges());
    CHECK(h.edges().size() == g.edges().size());
    for (NodeId v = 0; v < g.node_count(); ++v)
      CHECK(h.degree(v) == doctest::Approx(g.degree(v)));
    const auto ge = g.edges();
    const auto he = h.edges();
    REQUIRE(ge.size() == he.size());
    for (std::size_t i = 0; i < ge.size(); ++i) {
      CHECK(ge[i].u == he[i].u);
      CHECK(ge[i].v == he[i].v);
      CHECK(ge[i].weight == doctest::Approx(he[i].weight));
    }
  }
}

TEST_CASE("cut and volume symmetries on random graphs") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const Graph g = oracle::random_graph(9, 0.4, rng);
    const std::uint32_t mask = static_cast<std::uint32_t>(rng() % (1u << 9));
    const NodeSet s = oracle::subset_from_mask(mask, 9);
    std::vector<NodeId> rest;
    for (NodeId v = 0; v < 9; ++v)
      if (!s.contains(v)) rest.push_back(v);
    const NodeSet complement(std::move(rest));

    CHECK(g.cut(s) == doctest::Approx(g.cut(complement)).epsilon(1e-12));
    CHECK(g.volume(s) + g.volume(complement) == doctest::Approx(g.total_volume()).epsilon(1e-12));

    // cut(S) = vol(S) - 2 * internal edge weight
    double internal = 0.0;
    for (const auto& e : g.edges())
      if (s.contains(e.u) && s.contains(e.v)) internal += e.weight;
    CHECK(g.cut(s) == doctest::Approx(g.volume(s) - 2.0 * internal).epsilon(1e-12));

    if (!s.empty() && !complement.empty() && g.volume(s) > 0 && g.volume(complement) > 0)
      CHECK(g.conductance(s) == doctest::Approx(g.conductance(complement)).epsilon(1e-12));
  }
}
