#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"
#include "oracles.hpp"
#include "seedflow/driver.hpp"
#include "seedflow/errors.hpp"
#include "seedflow/eval.hpp"
#include "seedflow/io.hpp"
#include "seedflow/synth.hpp"

using namespace seedflow;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("seedflow_io_test_" + std::to_string(std::random_device{}()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

void write_file(const std::string& path, const std::string& content) {
  std::ofstream os(path);
  os << content;
}

const char* kBarbellFile =
    "# barbell, 1-based labels\n"
    "1 2\n1 3\n2 3\n3 4\n4 5\n4 6\n5 6\n";

}  // namespace

TEST_CASE("load_graph reads the barbell") {
  TempDir tmp;
  write_file(tmp.file("b6.txt"), kBarbellFile);
  const LoadedGraph lg = load_graph({tmp.file("b6.txt"), 1, false});
  CHECK(lg.graph.node_count() == 6);
  CHECK(lg.graph.total_volume() == doctest::Approx(14.0));
  CHECK(lg.external_of(lg.internal(4)) == 4);
  CHECK_THROWS_AS((void)lg.internal(99), ParseError);
}

TEST_CASE("load_graph policies and errors") {
  TempDir tmp;

  write_file(tmp.file("loop.txt"), "1 1\n1 2\n");
  const LoadedGraph with_loop = load_graph({tmp.file("loop.txt"), 1, false});
  CHECK(with_loop.stats.self_loops_dropped == 1);
  CHECK(with_loop.graph.edge_count() == 1);

  write_file(tmp.file("dup.txt"), "1 2 1\n2 1 1\n");
  const LoadedGraph merged = load_graph({tmp.file("dup.txt"), 1, true});
  CHECK(merged.stats.duplicates_merged == 1);
  CHECK(merged.graph.degree(0) == doctest::Approx(2.0));

  write_file(tmp.file("bad.txt"), "1 2\nnonsense here too many tokens extra\n");
  CHECK_THROWS_AS((void)load_graph({tmp.file("bad.txt"), 1, false}), ParseError);
  try {
    (void)load_graph({tmp.file("bad.txt"), 1, false});
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }

  write_file(tmp.file("negw.txt"), "1 2 -0.5\n");
  CHECK_THROWS_AS((void)load_graph({tmp.file("negw.txt"), 1, true}), ParseError);

  CHECK_THROWS_AS((void)load_graph({tmp.file("missing.txt"), 0, false}), ParseError);
}

TEST_CASE("re-emitted edge lists reload to the same graph") {
  TempDir tmp;
  write_file(tmp.file("g.txt"), "5 9 0.25\n9 17 1.5\n5 17 3\n");
  const LoadedGraph first = load_graph({tmp.file("g.txt"), 0, true});

  std::ostringstream emitted;
  write_edge_list(first, emitted, true);
  write_file(tmp.file("g2.txt"), emitted.str());
  const LoadedGraph second = load_graph({tmp.file("g2.txt"), 0, true});

  CHECK(second.external_ids == first.external_ids);
  REQUIRE(second.graph.node_count() == first.graph.node_count());
  for (NodeId v = 0; v < first.graph.node_count(); ++v)
    CHECK(second.graph.degree(v) == first.graph.degree(v));

  std::ostringstream round2;
  write_edge_list(second, round2, true);
  CHECK(round2.str() == emitted.str());
}

TEST_CASE("seed files parse flags and penalties") {
  TempDir tmp;
  write_file(tmp.file("b6.txt"), kBarbellFile);
  const LoadedGraph lg = load_graph({tmp.file("b6.txt"), 1, false});

  write_file(tmp.file("seeds.txt"), "# seeds\n1 1\n2\n3 0 0.75\n");
  const auto rows = load_seed_file(tmp.file("seeds.txt"));
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].strict);
  CHECK(!rows[1].penalty.has_value());
  CHECK(rows[2].penalty == doctest::Approx(0.75));

  const SeedSpec spec = make_seed_spec(lg, rows, 0.5, 0.25, false);
  CHECK(spec.seeds.size() == 3);
  CHECK(spec.strict.size() == 1);
  CHECK(spec.penalty_of(lg.internal(2)) == doctest::Approx(0.25));  // flag default
  CHECK(spec.penalty_of(lg.internal(3)) == doctest::Approx(0.75));  // explicit override
  CHECK(spec.epsilon == doctest::Approx(0.5));

  const SeedSpec all_strict = make_seed_spec(lg, rows, 0.5, 0.0, true);
  CHECK(all_strict.strict.size() == 3);

  write_file(tmp.file("badflag.txt"), "1 7\n");
  CHECK_THROWS_AS((void)load_seed_file(tmp.file("badflag.txt")), ParseError);
}

TEST_CASE("evaluate computes precision, recall, f1") {
  const NodeSet target{0, 1, 2, 3, 4, 5, 6, 7};
  CHECK_THROWS_AS((void)evaluate(NodeSet{0}, NodeSet{}), std::invalid_argument);

  auto exact = evaluate(target, target);
  CHECK(exact.precision == doctest::Approx(1.0));
  CHECK(exact.recall == doctest::Approx(1.0));
  CHECK(exact.f1 == doctest::Approx(1.0));

  auto disjoint = evaluate(NodeSet{100, 101}, target);
  CHECK(disjoint.precision == doctest::Approx(0.0));
  CHECK(disjoint.recall == doctest::Approx(0.0));
  CHECK(disjoint.f1 == doctest::Approx(0.0));

  auto partial = evaluate(NodeSet{0, 1, 100, 101}, target);
  CHECK(partial.precision == doctest::Approx(0.5));
  CHECK(partial.recall == doctest::Approx(0.25));
  CHECK(partial.f1 == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("evaluation is invariant under relabeling") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<NodeId> out_ids, tgt_ids;
    for (int i = 0; i < 20; ++i) {
      if (rng() % 2) out_ids.push_back(i);
      if (rng() % 2) tgt_ids.push_back(i);
    }
    if (tgt_ids.empty()) continue;
    const auto base = evaluate(NodeSet(out_ids), NodeSet(tgt_ids));
    auto relabel = [](std::vector<NodeId> ids) {
      for (auto& v : ids) v = 1000 - v * 3;
      return NodeSet(std::move(ids));
    };
    const auto moved = evaluate(relabel(out_ids), relabel(tgt_ids));
    CHECK(base.precision == doctest::Approx(moved.precision));
    CHECK(base.recall == doctest::Approx(moved.recall));
    CHECK(base.f1 == doctest::Approx(moved.f1));
  }
}

TEST_CASE("make_seed samples deterministically and grows one hop") {
  const Graph g = oracle::barbell6();
  const NodeSet target{0, 1, 2};

  const auto full = make_seed(g, target, 1.0, 7);
  CHECK(full.starters == target);
  CHECK(full.seeds == NodeSet{0, 1, 2, 3});  // boundary neighbor joins

  const auto a = make_seed(g, target, 0.34, 99);
  const auto b = make_seed(g, target, 0.34, 99);
  CHECK(a.starters == b.starters);
  CHECK(a.seeds == b.seeds);
  CHECK(a.starters.size() == 2);  // ceil(0.34 * 3)

  // The one-hop closure contains every neighbor of every starter.
  for (NodeId v : a.starters)
    for (NodeId w : g.neighbors(v)) CHECK(a.seeds.contains(w));

  CHECK_THROWS_AS((void)make_seed(g, NodeSet{}, 0.5, 1), std::invalid_argument);
  CHECK_THROWS_AS((void)make_seed(g, target, 0.0, 1), std::invalid_argument);
}

TEST_CASE("planted graphs are deterministic and label block 0 as target") {
  SbmParams params;
  params.block_sizes = {30, 50};
  params.p_in = 0.3;
  params.p_out = 0.05;
  params.rng_seed = 123;

  const auto a = generate_planted(params);
  const auto b = generate_planted(params);
  CHECK(a.graph.edge_count() == b.graph.edge_count());
  CHECK(a.target.size() == 30);
  CHECK(a.graph.node_count() == 80);
  const auto ea = a.graph.edges();
  const auto eb = b.graph.edges();
  REQUIRE(ea.size() == eb.size());
  for (std::size_t i = 0; i < ea.size(); ++i) {
    CHECK(ea[i].u == eb[i].u);
    CHECK(ea[i].v == eb[i].v);
  }

  // Degenerate documented case: a clique block with no outside edges.
  SbmParams clique;
  clique.block_sizes = {10, 10};
  clique.p_in = 1.0;
  clique.p_out = 0.0;
  clique.rng_seed = 5;
  const auto c = generate_planted(clique);
  CHECK(c.graph.cut(c.target) == doctest::Approx(0.0));
}

TEST_CASE("result documents round-trip the member set") {
  TempDir tmp;
  write_file(tmp.file("b6.txt"), kBarbellFile);
  const LoadedGraph lg = load_graph({tmp.file("b6.txt"), 1, false});

  SeedSpec spec;
  spec.seeds = NodeSet{lg.internal(1), lg.internal(2), lg.internal(3)};
  spec.strict = NodeSet{lg.internal(1)};
  spec.epsilon = 1.0;
  const auto result = cluster(lg.graph, spec);

  ResultWriteOptions opts;
  opts.epsilon = 1.0;
  const std::string doc = result_to_json(result, lg, opts);
  write_result(doc, tmp.file("out.json"));

  const auto members = read_result_members(tmp.file("out.json"));
  NodeSet internal;
  for (NodeId ext : members) internal.insert(lg.internal(ext));
  CHECK(internal == result.best_set);
  CHECK(members.size() == 3);

  // Writer refuses an empty member set.
  ClusterResult empty = result;
  empty.best_set = NodeSet{};
  CHECK_THROWS_AS((void)result_to_json(empty, lg, opts), std::invalid_argument);
}
