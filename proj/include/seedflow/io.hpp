#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "seedflow/driver.hpp"
#include "seedflow/eval.hpp"
#include "seedflow/graph.hpp"

namespace seedflow {

/// Edge-list file: whitespace-delimited "u v [w]" lines, '#' comments.
struct EdgeListFile {
  std::string path;
  int index_base = 0;  // smallest admissible external id
  bool weighted = true;  // emit weights when writing
};

/// Graph plus the external-id remap table. External ids may be sparse or
/// 1-based; internally nodes are dense 0..n-1 in ascending external order.
struct LoadedGraph {
  Graph graph;
  std::vector<NodeId> external_ids;                 // internal -> external
  std::unordered_map<NodeId, NodeId> to_internal;   // external -> internal
  Graph::BuildStats stats;

  NodeId internal(NodeId external) const;  // throws ParseError on unknown id
  NodeId external_of(NodeId internal) const { return external_ids[internal]; }
};

LoadedGraph load_graph(const EdgeListFile& file);

/// Re-emits the graph as an edge list with external ids, full precision.
/// Loading the emitted list reproduces the graph exactly.
void write_edge_list(const LoadedGraph& lg, std::ostream& os, bool weighted = true);

/// Seed file row: "node [strict] [penalty]"; strict defaults to 0 and an
/// omitted penalty lets a CLI-wide default apply.
struct SeedFileRow {
  NodeId node = 0;
  bool strict = false;
  std::optional<double> penalty;
};

std::vector<SeedFileRow> load_seed_file(const std::string& path);
void write_seed_file(const std::vector<SeedFileRow>& rows, std::ostream& os);

SeedSpec make_seed_spec(const LoadedGraph& lg, const std::vector<SeedFileRow>& rows,
                        double epsilon, double default_penalty, bool strict_all);

/// Node-list file (one external id per line, '#' comments), mapped to
/// internal ids.
NodeSet load_node_list(const std::string& path, const LoadedGraph& lg);

struct ResultWriteOptions {
  bool include_timing = false;  // omitted by default so identical runs produce identical bytes
  std::string mode = "flowseed";
  std::string alpha_update = "pi";
  double epsilon = 0.0;
};

/// Structured result document (key names in docs/formats.md). Throws
/// std::invalid_argument for an empty best set.
std::string result_to_json(const ClusterResult& result, const LoadedGraph& lg,
                           const ResultWriteOptions& opts,
                           const std::optional<EvalReport>& eval = std::nullopt);

void write_result(const std::string& json_text, const std::string& path);

/// Member set of a result document (external ids as stored).
std::vector<NodeId> read_result_members(const std::string& path);

/// Flat member table: one external id per line.
void write_members(const ClusterResult& result, const LoadedGraph& lg, std::ostream& os);

}  // namespace seedflow
