#pragma once

#include <cstdint>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "seedflow/flownet.hpp"
#include "seedflow/graph.hpp"
#include "seedflow/objective.hpp"

namespace seedflow {

/// Growing subgraph maintained by the localized min-cut procedure.
///
/// Nodes are either edge-complete (every incident edge of the base graph has
/// been materialized) or edge-incomplete. Only edge-incomplete nodes with
/// nonzero local degree are tracked; the rest of the graph is never touched.
/// Every materialized edge has at least one edge-complete endpoint.
class LocalGraph {
 public:
  /// Starts from the seed set: seeds are edge-complete, their incident edges
  /// form the local edge set, and their outside neighbors become touched
  /// incomplete nodes.
  static LocalGraph init(const Graph& g, const SeedSpec& spec);

  bool edge_complete(NodeId v) const { return complete_.find(v) != complete_.end(); }
  bool touched(NodeId v) const { return local_degree_.find(v) != local_degree_.end(); }
  double local_degree(NodeId v) const;

  std::int64_t explored_edge_count() const { return edge_count_; }
  /// Twice the total weight of materialized edges.
  double local_volume() const { return 2.0 * edge_weight_; }
  std::size_t complete_count() const { return complete_.size(); }

  /// Sorted snapshots (diagnostics and tests).
  NodeSet edge_complete_set() const;
  NodeSet touched_incomplete_set() const;

  struct Delta {
    std::vector<NodeId> new_interior;  // nodes touched for the first time
    std::vector<Graph::WeightedEdge> new_edges;
    int already_complete = 0;
  };

  /// Makes every node of new_nodes edge-complete, materializing its missing
  /// incident edges. Expanding an already-complete node is a counted no-op.
  /// Returns the delta to feed into flow::insert.
  Delta expand(const Graph& g, const NodeSet& new_nodes);

  /// Materialized edges, each reported once (deterministic order).
  std::vector<Graph::WeightedEdge> local_edges(const Graph& g) const;

 private:
  std::unordered_set<NodeId> complete_;
  std::unordered_map<NodeId, double> local_degree_;  // all touched nodes
  std::int64_t edge_count_ = 0;
  double edge_weight_ = 0.0;
};

struct LocalSolveReport {
  NodeSet minimizer;
  double objective_value = 0.0;       // evaluated on the full graph
  double local_objective_value = 0.0; // final local min-cut value; equals
                                      // objective_value once the minimizer is
                                      // edge-complete
  int rounds = 0;
  std::int64_t explored_edges = 0;
  double peak_local_volume = 0.0;
  std::int64_t pushes = 0;
  std::int64_t relabels = 0;
  std::int64_t global_relabels = 0;
};

/// Cut network for the current local graph. Source arcs carry
/// alpha * (1 + p_r) * d_r with p_r = vol(G)/alpha for strict seeds; sink
/// arcs carry alpha * epsilon * d_v using the GLOBAL degree of v, also for
/// edge-incomplete nodes. With the infinite-epsilon sentinel the network is
/// restricted to the seed set and boundary edges turn into sink capacity.
flow::FlowNetwork build_local_cut_network(const LocalGraph& lg, const Graph& g,
                                          const SeedSpec& spec, double alpha);

/// Minimizes the alpha cut objective over the whole graph by solving
/// localized min-cuts on a growing subgraph, warm-starting the flow state
/// across expansions, until the minimizer consists of edge-complete nodes.
LocalSolveReport local_min_cut(const Graph& g, const SeedSpec& spec, double alpha);

}  // namespace seedflow
