#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "seedflow/graph.hpp"

namespace seedflow::flow {

/// Absolute tolerance for "saturated" / "active" tests on floating-point
/// capacities.
inline constexpr double kFlowTol = 1e-10;

struct InteriorNode {
  NodeId id = 0;
  double sink_cap = 0.0;
};

struct InteriorEdge {
  NodeId u = 0;
  NodeId v = 0;
  double cap = 0.0;
};

struct SourceArc {
  NodeId id = 0;
  double cap = 0.0;
};

/// s-t network over interior nodes identified by caller-provided ids.
///
/// Undirected interior edges become paired directed arcs, each carrying the
/// edge capacity; terminal edges become a forward arc plus a zero-capacity
/// reverse arc. The reverse of arc a is a ^ 1. Internal node 0 is the source,
/// 1 the sink; interior nodes occupy indices from 2 up and may be appended by
/// insert(). Duplicate arcs between the same node pair are merged by capacity
/// addition.
struct FlowNetwork {
  static constexpr int kSource = 0;
  static constexpr int kSink = 1;

  FlowNetwork(std::span<const InteriorNode> interior, std::span<const InteriorEdge> edges,
              std::span<const SourceArc> source_arcs);

  int node_count() const { return static_cast<int>(adj.size()); }
  int interior_count() const { return node_count() - 2; }
  std::int64_t arc_count() const { return static_cast<std::int64_t>(to.size()); }

  bool has_interior(NodeId id) const { return index.find(id) != index.end(); }
  int index_of(NodeId id) const;
  NodeId external_id(int internal) const { return external[internal]; }

  std::vector<NodeId> external;                    // internal -> external; s,t are -1
  std::unordered_map<NodeId, std::int32_t> index;  // external -> internal
  std::vector<std::vector<std::int32_t>> adj;      // per node: arc ids
  std::vector<std::int32_t> to;                    // arc head
  std::vector<double> cap;                         // arc capacity
};

/// Mutable solver state: residual capacities (flow is cap - residual, skew
/// symmetric through arc pairing), per-node excess, distance labels in
/// {0,...,n}, and the FIFO queue of active nodes.
struct FlowState {
  std::vector<double> residual;  // per arc
  std::vector<double> excess;    // per node
  std::vector<std::int32_t> label;
  std::vector<std::int32_t> current;  // per node: next arc position to scan
  std::vector<std::int32_t> fifo;
  std::size_t fifo_head = 0;
  std::vector<std::uint8_t> queued;

  bool source_saturated = false;
  bool converged = false;
  bool audit = false;  // verify invariants after every discharge (tests only)

  // Cumulative telemetry.
  std::int64_t pushes = 0;
  std::int64_t relabels = 0;
  std::int64_t global_relabels = 0;

  // Work since the last global relabel.
  std::int64_t work_relabels = 0;
  std::int64_t work_scans = 0;
};

struct MinCutResult {
  NodeSet source_side;  // interior nodes (external ids) on the s side
  double cut_value = 0.0;
  std::int64_t pushes = 0;
  std::int64_t relabels = 0;
  std::int64_t global_relabels = 0;
};

/// Fresh zero-preflow state for net.
FlowState make_state(const FlowNetwork& net);

/// Runs FIFO preflow-push until no active nodes remain, starting from the
/// given state (fresh or carried over from a previous solve on a smaller
/// network). A global relabel runs at every solve start and periodically
/// thereafter. Only the cut-finding phase is performed; excess trapped at
/// interior nodes is never routed back to the source.
MinCutResult solve_min_cut(const FlowNetwork& net, FlowState& state);

/// Grows the network after a completed solve: new interior nodes (with their
/// sink capacities) and new interior edges. Existing flow is preserved; new
/// arcs start empty. Adding source arcs after construction is not supported,
/// which keeps the carried preflow valid. Throws std::logic_error when the
/// state has pending active nodes.
void insert(FlowNetwork& net, FlowState& state, std::span<const InteriorNode> new_interior,
            std::span<const InteriorEdge> new_edges);

/// BFS from the sink over reverse residual arcs. Labels become exact
/// residual distances to the sink; unreachable nodes and the source get n.
/// Rebuilds the FIFO queue with exactly the active nodes.
void global_relabel(const FlowNetwork& net, FlowState& state);

/// Source side of a minimum cut: interior nodes with no residual path to the
/// sink. Requires a converged state (throws std::logic_error otherwise).
NodeSet extract_source_side(const FlowNetwork& net, const FlowState& state);

/// Total capacity of arcs leaving {s} ∪ side.
double crossing_capacity(const FlowNetwork& net, const NodeSet& side);

/// Preflow value that has reached the sink.
double sink_inflow(const FlowNetwork& net, const FlowState& state);

/// Audits preflow invariants (capacity constraints, nonnegative excess, arc
/// pair consistency, excess bookkeeping), plus label validity when
/// check_labels is set. After insert the carried preflow must stay valid but
/// labels are stale until the next solve's global relabel, so label checks
/// are optional. Returns false and fills `why` on the first violation.
bool check_preflow(const FlowNetwork& net, const FlowState& state, std::string* why = nullptr,
                   bool check_labels = true);

}  // namespace seedflow::flow
