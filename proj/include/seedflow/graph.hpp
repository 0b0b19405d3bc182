#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace seedflow {

using NodeId = std::int64_t;

/// Sorted, duplicate-free set of node ids.
class NodeSet {
 public:
  NodeSet() = default;
  explicit NodeSet(std::vector<NodeId> ids);
  NodeSet(std::initializer_list<NodeId> ids);

  bool contains(NodeId v) const;
  bool empty() const { return ids_.empty(); }
  std::size_t size() const { return ids_.size(); }

  void insert(NodeId v);

  bool subset_of(const NodeSet& other) const;
  NodeSet unite(const NodeSet& other) const;
  NodeSet intersect(const NodeSet& other) const;
  NodeSet minus(const NodeSet& other) const;

  auto begin() const { return ids_.begin(); }
  auto end() const { return ids_.end(); }
  const std::vector<NodeId>& ids() const { return ids_; }

  bool operator==(const NodeSet&) const = default;

 private:
  std::vector<NodeId> ids_;  // sorted, unique
};

/// Immutable weighted undirected graph with dense node ids 0..n-1.
///
/// Construction merges duplicate edges by summing weights and drops
/// self-loops; both events are counted in BuildStats. All weights must be
/// positive. Safe to share across concurrent readers.
class Graph {
 public:
  struct WeightedEdge {
    NodeId u = 0;
    NodeId v = 0;
    double weight = 1.0;
  };

  struct BuildStats {
    std::int64_t self_loops_dropped = 0;
    std::int64_t duplicates_merged = 0;
  };

  Graph() = default;

  static Graph from_edges(NodeId node_count, std::vector<WeightedEdge> edges,
                          BuildStats* stats = nullptr);

  NodeId node_count() const { return node_count_; }
  std::int64_t edge_count() const { return static_cast<std::int64_t>(nbr_.size()) / 2; }

  /// Weighted degree of v. Throws std::out_of_range for bad ids.
  double degree(NodeId v) const;
  double total_volume() const { return total_volume_; }

  std::span<const NodeId> neighbors(NodeId v) const;
  std::span<const double> weights(NodeId v) const;

  /// Sum of degrees over s.
  double volume(const NodeSet& s) const;
  /// Total weight of edges with exactly one endpoint in s.
  double cut(const NodeSet& s) const;
  /// cut(s) / min(vol(s), vol(complement)). Throws std::invalid_argument when
  /// the denominator is zero (empty set, full set, or zero-volume side).
  double conductance(const NodeSet& s) const;

  /// Canonical edge list (u < v), sorted.
  std::vector<WeightedEdge> edges() const;

 private:
  void check_node(NodeId v) const;

  NodeId node_count_ = 0;
  std::vector<std::size_t> offsets_;
  std::vector<NodeId> nbr_;
  std::vector<double> w_;
  std::vector<double> degree_;
  double total_volume_ = 0.0;
};

}  // namespace seedflow
