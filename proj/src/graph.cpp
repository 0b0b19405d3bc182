#include "seedflow/graph.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace seedflow {

NodeSet::NodeSet(std::vector<NodeId> ids) : ids_(std::move(ids)) {
  std::sort(ids_.begin(), ids_.end());
  ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
}

NodeSet::NodeSet(std::initializer_list<NodeId> ids) : NodeSet(std::vector<NodeId>(ids)) {}

bool NodeSet::contains(NodeId v) const {
  return std::binary_search(ids_.begin(), ids_.end(), v);
}

void NodeSet::insert(NodeId v) {
  auto it = std::lower_bound(ids_.begin(), ids_.end(), v);
  if (it == ids_.end() || *it != v) ids_.insert(it, v);
}

bool NodeSet::subset_of(const NodeSet& other) const {
  return std::includes(other.ids_.begin(), other.ids_.end(), ids_.begin(), ids_.end());
}

NodeSet NodeSet::unite(const NodeSet& other) const {
  std::vector<NodeId> out;
  out.reserve(ids_.size() + other.ids_.size());
  std::set_union(ids_.begin(), ids_.end(), other.ids_.begin(), other.ids_.end(),
                 std::back_inserter(out));
  NodeSet r;
  r.ids_ = std::move(out);
  return r;
}

NodeSet NodeSet::intersect(const NodeSet& other) const {
  std::vector<NodeId> out;
  std::set_intersection(ids_.begin(), ids_.end(), other.ids_.begin(), other.ids_.end(),
                        std::back_inserter(out));
  NodeSet r;
  r.ids_ = std::move(out);
  return r;
}

NodeSet NodeSet::minus(const NodeSet& other) const {
  std::vector<NodeId> out;
  std::set_difference(ids_.begin(), ids_.end(), other.ids_.begin(), other.ids_.end(),
                      std::back_inserter(out));
  NodeSet r;
  r.ids_ = std::move(out);
  return r;
}

Graph Graph::from_edges(NodeId node_count, std::vector<WeightedEdge> edges, BuildStats* stats) {
  if (node_count < 0) throw std::invalid_argument("negative node count");
  BuildStats local;

  std::vector<WeightedEdge> kept;
  kept.reserve(edges.size());
  for (const auto& e : edges) {
    if (e.u < 0 || e.u >= node_count || e.v < 0 || e.v >= node_count)
      throw std::invalid_argument("edge endpoint out of range: " + std::to_string(e.u) + "," +
                                  std::to_string(e.v));
    if (!(e.weight > 0.0) || !std::isfinite(e.weight))
      throw std::invalid_argument("edge weight must be positive and finite");
    if (e.u == e.v) {
      ++local.self_loops_dropped;
      continue;
    }
    kept.push_back({std::min(e.u, e.v), std::max(e.u, e.v), e.weight});
  }

  std::sort(kept.begin(), kept.end(), [](const WeightedEdge& a, const WeightedEdge& b) {
    return a.u != b.u ? a.u < b.u : a.v < b.v;
  });
  std::vector<WeightedEdge> merged;
  merged.reserve(kept.size());
  for (const auto& e : kept) {
    if (!merged.empty() && merged.back().u == e.u && merged.back().v == e.v) {
      merged.back().weight += e.weight;
      ++local.duplicates_merged;
    } else {
      merged.push_back(e);
    }
  }

  Graph g;
  g.node_count_ = node_count;
  g.offsets_.assign(static_cast<std::size_t>(node_count) + 1, 0);
  for (const auto& e : merged) {
    ++g.offsets_[static_cast<std::size_t>(e.u) + 1];
    ++g.offsets_[static_cast<std::size_t>(e.v) + 1];
  }
  for (std::size_t i = 1; i < g.offsets_.size(); ++i) g.offsets_[i] += g.offsets_[i - 1];

  g.nbr_.resize(g.offsets_.back());
  g.w_.resize(g.offsets_.back());
  std::vector<std::size_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
  for (const auto& e : merged) {
    g.nbr_[fill[e.u]] = e.v;
    g.w_[fill[e.u]++] = e.weight;
    g.nbr_[fill[e.v]] = e.u;
    g.w_[fill[e.v]++] = e.weight;
  }
  // Rows pick up entries in two passes (as lower and upper endpoint); sort
  // each row so adjacency is ordered by neighbor id.
  for (NodeId v = 0; v < node_count; ++v) {
    const std::size_t lo = g.offsets_[v], hi = g.offsets_[v + 1];
    std::vector<std::pair<NodeId, double>> row;
    row.reserve(hi - lo);
    for (std::size_t i = lo; i < hi; ++i) row.emplace_back(g.nbr_[i], g.w_[i]);
    std::sort(row.begin(), row.end());
    for (std::size_t i = lo; i < hi; ++i) {
      g.nbr_[i] = row[i - lo].first;
      g.w_[i] = row[i - lo].second;
    }
  }

  g.degree_.assign(static_cast<std::size_t>(node_count), 0.0);
  for (NodeId v = 0; v < node_count; ++v) {
    double d = 0.0;
    for (std::size_t i = g.offsets_[v]; i < g.offsets_[v + 1]; ++i) d += g.w_[i];
    g.degree_[v] = d;
    g.total_volume_ += d;
  }

  if (stats) *stats = local;
  return g;
}

void Graph::check_node(NodeId v) const {
  if (v < 0 || v >= node_count_)
    throw std::out_of_range("node id " + std::to_string(v) + " out of range");
}

double Graph::degree(NodeId v) const {
  check_node(v);
  return degree_[v];
}

std::span<const NodeId> Graph::neighbors(NodeId v) const {
  check_node(v);
  return {nbr_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
}

std::span<const double> Graph::weights(NodeId v) const {
  check_node(v);
  return {w_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
}

double Graph::volume(const NodeSet& s) const {
  double vol = 0.0;
  for (NodeId v : s) {
    check_node(v);
    vol += degree_[v];
  }
  return vol;
}

double Graph::cut(const NodeSet& s) const {
  double c = 0.0;
  for (NodeId v : s) {
    check_node(v);
    auto nb = neighbors(v);
    auto ws = weights(v);
    for (std::size_t i = 0; i < nb.size(); ++i)
      if (!s.contains(nb[i])) c += ws[i];
  }
  return c;
}

double Graph::conductance(const NodeSet& s) const {
  if (s.empty()) throw std::invalid_argument("conductance of empty set is undefined");
  const double vol = volume(s);
  const double other = total_volume_ - vol;
  const double denom = std::min(vol, other);
  if (denom <= 0.0)
    throw std::invalid_argument("conductance undefined: one side has zero volume");
  return cut(s) / denom;
}

std::vector<Graph::WeightedEdge> Graph::edges() const {
  std::vector<WeightedEdge> out;
  out.reserve(static_cast<std::size_t>(edge_count()));
  for (NodeId v = 0; v < node_count_; ++v) {
    auto nb = neighbors(v);
    auto ws = weights(v);
    for (std::size_t i = 0; i < nb.size(); ++i)
      if (v < nb[i]) out.push_back({v, nb[i], ws[i]});
  }
  return out;
}

}  // namespace seedflow
