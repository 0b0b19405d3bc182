#include "seedflow/local_solver.hpp"

#include <algorithm>
#include <stdexcept>

namespace seedflow {

namespace {

double effective_penalty(const SeedSpec& spec, const Graph& g, double alpha, NodeId r) {
  return spec.strict.contains(r) ? g.total_volume() / alpha : spec.penalty_of(r);
}

void check_alpha(double alpha) {
  if (!(alpha > 0.0) || alpha > 1.0) throw std::invalid_argument("alpha must lie in (0, 1]");
}

}  // namespace

LocalGraph LocalGraph::init(const Graph& g, const SeedSpec& spec) {
  spec.validate(g);
  LocalGraph lg;
  for (NodeId r : spec.seeds) {
    lg.complete_.insert(r);
    lg.local_degree_.emplace(r, 0.0);
  }
  for (NodeId r : spec.seeds) {
    auto nb = g.neighbors(r);
    auto ws = g.weights(r);
    for (std::size_t i = 0; i < nb.size(); ++i) {
      const NodeId w = nb[i];
      const double wt = ws[i];
      lg.local_degree_[r] += wt;
      if (spec.seeds.contains(w)) {
        if (r < w) {
          ++lg.edge_count_;
          lg.edge_weight_ += wt;
        }
      } else {
        lg.local_degree_[w] += wt;
        ++lg.edge_count_;
        lg.edge_weight_ += wt;
      }
    }
  }
  return lg;
}

double LocalGraph::local_degree(NodeId v) const {
  auto it = local_degree_.find(v);
  return it == local_degree_.end() ? 0.0 : it->second;
}

NodeSet LocalGraph::edge_complete_set() const {
  std::vector<NodeId> ids(complete_.begin(), complete_.end());
  return NodeSet(std::move(ids));
}

NodeSet LocalGraph::touched_incomplete_set() const {
  std::vector<NodeId> ids;
  for (const auto& [v, d] : local_degree_)
    if (d > 0.0 && complete_.find(v) == complete_.end()) ids.push_back(v);
  return NodeSet(std::move(ids));
}

LocalGraph::Delta LocalGraph::expand(const Graph& g, const NodeSet& new_nodes) {
  Delta delta;
  for (NodeId v : new_nodes) {
    if (complete_.find(v) != complete_.end()) {
      ++delta.already_complete;
      continue;
    }
    if (local_degree_.find(v) == local_degree_.end()) {
      local_degree_.emplace(v, 0.0);
      delta.new_interior.push_back(v);
    }
    complete_.insert(v);
    auto nb = g.neighbors(v);
    auto ws = g.weights(v);
    for (std::size_t i = 0; i < nb.size(); ++i) {
      const NodeId w = nb[i];
      if (complete_.find(w) != complete_.end()) continue;  // edge already materialized
      const double wt = ws[i];
      ++edge_count_;
      edge_weight_ += wt;
      local_degree_[v] += wt;
      auto [it, fresh] = local_degree_.try_emplace(w, 0.0);
      if (fresh) delta.new_interior.push_back(w);
      it->second += wt;
      delta.new_edges.push_back({v, w, wt});
    }
  }
  std::sort(delta.new_interior.begin(), delta.new_interior.end());
  return delta;
}

std::vector<Graph::WeightedEdge> LocalGraph::local_edges(const Graph& g) const {
  std::vector<NodeId> complete_sorted(complete_.begin(), complete_.end());
  std::sort(complete_sorted.begin(), complete_sorted.end());
  std::vector<Graph::WeightedEdge> out;
  for (NodeId v : complete_sorted) {
    auto nb = g.neighbors(v);
    auto ws = g.weights(v);
    for (std::size_t i = 0; i < nb.size(); ++i) {
      const NodeId w = nb[i];
      const bool w_complete = complete_.find(w) != complete_.end();
      if (w_complete && w < v) continue;  // emitted from the other endpoint
      out.push_back({v, w, ws[i]});
    }
  }
  return out;
}

flow::FlowNetwork build_local_cut_network(const LocalGraph& lg, const Graph& g,
                                          const SeedSpec& spec, double alpha) {
  check_alpha(alpha);
  std::vector<flow::InteriorNode> interior;
  std::vector<flow::InteriorEdge> edges;
  std::vector<flow::SourceArc> sources;

  if (spec.subset_only()) {
    // Candidate sets are subsets of R: nodes outside R are glued to the sink,
    // so each boundary edge becomes sink capacity on its seed endpoint.
    for (NodeId r : spec.seeds) {
      const double d = g.degree(r);
      if (d <= 0.0) continue;
      double boundary = 0.0;
      auto nb = g.neighbors(r);
      auto ws = g.weights(r);
      for (std::size_t i = 0; i < nb.size(); ++i) {
        if (!spec.seeds.contains(nb[i]))
          boundary += ws[i];
        else if (r < nb[i])
          edges.push_back({r, nb[i], ws[i]});
      }
      interior.push_back({r, boundary});
      sources.push_back({r, alpha * (1.0 + effective_penalty(spec, g, alpha, r)) * d});
    }
    return flow::FlowNetwork(interior, edges, sources);
  }

  std::vector<NodeId> touched;
  // Interior nodes are exactly the touched nodes with nonzero local degree.
  for (NodeId v : lg.edge_complete_set())
    if (lg.local_degree(v) > 0.0) touched.push_back(v);
  for (NodeId v : lg.touched_incomplete_set()) touched.push_back(v);
  std::sort(touched.begin(), touched.end());

  for (NodeId v : touched) {
    if (spec.seeds.contains(v)) {
      interior.push_back({v, 0.0});
      sources.push_back({v, alpha * (1.0 + effective_penalty(spec, g, alpha, v)) * g.degree(v)});
    } else {
      interior.push_back({v, alpha * spec.epsilon * g.degree(v)});
    }
  }
  for (const auto& e : lg.local_edges(g)) edges.push_back({e.u, e.v, e.weight});
  return flow::FlowNetwork(interior, edges, sources);
}

LocalSolveReport local_min_cut(const Graph& g, const SeedSpec& spec, double alpha) {
  check_alpha(alpha);
  spec.validate(g);

  LocalGraph lg = LocalGraph::init(g, spec);
  flow::FlowNetwork net = build_local_cut_network(lg, g, spec, alpha);
  flow::FlowState state = flow::make_state(net);

  LocalSolveReport report;
  report.explored_edges = lg.explored_edge_count();
  report.peak_local_volume = lg.local_volume();

  NodeSet source_side;
  for (;;) {
    const auto cut = flow::solve_min_cut(net, state);
    ++report.rounds;
    report.pushes += cut.pushes;
    report.relabels += cut.relabels;
    report.global_relabels += cut.global_relabels;
    report.local_objective_value = cut.cut_value;
    source_side = cut.source_side;

    std::vector<NodeId> frontier;
    for (NodeId v : source_side)
      if (!lg.edge_complete(v)) frontier.push_back(v);
    if (frontier.empty()) break;

    const auto delta = lg.expand(g, NodeSet(std::move(frontier)));
    std::vector<flow::InteriorNode> add_nodes;
    add_nodes.reserve(delta.new_interior.size());
    for (NodeId v : delta.new_interior)
      add_nodes.push_back({v, alpha * spec.epsilon * g.degree(v)});
    std::vector<flow::InteriorEdge> add_edges;
    add_edges.reserve(delta.new_edges.size());
    for (const auto& e : delta.new_edges) add_edges.push_back({e.u, e.v, e.weight});
    flow::insert(net, state, add_nodes, add_edges);

    report.explored_edges = lg.explored_edge_count();
    report.peak_local_volume = lg.local_volume();
  }

  // Zero-degree strict seeds never enter the network; including them is free.
  report.minimizer = source_side.unite(spec.strict);
  report.objective_value = alpha_objective(g, spec, alpha, report.minimizer);
  return report;
}

}  // namespace seedflow
