#include "seedflow/flownet.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace seedflow::flow {

namespace {

void require_cap(double c, const char* what) {
  if (c < 0.0 || std::isnan(c)) throw std::invalid_argument(std::string(what) + " must be >= 0");
}

int add_node(FlowNetwork& net, NodeId id) {
  const int internal = net.node_count();
  net.external.push_back(id);
  net.index.emplace(id, internal);
  net.adj.emplace_back();
  return internal;
}

// Appends the paired arcs (u->v cap_fwd, v->u cap_rev) and returns the
// forward arc id.
int add_arc_pair(FlowNetwork& net, int u, int v, double cap_fwd, double cap_rev) {
  const int a = static_cast<int>(net.to.size());
  net.to.push_back(v);
  net.cap.push_back(cap_fwd);
  net.to.push_back(u);
  net.cap.push_back(cap_rev);
  net.adj[u].push_back(a);
  net.adj[v].push_back(a + 1);
  return a;
}

// Arc u->v if present, else -1. Arc lists stay short in local networks.
int find_arc(const FlowNetwork& net, int u, int v) {
  for (int a : net.adj[u])
    if (net.to[a] == v) return a;
  return -1;
}

void add_or_merge_terminal(FlowNetwork& net, int from, int to_node, double cap) {
  if (cap <= 0.0) return;
  const int a = find_arc(net, from, to_node);
  if (a >= 0)
    net.cap[a] += cap;
  else
    add_arc_pair(net, from, to_node, cap, 0.0);
}

}  // namespace

FlowNetwork::FlowNetwork(std::span<const InteriorNode> interior,
                         std::span<const InteriorEdge> edges,
                         std::span<const SourceArc> source_arcs) {
  external.assign(2, -1);
  adj.resize(2);

  for (const auto& node : interior) {
    require_cap(node.sink_cap, "sink capacity");
    auto it = index.find(node.id);
    const int v = it == index.end() ? add_node(*this, node.id) : it->second;
    add_or_merge_terminal(*this, v, kSink, node.sink_cap);
  }
  for (const auto& e : edges) {
    require_cap(e.cap, "edge capacity");
    auto iu = index.find(e.u);
    auto iv = index.find(e.v);
    if (iu == index.end() || iv == index.end())
      throw std::invalid_argument("edge endpoint is not an interior node");
    if (iu->second == iv->second) throw std::invalid_argument("self-loop edge in flow network");
    const int a = find_arc(*this, iu->second, iv->second);
    if (a >= 0) {
      cap[a] += e.cap;
      cap[a ^ 1] += e.cap;
    } else {
      add_arc_pair(*this, iu->second, iv->second, e.cap, e.cap);
    }
  }
  for (const auto& s : source_arcs) {
    require_cap(s.cap, "source capacity");
    auto it = index.find(s.id);
    if (it == index.end()) throw std::invalid_argument("source arc to unknown interior node");
    add_or_merge_terminal(*this, kSource, it->second, s.cap);
  }
}

int FlowNetwork::index_of(NodeId id) const {
  auto it = index.find(id);
  if (it == index.end()) throw std::invalid_argument("unknown interior node id");
  return it->second;
}

FlowState make_state(const FlowNetwork& net) {
  FlowState st;
  st.residual = net.cap;
  st.excess.assign(net.node_count(), 0.0);
  st.label.assign(net.node_count(), 0);
  st.label[FlowNetwork::kSource] = net.node_count();
  st.current.assign(net.node_count(), 0);
  st.queued.assign(net.node_count(), 0);
  return st;
}

void global_relabel(const FlowNetwork& net, FlowState& st) {
  const int n = net.node_count();
  std::fill(st.label.begin(), st.label.end(), n);
  std::fill(st.current.begin(), st.current.end(), 0);
  st.label[FlowNetwork::kSink] = 0;

  std::vector<std::int32_t> queue;
  queue.reserve(static_cast<std::size_t>(n));
  queue.push_back(FlowNetwork::kSink);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const int u = queue[head];
    for (int a : net.adj[u]) {
      const int w = net.to[a];
      // w steps to u along the residual arc w->u, i.e. the reverse pair of a.
      if (w != FlowNetwork::kSource && st.label[w] == n && st.residual[a ^ 1] > kFlowTol) {
        st.label[w] = st.label[u] + 1;
        queue.push_back(w);
      }
    }
  }
  st.label[FlowNetwork::kSource] = n;

  st.fifo.clear();
  st.fifo_head = 0;
  std::fill(st.queued.begin(), st.queued.end(), 0);
  for (int v = 2; v < n; ++v) {
    if (st.excess[v] > kFlowTol && st.label[v] < n) {
      st.fifo.push_back(v);
      st.queued[v] = 1;
    }
  }
  st.work_relabels = 0;
  st.work_scans = 0;
  ++st.global_relabels;
}

namespace {

void discharge(const FlowNetwork& net, FlowState& st, int u, int n) {
  const auto& arcs = net.adj[u];
  const int deg = static_cast<int>(arcs.size());
  while (st.excess[u] > kFlowTol) {
    if (st.current[u] >= deg) {
      // Relabel: one past the smallest label among residual neighbors.
      ++st.relabels;
      ++st.work_relabels;
      int best = n;
      for (int a : arcs) {
        ++st.work_scans;
        if (st.residual[a] > kFlowTol) best = std::min(best, st.label[net.to[a]] + 1);
      }
      if (st.audit && best <= st.label[u] && best < n)
        throw std::logic_error("relabel did not increase label");
      st.label[u] = std::min(best, n);
      st.current[u] = 0;
      if (st.label[u] >= n) return;  // dormant; excess stays trapped
      continue;
    }
    const int a = arcs[st.current[u]];
    ++st.work_scans;
    const int v = net.to[a];
    if (st.residual[a] > kFlowTol && st.label[u] == st.label[v] + 1) {
      const double delta = std::min(st.excess[u], st.residual[a]);
      st.residual[a] -= delta;
      st.residual[a ^ 1] += delta;
      st.excess[u] -= delta;
      st.excess[v] += delta;
      ++st.pushes;
      if (v >= 2 && !st.queued[v] && st.excess[v] > kFlowTol && st.label[v] < n) {
        st.fifo.push_back(v);
        st.queued[v] = 1;
      }
      if (st.residual[a] <= kFlowTol) ++st.current[u];
    } else {
      ++st.current[u];
    }
  }
}

}  // namespace

MinCutResult solve_min_cut(const FlowNetwork& net, FlowState& st) {
  const int n = net.node_count();
  if (static_cast<int>(st.excess.size()) != n || st.residual.size() != net.cap.size())
    throw std::logic_error("flow state does not match network");

  const std::int64_t pushes0 = st.pushes;
  const std::int64_t relabels0 = st.relabels;
  const std::int64_t globals0 = st.global_relabels;

  if (!st.source_saturated) {
    for (int a : net.adj[FlowNetwork::kSource]) {
      const double delta = st.residual[a];
      if (delta > 0.0) {
        st.residual[a] = 0.0;
        st.residual[a ^ 1] += delta;
        st.excess[net.to[a]] += delta;
        ++st.pushes;
      }
    }
    st.source_saturated = true;
  }

  global_relabel(net, st);

  const std::int64_t arcs = std::max<std::int64_t>(net.arc_count(), 1);
  while (st.fifo_head < st.fifo.size()) {
    const int u = st.fifo[st.fifo_head++];
    st.queued[u] = 0;
    discharge(net, st, u, n);
    if (st.audit) {
      std::string why;
      if (!check_preflow(net, st, &why)) throw std::logic_error("preflow audit failed: " + why);
    }
    if (st.work_relabels * arcs + st.work_scans > static_cast<std::int64_t>(n) * arcs)
      global_relabel(net, st);
  }
  st.fifo.clear();
  st.fifo_head = 0;
  st.converged = true;

  MinCutResult result;
  result.source_side = extract_source_side(net, st);
  result.cut_value = crossing_capacity(net, result.source_side);
  result.pushes = st.pushes - pushes0;
  result.relabels = st.relabels - relabels0;
  result.global_relabels = st.global_relabels - globals0;
  return result;
}

void insert(FlowNetwork& net, FlowState& st, std::span<const InteriorNode> new_interior,
            std::span<const InteriorEdge> new_edges) {
  if (!st.converged)
    throw std::logic_error("insert requires a completed solve on the current network");

  auto sync_arcs = [&] {
    st.residual.resize(net.cap.size());
  };
  auto add_state_node = [&] {
    st.excess.push_back(0.0);
    st.label.push_back(0);
    st.current.push_back(0);
    st.queued.push_back(0);
  };

  for (const auto& node : new_interior) {
    require_cap(node.sink_cap, "sink capacity");
    auto it = net.index.find(node.id);
    int v;
    if (it == net.index.end()) {
      v = add_node(net, node.id);
      add_state_node();
    } else {
      v = it->second;
    }
    if (node.sink_cap > 0.0) {
      const int a = find_arc(net, v, FlowNetwork::kSink);
      if (a >= 0) {
        net.cap[a] += node.sink_cap;
        st.residual[a] += node.sink_cap;
      } else {
        const int fresh = add_arc_pair(net, v, FlowNetwork::kSink, node.sink_cap, 0.0);
        sync_arcs();
        st.residual[fresh] = node.sink_cap;
        st.residual[fresh + 1] = 0.0;
      }
    }
  }

  for (const auto& e : new_edges) {
    require_cap(e.cap, "edge capacity");
    auto iu = net.index.find(e.u);
    auto iv = net.index.find(e.v);
    if (iu == net.index.end() || iv == net.index.end())
      throw std::invalid_argument("inserted edge endpoint is not an interior node");
    if (iu->second == iv->second) throw std::invalid_argument("self-loop edge in flow network");
    const int a = find_arc(net, iu->second, iv->second);
    if (a >= 0) {
      net.cap[a] += e.cap;
      st.residual[a] += e.cap;
      net.cap[a ^ 1] += e.cap;
      st.residual[a ^ 1] += e.cap;
    } else {
      const int fresh = add_arc_pair(net, iu->second, iv->second, e.cap, e.cap);
      sync_arcs();
      st.residual[fresh] = e.cap;
      st.residual[fresh + 1] = e.cap;
    }
  }

  st.converged = false;  // labels go stale; the next solve starts with a global relabel
}

NodeSet extract_source_side(const FlowNetwork& net, const FlowState& st) {
  if (!st.converged)
    throw std::logic_error("extract_source_side requires a converged state");
  const int n = net.node_count();
  std::vector<std::uint8_t> reaches_sink(static_cast<std::size_t>(n), 0);
  reaches_sink[FlowNetwork::kSink] = 1;
  std::vector<std::int32_t> queue{FlowNetwork::kSink};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const int u = queue[head];
    for (int a : net.adj[u]) {
      const int w = net.to[a];
      if (w != FlowNetwork::kSource && !reaches_sink[w] && st.residual[a ^ 1] > kFlowTol) {
        reaches_sink[w] = 1;
        queue.push_back(w);
      }
    }
  }
  std::vector<NodeId> side;
  for (int v = 2; v < n; ++v)
    if (!reaches_sink[v]) side.push_back(net.external[v]);
  return NodeSet(std::move(side));
}

double crossing_capacity(const FlowNetwork& net, const NodeSet& side) {
  const int n = net.node_count();
  std::vector<std::uint8_t> in_side(static_cast<std::size_t>(n), 0);
  in_side[FlowNetwork::kSource] = 1;
  for (NodeId id : side) in_side[net.index_of(id)] = 1;
  double total = 0.0;
  for (int u = 0; u < n; ++u) {
    if (!in_side[u]) continue;
    for (int a : net.adj[u])
      if (!in_side[net.to[a]]) total += net.cap[a];
  }
  return total;
}

double sink_inflow(const FlowNetwork&, const FlowState& st) {
  return st.excess[FlowNetwork::kSink];
}

bool check_preflow(const FlowNetwork& net, const FlowState& st, std::string* why,
                   bool check_labels) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  const int n = net.node_count();
  const double max_cap =
      net.cap.empty() ? 0.0 : *std::max_element(net.cap.begin(), net.cap.end());
  const double scale = 1.0 + max_cap;
  for (std::size_t a = 0; a < net.cap.size(); ++a) {
    if (st.residual[a] < -kFlowTol * scale)
      return fail("negative residual on arc " + std::to_string(a));
    const double pair_sum = st.residual[a] + st.residual[a ^ 1];
    const double cap_sum = net.cap[a] + net.cap[a ^ 1];
    if (std::abs(pair_sum - cap_sum) > 1e-6 * (1.0 + cap_sum))
      return fail("arc pair " + std::to_string(a) + " lost capacity mass");
  }
  for (int v = 2; v < n; ++v) {
    if (st.excess[v] < -kFlowTol * scale)
      return fail("negative excess at node " + std::to_string(v));
    double outflow = 0.0;
    for (int a : net.adj[v]) outflow += net.cap[a] - st.residual[a];
    if (std::abs(st.excess[v] + outflow) >
        1e-6 * scale * (1.0 + static_cast<double>(net.adj[v].size())))
      return fail("excess bookkeeping broken at node " + std::to_string(v));
  }
  if (check_labels) {
    // Label validity on residual arcs (the source is pinned at n).
    for (int u = 0; u < n; ++u) {
      if (u == FlowNetwork::kSource) continue;
      for (int a : net.adj[u]) {
        if (st.residual[a] > kFlowTol && st.label[u] > st.label[net.to[a]] + 1)
          return fail("label validity violated on arc from node " + std::to_string(u));
      }
    }
  }
  return true;
}

}  // namespace seedflow::flow
