#include "seedflow/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "seedflow/errors.hpp"

namespace seedflow {

namespace {

using nlohmann::json;

std::string strip_comment(const std::string& line) {
  const auto pos = line.find('#');
  return pos == std::string::npos ? line : line.substr(0, pos);
}

std::vector<std::string> tokens_of(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> toks;
  std::string t;
  while (in >> t) toks.push_back(t);
  return toks;
}

NodeId parse_id(const std::string& tok, long line_no) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(tok, &used);
  } catch (const std::exception&) {
    throw ParseError("expected an integer node id, got '" + tok + "'", line_no);
  }
  if (used != tok.size())
    throw ParseError("expected an integer node id, got '" + tok + "'", line_no);
  return v;
}

double parse_real(const std::string& tok, long line_no) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(tok, &used);
  } catch (const std::exception&) {
    throw ParseError("expected a number, got '" + tok + "'", line_no);
  }
  if (used != tok.size()) throw ParseError("expected a number, got '" + tok + "'", line_no);
  return v;
}

json finite_or_null(double v) {
  if (std::isnan(v) || std::isinf(v)) return nullptr;
  return v;
}

}  // namespace

NodeId LoadedGraph::internal(NodeId external) const {
  auto it = to_internal.find(external);
  if (it == to_internal.end())
    throw ParseError("node id " + std::to_string(external) + " does not appear in the graph");
  return it->second;
}

LoadedGraph load_graph(const EdgeListFile& file) {
  std::ifstream in(file.path);
  if (!in) throw ParseError("cannot open graph file: " + file.path);

  struct RawEdge {
    NodeId u, v;
    double w;
  };
  std::vector<RawEdge> raw;
  std::vector<NodeId> ids;

  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto toks = tokens_of(strip_comment(line));
    if (toks.empty()) continue;
    if (toks.size() != 2 && toks.size() != 3)
      throw ParseError("expected 'u v' or 'u v w'", line_no);
    const NodeId u = parse_id(toks[0], line_no);
    const NodeId v = parse_id(toks[1], line_no);
    if (u < file.index_base || v < file.index_base)
      throw ParseError("node id below index base " + std::to_string(file.index_base), line_no);
    double w = 1.0;
    if (toks.size() == 3) {
      w = parse_real(toks[2], line_no);
      if (!(w > 0.0) || !std::isfinite(w))
        throw ParseError("edge weight must be positive and finite", line_no);
    }
    raw.push_back({u, v, w});
    ids.push_back(u);
    ids.push_back(v);
  }

  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());

  LoadedGraph lg;
  lg.external_ids = ids;
  lg.to_internal.reserve(ids.size());
  for (std::size_t i = 0; i < ids.size(); ++i)
    lg.to_internal.emplace(ids[i], static_cast<NodeId>(i));

  std::vector<Graph::WeightedEdge> edges;
  edges.reserve(raw.size());
  for (const auto& e : raw)
    edges.push_back({lg.to_internal[e.u], lg.to_internal[e.v], e.w});
  lg.graph = Graph::from_edges(static_cast<NodeId>(ids.size()), std::move(edges), &lg.stats);
  return lg;
}

void write_edge_list(const LoadedGraph& lg, std::ostream& os, bool weighted) {
  os << std::setprecision(std::numeric_limits<double>::max_digits10);
  for (const auto& e : lg.graph.edges()) {
    os << lg.external_of(e.u) << ' ' << lg.external_of(e.v);
    if (weighted) os << ' ' << e.weight;
    os << '\n';
  }
}

std::vector<SeedFileRow> load_seed_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open seed file: " + path);
  std::vector<SeedFileRow> rows;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto toks = tokens_of(strip_comment(line));
    if (toks.empty()) continue;
    if (toks.size() > 3) throw ParseError("expected 'node [strict] [penalty]'", line_no);
    SeedFileRow row;
    row.node = parse_id(toks[0], line_no);
    if (toks.size() >= 2) {
      const NodeId flag = parse_id(toks[1], line_no);
      if (flag != 0 && flag != 1) throw ParseError("strict flag must be 0 or 1", line_no);
      row.strict = flag == 1;
    }
    if (toks.size() == 3) {
      const double p = parse_real(toks[2], line_no);
      if (p < 0.0) throw ParseError("penalty must be >= 0", line_no);
      row.penalty = p;
    }
    rows.push_back(row);
  }
  return rows;
}

void write_seed_file(const std::vector<SeedFileRow>& rows, std::ostream& os) {
  os << std::setprecision(std::numeric_limits<double>::max_digits10);
  for (const auto& row : rows) {
    os << row.node << ' ' << (row.strict ? 1 : 0);
    if (row.penalty) os << ' ' << *row.penalty;
    os << '\n';
  }
}

SeedSpec make_seed_spec(const LoadedGraph& lg, const std::vector<SeedFileRow>& rows,
                        double epsilon, double default_penalty, bool strict_all) {
  SeedSpec spec;
  spec.epsilon = epsilon;
  std::vector<NodeId> seeds;
  std::vector<NodeId> strict;
  for (const auto& row : rows) {
    const NodeId v = lg.internal(row.node);
    seeds.push_back(v);
    const bool is_strict = strict_all || row.strict;
    if (is_strict) {
      strict.push_back(v);
    } else {
      const double p = row.penalty.value_or(default_penalty);
      if (p > 0.0) spec.penalties[v] = p;
    }
  }
  spec.seeds = NodeSet(std::move(seeds));
  spec.strict = NodeSet(std::move(strict));
  return spec;
}

NodeSet load_node_list(const std::string& path, const LoadedGraph& lg) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open node list: " + path);
  std::vector<NodeId> ids;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto toks = tokens_of(strip_comment(line));
    if (toks.empty()) continue;
    if (toks.size() != 1) throw ParseError("expected one node id per line", line_no);
    ids.push_back(lg.internal(parse_id(toks[0], line_no)));
  }
  return NodeSet(std::move(ids));
}

std::string result_to_json(const ClusterResult& result, const LoadedGraph& lg,
                           const ResultWriteOptions& opts,
                           const std::optional<EvalReport>& eval) {
  if (result.best_set.empty())
    throw std::invalid_argument("refusing to write a result with an empty member set");

  json doc;
  std::vector<NodeId> members;
  members.reserve(result.best_set.size());
  for (NodeId v : result.best_set) members.push_back(lg.external_of(v));
  std::sort(members.begin(), members.end());

  doc["members"] = members;
  doc["size"] = members.size();
  doc["pi_score"] = finite_or_null(result.pi_score);
  doc["conductance"] = finite_or_null(result.conductance);
  doc["volume"] = lg.graph.volume(result.best_set);
  doc["cut"] = lg.graph.cut(result.best_set);
  doc["alpha_trace"] = result.alpha_trace;
  doc["outer_iterations"] = result.outer_iterations;
  doc["mode"] = opts.mode;
  doc["alpha_update"] = opts.alpha_update;
  doc["epsilon"] = finite_or_null(opts.epsilon);

  json iters = json::array();
  for (std::size_t i = 0; i < result.iterations.size(); ++i) {
    const auto& it = result.iterations[i];
    json row;
    if (i < result.alpha_trace.size()) row["alpha"] = result.alpha_trace[i];
    row["rounds"] = it.rounds;
    row["explored_edges"] = it.explored_edges;
    row["peak_local_volume"] = it.peak_local_volume;
    row["pushes"] = it.pushes;
    row["relabels"] = it.relabels;
    row["global_relabels"] = it.global_relabels;
    iters.push_back(row);
  }
  doc["iterations"] = iters;

  if (eval) {
    doc["eval"] = {{"precision", eval->precision},
                   {"recall", eval->recall},
                   {"f1", eval->f1},
                   {"set_size", eval->set_size}};
  }
  if (opts.include_timing) doc["wall_time_sec"] = result.wall_time_sec;

  return doc.dump(2) + "\n";
}

void write_result(const std::string& json_text, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << json_text;
  if (!out) throw std::runtime_error("failed writing output file: " + path);
}

std::vector<NodeId> read_result_members(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open result file: " + path);
  json doc;
  try {
    in >> doc;
  } catch (const std::exception& e) {
    throw ParseError("invalid result document: " + std::string(e.what()));
  }
  if (!doc.contains("members") || !doc["members"].is_array())
    throw ParseError("result document has no members array");
  return doc["members"].get<std::vector<NodeId>>();
}

void write_members(const ClusterResult& result, const LoadedGraph& lg, std::ostream& os) {
  std::vector<NodeId> members;
  for (NodeId v : result.best_set) members.push_back(lg.external_of(v));
  std::sort(members.begin(), members.end());
  for (NodeId v : members) os << v << '\n';
}

}  // namespace seedflow
