// Command-line front end: cluster, eval, seed-gen, synth-bench, stats.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "CLI11.hpp"
#include "seedflow/driver.hpp"
#include "seedflow/errors.hpp"
#include "seedflow/eval.hpp"
#include "seedflow/io.hpp"
#include "seedflow/objective.hpp"
#include "seedflow/synth.hpp"

namespace {

using namespace seedflow;

int log_level() {
  static const int level = [] {
    const char* env = std::getenv("SEEDFLOW_LOG");
    if (!env) return 1;
    const std::string v(env);
    if (v == "quiet") return 0;
    if (v == "debug") return 2;
    return 1;
  }();
  return level;
}

void info(const std::string& msg) {
  if (log_level() >= 1) std::cerr << msg << '\n';
}

Mode parse_mode(const std::string& s) {
  if (s == "flowseed") return Mode::flowseed;
  if (s == "simplelocal") return Mode::simplelocal;
  if (s == "mqi") return Mode::mqi;
  throw CLI::ValidationError("--mode", "unknown mode: " + s);
}

struct ClusterArgs {
  std::string graph_path;
  std::string seeds_path;
  double epsilon = 0.1;
  bool epsilon_given = false;
  double penalty = 0.0;
  bool strict_all = false;
  std::string mode = "flowseed";
  std::string alpha_update;
  int index_base = 0;
  std::string output_path;
  std::string members_path;
  std::string target_path;
  bool timing = false;
  int max_iterations = 0;
};

void add_cluster_options(CLI::App* sub, ClusterArgs& args, bool epsilon_required) {
  sub->add_option("--graph", args.graph_path, "edge-list graph file")->required();
  sub->add_option("--seeds", args.seeds_path, "seed file: node [strict] [penalty]")->required();
  auto* eps = sub->add_option("--epsilon", args.epsilon, "locality parameter");
  if (epsilon_required) eps->required();
  sub->add_option("--penalty", args.penalty, "soft penalty applied to all non-strict seeds");
  sub->add_flag("--strict-all", args.strict_all, "treat every seed as strictly required");
  sub->add_option("--mode", args.mode, "flowseed | simplelocal | mqi")
      ->check(CLI::IsMember({"flowseed", "simplelocal", "mqi"}));
  sub->add_option("--alpha-update", args.alpha_update, "pi | phi")
      ->check(CLI::IsMember({"pi", "phi"}));
  sub->add_option("--index-base", args.index_base, "smallest admissible external node id")
      ->check(CLI::IsMember({0, 1}));
  sub->add_option("--max-iterations", args.max_iterations, "cap on outer iterations (0 = off)");
}

struct ClusterRun {
  LoadedGraph lg;
  SeedSpec spec;
  SolveOptions opts;
  ClusterResult result;
  ResultWriteOptions write_opts;
};

ClusterRun run_cluster_common(const ClusterArgs& args) {
  ClusterRun run;
  run.lg = load_graph({args.graph_path, args.index_base, true});
  if (run.lg.stats.self_loops_dropped > 0)
    info("dropped " + std::to_string(run.lg.stats.self_loops_dropped) + " self-loop(s)");

  const auto rows = load_seed_file(args.seeds_path);
  run.spec = make_seed_spec(run.lg, rows, args.epsilon, args.penalty, args.strict_all);

  run.opts.mode = parse_mode(args.mode);
  if (!args.alpha_update.empty())
    run.opts.alpha_update = args.alpha_update == "pi" ? AlphaUpdate::pi : AlphaUpdate::phi;
  run.opts.max_outer_iterations = args.max_iterations;

  run.result = cluster(run.lg.graph, run.spec, run.opts);

  run.write_opts.mode = args.mode;
  run.write_opts.alpha_update =
      run.opts.alpha_update.value_or(run.opts.mode == Mode::simplelocal ? AlphaUpdate::phi
                                                                        : AlphaUpdate::pi) ==
              AlphaUpdate::pi
          ? "pi"
          : "phi";
  run.write_opts.epsilon = run.opts.mode == Mode::mqi ? kEpsilonInfinity : args.epsilon;
  return run;
}

int cmd_cluster(const ClusterArgs& args) {
  auto run = run_cluster_common(args);
  run.write_opts.include_timing = args.timing;

  std::optional<EvalReport> eval_report;
  if (!args.target_path.empty()) {
    const NodeSet target = load_node_list(args.target_path, run.lg);
    eval_report = evaluate(run.result.best_set, target);
  }

  const std::string doc = result_to_json(run.result, run.lg, run.write_opts, eval_report);
  if (args.output_path.empty())
    std::cout << doc;
  else
    write_result(doc, args.output_path);

  if (!args.members_path.empty()) {
    std::ofstream os(args.members_path);
    if (!os) throw std::runtime_error("cannot open members file: " + args.members_path);
    write_members(run.result, run.lg, os);
  }

  std::ostringstream summary;
  summary << "size=" << run.result.best_set.size() << " pi=" << run.result.pi_score
          << " conductance=" << run.result.conductance
          << " iterations=" << run.result.outer_iterations;
  info(summary.str());
  return 0;
}

int cmd_stats(const ClusterArgs& args) {
  auto run = run_cluster_common(args);
  const Graph& g = run.lg.graph;
  const SeedSpec spec = normalized_spec(run.spec, run.opts.mode);

  std::int64_t pushes = 0, relabels = 0, globals = 0, explored = 0;
  double peak_volume = 0.0;
  int rounds = 0;
  for (const auto& it : run.result.iterations) {
    pushes += it.pushes;
    relabels += it.relabels;
    globals += it.global_relabels;
    explored = std::max(explored, it.explored_edges);
    peak_volume = std::max(peak_volume, it.peak_local_volume);
    rounds += it.rounds;
  }

  const double vol_r = g.volume(spec.seeds);
  const double cut_r = g.cut(spec.seeds);
  const double budget = spec.subset_only() ? vol_r + cut_r
                                           : vol_r * (1.0 + 2.0 / spec.epsilon) + cut_r;

  std::cout << "nodes " << g.node_count() << "\n"
            << "edges " << g.edge_count() << "\n"
            << "seed_volume " << vol_r << "\n"
            << "seed_cut " << cut_r << "\n"
            << "outer_iterations " << run.result.outer_iterations << "\n"
            << "expansion_rounds " << rounds << "\n"
            << "pushes " << pushes << "\n"
            << "relabels " << relabels << "\n"
            << "global_relabels " << globals << "\n"
            << "explored_edges " << explored << "\n"
            << "peak_local_volume " << peak_volume << "\n"
            << "exploration_budget " << budget << "\n"
            << "pi_score " << run.result.pi_score << "\n"
            << "conductance " << run.result.conductance << "\n"
            << "size " << run.result.best_set.size() << "\n"
            << "wall_time_sec " << run.result.wall_time_sec << "\n";
  return 0;
}

struct EvalArgs {
  std::string result_path;
  std::string target_path;
  std::string graph_path;
  int index_base = 0;
};

int cmd_eval(const EvalArgs& args) {
  if (args.graph_path.empty()) {
    // Without a graph we can still score overlap: ids are compared as given.
    std::ifstream in(args.target_path);
    if (!in) throw ParseError("cannot open node list: " + args.target_path);
    std::vector<NodeId> ids;
    std::string line;
    long line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      std::istringstream is(line);
      std::string tok;
      if (!(is >> tok) || tok[0] == '#') continue;
      ids.push_back(std::stoll(tok));
    }
    const NodeSet target(std::move(ids));
    const NodeSet output(read_result_members(args.result_path));
    const auto rep = evaluate(output, target);
    std::cout << "precision " << rep.precision << "\nrecall " << rep.recall << "\nf1 " << rep.f1
              << "\nsize " << output.size() << "\n";
    return 0;
  }
  const LoadedGraph lg = load_graph({args.graph_path, args.index_base, true});
  const NodeSet target = load_node_list(args.target_path, lg);
  std::vector<NodeId> internal;
  for (NodeId ext : read_result_members(args.result_path)) internal.push_back(lg.internal(ext));
  const NodeSet output(std::move(internal));
  const auto rep = evaluate(output, target);

  double conductance = std::numeric_limits<double>::quiet_NaN();
  if (!output.empty()) {
    const double vol = lg.graph.volume(output);
    const double denom = std::min(vol, lg.graph.total_volume() - vol);
    if (denom > 0.0) conductance = lg.graph.cut(output) / denom;
  }
  std::cout << "precision " << rep.precision << "\nrecall " << rep.recall << "\nf1 " << rep.f1
            << "\nsize " << output.size() << "\nconductance " << conductance << "\n";
  return 0;
}

struct SeedGenArgs {
  std::string graph_path;
  std::string target_path;
  std::string output_path;
  double fraction = 0.05;
  std::uint64_t rng_seed = 0;
  bool strict_starters = false;
  double neighbor_penalty = -1.0;  // < 0: omit the penalty column
  int index_base = 0;
};

int cmd_seed_gen(const SeedGenArgs& args) {
  const LoadedGraph lg = load_graph({args.graph_path, args.index_base, true});
  const NodeSet target = load_node_list(args.target_path, lg);
  const SeedSample sample = make_seed(lg.graph, target, args.fraction, args.rng_seed);

  std::vector<SeedFileRow> rows;
  for (NodeId v : sample.seeds) {
    SeedFileRow row;
    row.node = lg.external_of(v);
    row.strict = args.strict_starters && sample.starters.contains(v);
    if (args.neighbor_penalty >= 0.0 && !sample.starters.contains(v))
      row.penalty = args.neighbor_penalty;
    rows.push_back(row);
  }

  if (args.output_path.empty()) {
    write_seed_file(rows, std::cout);
  } else {
    std::ofstream os(args.output_path);
    if (!os) throw std::runtime_error("cannot open output file: " + args.output_path);
    write_seed_file(rows, os);
  }
  info("starters=" + std::to_string(sample.starters.size()) +
       " seeds=" + std::to_string(sample.seeds.size()));
  return 0;
}

struct SynthBenchArgs {
  std::vector<std::int64_t> blocks;
  double p_in = 0.3;
  double p_out = 0.02;
  double fraction = 0.05;
  std::uint64_t rng_seed = 0;
  int instances = 1;
  int jobs = 1;
  double epsilon = 0.1;
  std::string mode = "flowseed";
  std::string penalize = "strict";  // none | strict | both
  double soft_penalty = 1.0;
};

struct BenchRow {
  std::int64_t size = 0;
  double conductance = 0.0;
  double pi = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  double seconds = 0.0;
};

BenchRow bench_instance(const SynthBenchArgs& args, int instance) {
  const std::uint64_t graph_seed = args.rng_seed + 7919ull * static_cast<std::uint64_t>(instance);
  SbmParams params{args.blocks, args.p_in, args.p_out, graph_seed, 50};
  const PlantedGraph planted = generate_planted(params);
  const SeedSample sample = make_seed(planted.graph, planted.target, args.fraction,
                                      graph_seed + 104729ull);

  SeedSpec spec;
  spec.seeds = sample.seeds;
  spec.epsilon = args.epsilon;
  if (args.penalize == "strict" || args.penalize == "both") spec.strict = sample.starters;
  if (args.penalize == "both") {
    for (NodeId v : sample.seeds.minus(sample.starters)) spec.penalties[v] = args.soft_penalty;
  }

  SolveOptions opts;
  opts.mode = parse_mode(args.mode);

  const auto t0 = std::chrono::steady_clock::now();
  const ClusterResult result = cluster(planted.graph, spec, opts);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  const EvalReport rep = evaluate(result.best_set, planted.target);
  return {static_cast<std::int64_t>(result.best_set.size()),
          result.conductance,
          result.pi_score,
          rep.precision,
          rep.recall,
          rep.f1,
          secs};
}

int cmd_synth_bench(const SynthBenchArgs& args) {
  if (args.blocks.size() < 2)
    throw std::invalid_argument("need at least two blocks (target + background)");

  std::vector<BenchRow> rows(args.instances);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(std::max(args.jobs, 1))
#endif
  for (int i = 0; i < args.instances; ++i) rows[i] = bench_instance(args, i);

  std::cout << std::left << std::setw(10) << "instance" << std::setw(8) << "size" << std::setw(12)
            << "phi" << std::setw(12) << "pi" << std::setw(12) << "prec" << std::setw(12)
            << "recall" << std::setw(12) << "f1" << std::setw(10) << "secs" << "\n";
  BenchRow mean;
  for (int i = 0; i < args.instances; ++i) {
    const auto& r = rows[i];
    std::cout << std::left << std::setw(10) << i << std::setw(8) << r.size << std::setw(12)
              << std::setprecision(4) << r.conductance << std::setw(12) << r.pi << std::setw(12)
              << r.precision << std::setw(12) << r.recall << std::setw(12) << r.f1 << std::setw(10)
              << r.seconds << "\n";
    mean.size += r.size;
    mean.conductance += r.conductance;
    mean.pi += r.pi;
    mean.precision += r.precision;
    mean.recall += r.recall;
    mean.f1 += r.f1;
    mean.seconds += r.seconds;
  }
  const double n = static_cast<double>(std::max(args.instances, 1));
  std::cout << std::left << std::setw(10) << "mean" << std::setw(8)
            << static_cast<std::int64_t>(mean.size / n) << std::setw(12) << mean.conductance / n
            << std::setw(12) << mean.pi / n << std::setw(12) << mean.precision / n << std::setw(12)
            << mean.recall / n << std::setw(12) << mean.f1 / n << std::setw(10) << mean.seconds / n
            << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"flow-based local graph clustering with seed inclusion penalties"};
  app.require_subcommand(1);

  ClusterArgs cluster_args;
  auto* cluster_cmd = app.add_subcommand("cluster", "grow a seed set into a low-conductance cluster");
  add_cluster_options(cluster_cmd, cluster_args, /*epsilon_required=*/false);
  cluster_cmd->add_option("--output", cluster_args.output_path, "result document path (default: stdout)");
  cluster_cmd->add_option("--members", cluster_args.members_path, "flat member table path");
  cluster_cmd->add_option("--target", cluster_args.target_path, "ground-truth node list for evaluation");
  cluster_cmd->add_flag("--timing", cluster_args.timing, "include wall time in the result document");

  ClusterArgs stats_args;
  auto* stats_cmd = app.add_subcommand("stats", "run cluster and dump solver telemetry");
  add_cluster_options(stats_cmd, stats_args, /*epsilon_required=*/false);

  EvalArgs eval_args;
  auto* eval_cmd = app.add_subcommand("eval", "score a result against a target node list");
  eval_cmd->add_option("--result", eval_args.result_path, "result document")->required();
  eval_cmd->add_option("--target", eval_args.target_path, "target node list")->required();
  eval_cmd->add_option("--graph", eval_args.graph_path, "graph (adds conductance)");
  eval_cmd->add_option("--index-base", eval_args.index_base)->check(CLI::IsMember({0, 1}));

  SeedGenArgs seed_args;
  auto* seed_cmd = app.add_subcommand("seed-gen", "sample starters from a target and grow one hop");
  seed_cmd->add_option("--graph", seed_args.graph_path)->required();
  seed_cmd->add_option("--target", seed_args.target_path)->required();
  seed_cmd->add_option("--fraction", seed_args.fraction, "starter fraction of the target");
  seed_cmd->add_option("--rng", seed_args.rng_seed, "rng seed");
  seed_cmd->add_option("--output", seed_args.output_path, "seed file path (default: stdout)");
  seed_cmd->add_flag("--strict-starters", seed_args.strict_starters, "mark starters strict");
  seed_cmd->add_option("--neighbor-penalty", seed_args.neighbor_penalty,
                       "explicit soft penalty written for non-starter seeds");
  seed_cmd->add_option("--index-base", seed_args.index_base)->check(CLI::IsMember({0, 1}));

  SynthBenchArgs bench_args;
  auto* bench_cmd = app.add_subcommand("synth-bench", "planted-cluster recovery benchmark");
  bench_cmd->add_option("--blocks", bench_args.blocks, "block sizes, e.g. 100,100")
      ->required()
      ->delimiter(',');
  bench_cmd->add_option("--p-in", bench_args.p_in, "within-block edge probability");
  bench_cmd->add_option("--p-out", bench_args.p_out, "cross-block edge probability");
  bench_cmd->add_option("--fraction", bench_args.fraction, "starter fraction");
  bench_cmd->add_option("--rng", bench_args.rng_seed, "rng seed");
  bench_cmd->add_option("--instances", bench_args.instances, "number of instances");
  bench_cmd->add_option("--jobs", bench_args.jobs, "parallel workers for independent instances");
  bench_cmd->add_option("--epsilon", bench_args.epsilon, "locality parameter");
  bench_cmd->add_option("--mode", bench_args.mode)->check(CLI::IsMember({"flowseed", "simplelocal", "mqi"}));
  bench_cmd->add_option("--penalize", bench_args.penalize, "none | strict | both")
      ->check(CLI::IsMember({"none", "strict", "both"}));
  bench_cmd->add_option("--soft-penalty", bench_args.soft_penalty, "penalty used with --penalize both");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*cluster_cmd) return cmd_cluster(cluster_args);
    if (*stats_cmd) return cmd_stats(stats_args);
    if (*eval_cmd) return cmd_eval(eval_args);
    if (*seed_cmd) return cmd_seed_gen(seed_args);
    if (*bench_cmd) return cmd_synth_bench(bench_args);
  } catch (const InfeasibleError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 4;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
