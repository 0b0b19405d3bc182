#include "seedflow/driver.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "seedflow/errors.hpp"

namespace seedflow {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double conductance_or(const Graph& g, const NodeSet& s, double fallback) {
  if (s.empty()) return fallback;
  const double vol = g.volume(s);
  const double denom = std::min(vol, g.total_volume() - vol);
  if (denom <= 0.0) return fallback;
  return g.cut(s) / denom;
}

AlphaUpdate update_rule(const SolveOptions& opts) {
  if (opts.alpha_update) return *opts.alpha_update;
  return opts.mode == Mode::simplelocal ? AlphaUpdate::phi : AlphaUpdate::pi;
}

double score_of(const Graph& g, const SeedSpec& spec, const NodeSet& s, AlphaUpdate rule) {
  if (s.empty()) return kInf;
  if (rule == AlphaUpdate::pi) return seed_penalized_conductance(g, spec, s);
  return conductance_or(g, s, kInf);
}

}  // namespace

SeedSpec normalized_spec(const SeedSpec& spec, Mode mode) {
  SeedSpec out = spec;
  if (mode == Mode::simplelocal) {
    out.strict = NodeSet{};
    out.penalties.clear();
  } else if (mode == Mode::mqi) {
    out.epsilon = kEpsilonInfinity;
  }
  return out;
}

std::pair<NodeSet, double> alpha_search_step(const Graph& g, const SeedSpec& spec0, double alpha,
                                             const SolveOptions& opts) {
  const SeedSpec spec = normalized_spec(spec0, opts.mode);
  const auto report = local_min_cut(g, spec, alpha);
  const double next = score_of(g, spec, report.minimizer, update_rule(opts));
  return {report.minimizer, next};
}

ClusterResult cluster(const Graph& g, const SeedSpec& spec0, const SolveOptions& opts) {
  const auto t0 = std::chrono::steady_clock::now();

  const SeedSpec spec = normalized_spec(spec0, opts.mode);
  spec.validate(g);
  if (!(g.volume(spec.seeds) > 0.0))
    throw std::invalid_argument("seed set has zero volume");
  if (!(overlap_score(g, spec, spec.seeds) > 0.0))
    throw InfeasibleError("seed spec is infeasible: nonpositive overlap for the seed set itself");

  const AlphaUpdate rule = update_rule(opts);
  const double shrink = 1.0 - opts.relative_tolerance;

  ClusterResult result;
  NodeSet current = spec.seeds;
  NodeSet best = current;
  double alpha = kInf;
  double alpha_new = score_of(g, spec, current, rule);
  result.alpha_trace.push_back(alpha_new);

  while (alpha_new < alpha * shrink) {
    best = current;
    // pi is nonnegative, so a zero score is already globally minimal.
    if (alpha_new <= 0.0) break;
    alpha = alpha_new;
    if (opts.max_outer_iterations > 0 && result.outer_iterations >= opts.max_outer_iterations)
      break;

    auto report = local_min_cut(g, spec, alpha);
    ++result.outer_iterations;
    current = report.minimizer;
    result.iterations.push_back(std::move(report));

    alpha_new = score_of(g, spec, current, rule);
    if (alpha_new < alpha * shrink) result.alpha_trace.push_back(alpha_new);
  }

  result.best_set = best;
  result.pi_score = seed_penalized_conductance(g, spec, best);
  result.conductance = conductance_or(g, best, std::numeric_limits<double>::quiet_NaN());
  result.wall_time_sec =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return result;
}

}  // namespace seedflow
