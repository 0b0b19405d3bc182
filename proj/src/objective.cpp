#include "seedflow/objective.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace seedflow {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

void SeedSpec::validate(const Graph& g) const {
  if (seeds.empty()) throw std::invalid_argument("seed set is empty");
  for (NodeId r : seeds)
    if (r < 0 || r >= g.node_count())
      throw std::invalid_argument("seed node " + std::to_string(r) + " out of range");
  if (!strict.subset_of(seeds))
    throw std::invalid_argument("strict seeds must be a subset of the seed set");
  for (const auto& [r, p] : penalties) {
    if (!seeds.contains(r))
      throw std::invalid_argument("penalty on node " + std::to_string(r) +
                                  " which is not a seed");
    if (p < 0.0 || std::isnan(p)) throw std::invalid_argument("penalties must be >= 0");
  }
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
}

double overlap_score(const Graph& g, const SeedSpec& spec, const NodeSet& s) {
  if (spec.subset_only()) {
    for (NodeId v : s)
      if (!spec.seeds.contains(v)) return -kInf;
  }
  double vol_in_r = 0.0;
  double vol_outside_r = 0.0;
  for (NodeId v : s) {
    if (spec.seeds.contains(v))
      vol_in_r += g.degree(v);
    else
      vol_outside_r += g.degree(v);
  }
  double dropped_penalty = 0.0;
  for (NodeId r : spec.seeds)
    if (!s.contains(r)) dropped_penalty += spec.penalty_of(r) * g.degree(r);

  const double eps_term = vol_outside_r > 0.0 ? spec.epsilon * vol_outside_r : 0.0;
  return vol_in_r - eps_term - dropped_penalty;
}

double seed_penalized_conductance(const Graph& g, const SeedSpec& spec, const NodeSet& s) {
  if (!spec.strict.subset_of(s)) return kInf;
  const double overlap = overlap_score(g, spec, s);
  if (!(overlap > 0.0)) return kInf;
  return g.cut(s) / overlap;
}

double alpha_objective(const Graph& g, const SeedSpec& spec, double alpha, const NodeSet& s) {
  if (!(alpha > 0.0) || alpha > 1.0)
    throw std::invalid_argument("alpha must lie in (0, 1]");
  const double overlap = overlap_score(g, spec, s);
  if (overlap == -kInf) return kInf;
  return g.cut(s) - alpha * overlap + alpha * g.volume(spec.seeds);
}

double improvement_constant(const TheoryParams& tp) {
  if (!(tp.gamma > 0.0) || tp.gamma > 1.0)
    throw std::domain_error("gamma must lie in (0, 1]");
  if (tp.epsilon < 0.0) throw std::domain_error("epsilon must be >= 0");
  const double denom = tp.gamma + tp.epsilon * tp.gamma - tp.epsilon;
  if (!(denom > 0.0)) throw std::domain_error("improvement bound undefined: nonpositive denominator");
  return 1.0 / denom;
}

}  // namespace seedflow
