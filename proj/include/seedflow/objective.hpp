#pragma once

#include <limits>
#include <unordered_map>

#include "seedflow/graph.hpp"

namespace seedflow {

/// Sentinel locality parameter restricting candidate sets to subsets of the
/// seed set (min-conductance-subset mode).
inline constexpr double kEpsilonInfinity = std::numeric_limits<double>::infinity();

/// Seed set R with a strictly-required subset, per-node soft penalties for
/// dropping non-strict seeds, and the locality parameter epsilon.
struct SeedSpec {
  NodeSet seeds;   // R
  NodeSet strict;  // subset of R that must appear in the output
  std::unordered_map<NodeId, double> penalties;  // soft penalties; absent => 0
  double epsilon = 1.0;

  bool subset_only() const { return epsilon == kEpsilonInfinity; }
  double penalty_of(NodeId r) const {
    auto it = penalties.find(r);
    return it == penalties.end() ? 0.0 : it->second;
  }

  /// Throws std::invalid_argument on violated invariants (empty R, strict not
  /// a subset of R, penalty keys outside R, nonpositive epsilon, negative
  /// penalties).
  void validate(const Graph& g) const;
};

/// Parameters of the cut-improvement bound: gamma = vol(R)/vol(T).
struct TheoryParams {
  double gamma = 0.0;
  double epsilon = 0.0;
};

/// Overlap score between the seed spec and s:
///   vol(R ∩ S) - epsilon * vol(S \ R) - sum of p_r * d_r over dropped seeds.
/// With the infinite-epsilon sentinel, any s not contained in R scores -inf.
double overlap_score(const Graph& g, const SeedSpec& spec, const NodeSet& s);

/// cut(S) / overlap(S) when the overlap is positive and all strict seeds are
/// present; +inf otherwise.
double seed_penalized_conductance(const Graph& g, const SeedSpec& spec, const NodeSet& s);

/// The alpha-parameterized cut objective
///   f(S) = cut(S) - alpha * overlap(S) + alpha * vol(R).
/// f(S) < alpha * vol(R) iff the seed-penalized conductance of S is < alpha
/// (for sets with positive overlap). Requires alpha in (0, 1].
double alpha_objective(const Graph& g, const SeedSpec& spec, double alpha, const NodeSet& s);

/// Cut-improvement constant C = 1 / (gamma + epsilon*gamma - epsilon).
/// Throws std::domain_error when the denominator is nonpositive.
double improvement_constant(const TheoryParams& tp);

}  // namespace seedflow
