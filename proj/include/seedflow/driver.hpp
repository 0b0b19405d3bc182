#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "seedflow/graph.hpp"
#include "seedflow/local_solver.hpp"
#include "seedflow/objective.hpp"

namespace seedflow {

/// Operating modes. `simplelocal` clears strict seeds and penalties and
/// defaults to conductance-based alpha updates; `mqi` restricts candidates to
/// subsets of the seed set via the infinite-epsilon sentinel.
enum class Mode { flowseed, simplelocal, mqi };

/// How alpha is lowered after each improving step: from the seed-penalized
/// score of the new set (pi) or from its plain conductance (phi).
enum class AlphaUpdate { pi, phi };

struct SolveOptions {
  Mode mode = Mode::flowseed;
  std::optional<AlphaUpdate> alpha_update;  // unset: pi, or phi for simplelocal
  int max_outer_iterations = 0;             // 0 = unlimited
  double relative_tolerance = 1e-10;        // "no improvement" detection
};

struct ClusterResult {
  NodeSet best_set;
  double pi_score = 0.0;
  double conductance = 0.0;  // NaN when undefined (full or zero-volume side)
  std::vector<double> alpha_trace;  // accepted alpha values, strictly decreasing
  int outer_iterations = 0;         // localized min-cut solves performed
  std::vector<LocalSolveReport> iterations;
  double wall_time_sec = 0.0;
};

/// Lowers alpha from the seed set's own score via localized min-cut solves
/// until no set with smaller seed-penalized conductance exists. Throws
/// std::invalid_argument for an empty or zero-volume seed set and
/// InfeasibleError when the descent cannot start.
ClusterResult cluster(const Graph& g, const SeedSpec& spec, const SolveOptions& opts = {});

/// One descent step at the given alpha: the localized minimizer and its
/// updated alpha (pi or phi per options; +inf when the step yields no
/// usable set).
std::pair<NodeSet, double> alpha_search_step(const Graph& g, const SeedSpec& spec, double alpha,
                                             const SolveOptions& opts = {});

/// Spec with mode-dependent normalization applied (penalties cleared for
/// simplelocal, epsilon sentinel for mqi).
SeedSpec normalized_spec(const SeedSpec& spec, Mode mode);

}  // namespace seedflow
