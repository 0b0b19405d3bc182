#pragma once

#include <cstdint>
#include <vector>

#include "seedflow/graph.hpp"

namespace seedflow {

/// Stochastic-block-model parameters. Block 0 is the planted target.
struct SbmParams {
  std::vector<std::int64_t> block_sizes;
  double p_in = 0.0;
  double p_out = 0.0;
  std::uint64_t rng_seed = 0;
  int max_retries = 50;  // regenerate while the target block is disconnected
};

struct PlantedGraph {
  Graph graph;
  NodeSet target;
  int attempts = 1;
};

/// Deterministic under rng_seed. Throws InfeasibleError when the target block
/// stays internally disconnected after max_retries attempts.
PlantedGraph generate_planted(const SbmParams& params);

struct SeedSample {
  NodeSet starters;
  NodeSet seeds;  // starters plus their one-hop neighborhood
};

/// Uniform sample of ceil(fraction * |target|) target nodes, grown by one
/// hop. Deterministic under rng_seed.
SeedSample make_seed(const Graph& g, const NodeSet& target, double fraction,
                     std::uint64_t rng_seed);

}  // namespace seedflow
