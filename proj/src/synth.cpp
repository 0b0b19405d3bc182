#include "seedflow/synth.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "seedflow/errors.hpp"

namespace seedflow {

namespace {

// [0, 1): 53 random bits, portable across standard libraries.
double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t n) {
  return rng() % n;  // modulo bias is irrelevant at these sizes
}

// Visits each of the `total` slots independently with probability p, via
// geometric skips, so cost is proportional to the number of hits.
template <typename Fn>
void sample_slots(std::int64_t total, double p, std::mt19937_64& rng, Fn&& fn) {
  if (total <= 0 || p <= 0.0) return;
  if (p >= 1.0) {
    for (std::int64_t i = 0; i < total; ++i) fn(i);
    return;
  }
  const double logq = std::log1p(-p);
  std::int64_t idx = -1;
  for (;;) {
    double u = uniform01(rng);
    if (u <= 0.0) u = 0x1.0p-53;
    idx += 1 + static_cast<std::int64_t>(std::floor(std::log(u) / logq));
    if (idx >= total) return;
    fn(idx);
  }
}

// Linear index over the strict upper triangle of a k*k grid -> (i, j), i < j.
std::pair<std::int64_t, std::int64_t> triangle_pair(std::int64_t idx, std::int64_t k) {
  std::int64_t i = static_cast<std::int64_t>(
      std::floor((2.0 * k - 1.0 - std::sqrt((2.0 * k - 1.0) * (2.0 * k - 1.0) - 8.0 * (double)idx)) / 2.0));
  auto row_start = [&](std::int64_t r) { return r * (2 * k - r - 1) / 2; };
  while (i > 0 && row_start(i) > idx) --i;
  while (row_start(i + 1) <= idx) ++i;
  const std::int64_t j = i + 1 + (idx - row_start(i));
  return {i, j};
}

bool connected_within(const std::vector<Graph::WeightedEdge>& edges, std::int64_t block_size) {
  if (block_size <= 1) return true;
  std::vector<std::vector<std::int64_t>> adj(block_size);
  for (const auto& e : edges)
    if (e.u < block_size && e.v < block_size) {
      adj[e.u].push_back(e.v);
      adj[e.v].push_back(e.u);
    }
  std::vector<std::uint8_t> seen(block_size, 0);
  std::vector<std::int64_t> queue{0};
  seen[0] = 1;
  std::size_t reached = 1;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (std::int64_t w : adj[queue[head]])
      if (!seen[w]) {
        seen[w] = 1;
        ++reached;
        queue.push_back(w);
      }
  }
  return reached == static_cast<std::size_t>(block_size);
}

}  // namespace

PlantedGraph generate_planted(const SbmParams& params) {
  if (params.block_sizes.empty()) throw std::invalid_argument("no block sizes given");
  for (auto b : params.block_sizes)
    if (b <= 0) throw std::invalid_argument("block sizes must be positive");
  if (params.p_in < 0.0 || params.p_in > 1.0 || params.p_out < 0.0 || params.p_out > 1.0)
    throw std::invalid_argument("probabilities must lie in [0, 1]");

  std::vector<std::int64_t> starts{0};
  for (auto b : params.block_sizes) starts.push_back(starts.back() + b);
  const std::int64_t n = starts.back();
  const std::size_t k = params.block_sizes.size();

  for (int attempt = 0; attempt < std::max(params.max_retries, 1); ++attempt) {
    std::mt19937_64 rng(params.rng_seed + 0x9e3779b97f4a7c15ull * static_cast<std::uint64_t>(attempt));
    std::vector<Graph::WeightedEdge> edges;

    for (std::size_t b = 0; b < k; ++b) {
      const std::int64_t size = params.block_sizes[b];
      const std::int64_t lo = starts[b];
      sample_slots(size * (size - 1) / 2, params.p_in, rng, [&](std::int64_t idx) {
        auto [i, j] = triangle_pair(idx, size);
        edges.push_back({lo + i, lo + j, 1.0});
      });
    }
    for (std::size_t a = 0; a < k; ++a) {
      for (std::size_t b = a + 1; b < k; ++b) {
        const std::int64_t na = params.block_sizes[a], nb = params.block_sizes[b];
        sample_slots(na * nb, params.p_out, rng, [&](std::int64_t idx) {
          edges.push_back({starts[a] + idx / nb, starts[b] + idx % nb, 1.0});
        });
      }
    }

    if (!connected_within(edges, params.block_sizes[0])) continue;

    PlantedGraph out;
    out.graph = Graph::from_edges(n, std::move(edges));
    std::vector<NodeId> target(params.block_sizes[0]);
    for (std::int64_t i = 0; i < params.block_sizes[0]; ++i) target[i] = i;
    out.target = NodeSet(std::move(target));
    out.attempts = attempt + 1;
    return out;
  }
  throw InfeasibleError("planted target block stayed disconnected after " +
                        std::to_string(params.max_retries) + " attempts");
}

SeedSample make_seed(const Graph& g, const NodeSet& target, double fraction,
                     std::uint64_t rng_seed) {
  if (target.empty()) throw std::invalid_argument("seed target is empty");
  if (!(fraction > 0.0) || fraction > 1.0)
    throw std::invalid_argument("fraction must lie in (0, 1]");

  const std::int64_t total = static_cast<std::int64_t>(target.size());
  std::int64_t count =
      static_cast<std::int64_t>(std::ceil(fraction * static_cast<double>(total) - 1e-9));
  count = std::max<std::int64_t>(1, std::min(count, total));

  std::mt19937_64 rng(rng_seed);
  std::vector<NodeId> pool = target.ids();
  for (std::int64_t i = 0; i < count; ++i) {
    const std::int64_t j = i + static_cast<std::int64_t>(bounded(rng, pool.size() - i));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(count);

  SeedSample out;
  out.starters = NodeSet(pool);
  std::vector<NodeId> grown = out.starters.ids();
  for (NodeId v : out.starters)
    for (NodeId w : g.neighbors(v)) grown.push_back(w);
  out.seeds = NodeSet(std::move(grown));
  return out;
}

}  // namespace seedflow
