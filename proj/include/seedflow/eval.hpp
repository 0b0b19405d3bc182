#pragma once

#include <cstdint>
#include <limits>

#include "seedflow/graph.hpp"

namespace seedflow {

struct EvalReport {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::int64_t set_size = 0;
  double conductance = std::numeric_limits<double>::quiet_NaN();
  double pi_score = std::numeric_limits<double>::quiet_NaN();
};

/// Precision/recall/F1 of output against a nonempty target set. Throws
/// std::invalid_argument for an empty target.
EvalReport evaluate(const NodeSet& output, const NodeSet& target);

}  // namespace seedflow
