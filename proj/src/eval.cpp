#include "seedflow/eval.hpp"

#include <stdexcept>

namespace seedflow {

EvalReport evaluate(const NodeSet& output, const NodeSet& target) {
  if (target.empty()) throw std::invalid_argument("evaluation target is empty");
  EvalReport r;
  r.set_size = static_cast<std::int64_t>(output.size());
  const double overlap = static_cast<double>(output.intersect(target).size());
  r.precision = output.empty() ? 0.0 : overlap / static_cast<double>(output.size());
  r.recall = overlap / static_cast<double>(target.size());
  r.f1 = (r.precision + r.recall) > 0.0
             ? 2.0 * r.precision * r.recall / (r.precision + r.recall)
             : 0.0;
  return r;
}

}  // namespace seedflow
