#ifndef ANONCHECK_REFERENCE_H_
#define ANONCHECK_REFERENCE_H_

#include <vector>

#include "anoncheck/evaluator.h"

// Serial point-by-point evaluator that follows the satisfaction clauses
// literally: knowledge sets are recomputed by scanning every point, theta and
// delta read the raw event logs, and Pr conditions the run measure by brute
// force. It shares no code with the labeling kernel and is kept as the
// oracle for it and as the baseline of the benchmark.
namespace anoncheck::reference {

bool holds(const EvalContext& ctx, Point p, const Formula& formula);

// holds() at every point, in point-index order.
std::vector<char> label(const EvalContext& ctx, const Formula& formula);

}  // namespace anoncheck::reference

#endif  // ANONCHECK_REFERENCE_H_
