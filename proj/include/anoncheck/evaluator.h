#ifndef ANONCHECK_EVALUATOR_H_
#define ANONCHECK_EVALUATOR_H_

#include <optional>
#include <string>
#include <vector>

#include "anoncheck/formula.h"
#include "anoncheck/prob.h"
#include "anoncheck/system.h"

namespace anoncheck {

// An interpreted system, optionally with a run measure (needed only for
// formulas containing Pr). Holds references; both must outlive it.
class EvalContext {
 public:
  explicit EvalContext(const InterpretedSystem& system,
                       const RunMeasure* measure = nullptr)
      : system_(&system), measure_(measure) {}

  const InterpretedSystem& system() const { return *system_; }
  const RunMeasure* measure() const { return measure_; }

 private:
  const InterpretedSystem* system_;
  const RunMeasure* measure_;
};

// Truth values indexed by point index (InterpretedSystem::index_of).
using TruthVector = std::vector<char>;

// Labels every point where `demand` is set with the truth of the formula.
// Entries outside the demand are unspecified. Connectives evaluate their
// right operand only where the left one does not decide the result; K_j,
// P_j and Pr_j demand their operands on the whole knowledge class. Errors
// (zero-probability classes, non-measurable events) are raised only for
// demanded evaluations. Point and class loops run under OpenMP.
TruthVector label(const EvalContext& ctx, const Formula& formula,
                  const TruthVector& demand);
TruthVector label(const EvalContext& ctx, const Formula& formula);

bool evaluate(const EvalContext& ctx, Point p, const Formula& formula);

struct Validity {
  bool holds = true;
  // Least failing point in (run id, time) order when !holds.
  std::optional<Point> witness;
};

Validity valid_in(const EvalContext& ctx, const Formula& formula);

// e_p(phi), in (run id, time) order.
std::vector<Point> satisfying_points(const EvalContext& ctx,
                                     const Formula& formula);
// e_r(phi): ids of runs with at least one satisfying point, sorted.
std::vector<std::string> satisfying_runs(const EvalContext& ctx,
                                         const Formula& formula);

}  // namespace anoncheck

#endif  // ANONCHECK_EVALUATOR_H_
