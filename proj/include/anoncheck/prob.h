#ifndef ANONCHECK_PROB_H_
#define ANONCHECK_PROB_H_

#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "anoncheck/formula.h"
#include "anoncheck/rational.h"
#include "anoncheck/system.h"

namespace anoncheck {

class EvalContext;

// A probability measure on the runs of one system. Every subset of runs is
// measurable; weights are exact and sum to exactly 1.
class RunMeasure {
 public:
  // Throws ModelError unless the keys are exactly the system's run ids, all
  // weights are nonnegative and they sum to 1.
  RunMeasure(const System& system, const std::map<std::string, Rational>& weights);

  static RunMeasure uniform(const System& system);

  // Indexed like System::runs().
  const Rational& weight(std::size_t run) const { return weights_[run]; }
  const std::vector<Rational>& weights() const { return weights_; }
  const std::vector<std::string>& run_ids() const { return run_ids_; }

  std::map<std::string, Rational> by_id() const;

 private:
  std::vector<std::string> run_ids_;
  std::vector<Rational> weights_;
};

// mu_{r,m,i}: the run measure conditioned on the runs through K_i(r,m).
struct PointMeasure {
  Point base;
  AgentId agent;
  std::vector<Point> knowledge_class;
  // Runs meeting the class, keyed by run id; sums to 1.
  std::map<std::string, Rational> fiber_weights;
};

// Throws ZeroProbabilityClass if the runs through the class have measure 0.
PointMeasure condition_at(const RunMeasure& measure,
                          const InterpretedSystem& system,
                          std::string_view agent, Point p);

// Pr_i(phi) (or Pr_i(phi | psi)) at p under mu_{r,m,i}. The satisfying set
// must be a union of whole run fibers of K_i(r,m), else NonMeasurableEvent.
// Formulas built from theta alone are run-stable and skip that check.
Rational point_probability(const EvalContext& ctx, std::string_view agent,
                           Point p, const Formula& target,
                           const Formula* condition = nullptr);

// mu(S). Throws ModelError for ids that are not runs of the measure.
Rational run_event_probability(const RunMeasure& measure,
                               const std::set<std::string>& runs);

// mu(e_r(!phi)): the mass of runs in which phi fails at some point.
Rational violation_probability(const EvalContext& ctx, const Formula& formula);

namespace internal {

// Probability of `target` (given `condition`) over one knowledge class.
// `members` are point indices sorted ascending (hence grouped by run);
// truth vectors are indexed by point. With run_stable set only the first
// point of each fiber is consulted.
Rational class_probability(const InterpretedSystem& system,
                           const RunMeasure& measure,
                           std::span<const std::size_t> members,
                           const std::vector<char>& target,
                           const std::vector<char>* condition,
                           bool run_stable);

}  // namespace internal
}  // namespace anoncheck

#endif  // ANONCHECK_PROB_H_
