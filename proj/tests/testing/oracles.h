#ifndef ANONCHECK_TESTS_TESTING_ORACLES_H_
#define ANONCHECK_TESTS_TESTING_ORACLES_H_

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "anoncheck/prob.h"
#include "anoncheck/rational.h"
#include "anoncheck/system.h"

// Brute-force definitions used as test oracles. Nothing here calls the
// library's evaluators; inputs are plain predicates over points.
namespace anoncheck::testing {

using PointPredicate = std::function<bool(Point)>;

std::vector<Point> all_points(const System& system);

// Every point where `agent` has the same local state as at p.
std::vector<Point> scan_knowledge_set(const System& system, std::size_t agent,
                                      Point p);

// Sequence of distinct consecutive local states of `agent` along the run of
// p up to p.
std::vector<LocalState> stutter_free_history(const System& system,
                                             std::size_t agent, Point p);

struct ProbabilityOutcome {
  enum class Kind { kValue, kZeroClass, kNonMeasurable, kZeroCondition };
  Kind kind = Kind::kValue;
  Rational value = 0;
};

// Pr_agent(target | condition) at p by enumerating runs: group the class by
// run, demand each fiber be uniform, and take the weighted ratio.
ProbabilityOutcome brute_probability(const System& system,
                                     const RunMeasure& measure,
                                     std::size_t agent, Point p,
                                     const PointPredicate& target,
                                     const PointPredicate* condition = nullptr);

// True if agent i performs `action` in the run of p (at any time), resp. by
// the time of p.
bool performs_in_run(const System& system, const std::string& agent,
                     const std::string& action, Point p);
bool performed_by(const System& system, const std::string& agent,
                  const std::string& action, Point p);

}  // namespace anoncheck::testing

#endif  // ANONCHECK_TESTS_TESTING_ORACLES_H_
