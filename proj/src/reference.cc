#include "anoncheck/reference.h"

#include <map>

#include "anoncheck/errors.h"

namespace anoncheck::reference {
namespace {

std::vector<Point> all_points(const System& sys) {
  std::vector<Point> points;
  for (std::size_t r = 0; r < sys.runs().size(); ++r) {
    for (int m = 0; m <= sys.horizon(); ++m) points.push_back(Point{r, m});
  }
  return points;
}

std::vector<Point> indistinguishable(const System& sys, std::size_t agent,
                                     Point p) {
  std::vector<Point> result;
  const LocalState& here = sys.local_state(agent, p);
  for (const Point& q : all_points(sys)) {
    if (sys.local_state(agent, q) == here) result.push_back(q);
  }
  return result;
}

bool performed(const Run& run, const std::string& agent,
               const std::string& action, int by_time) {
  for (const Event& e : run.events) {
    if (e.agent == agent && e.action == action && e.time <= by_time) {
      return true;
    }
  }
  return false;
}

bool pr_holds(const EvalContext& ctx, Point p, const Formula& f) {
  const RunMeasure* measure = ctx.measure();
  if (measure == nullptr) throw SemanticError("no run measure supplied");
  const System& sys = ctx.system().system();
  const std::vector<Point> klass =
      indistinguishable(sys, sys.agent_index(f.name()), p);
  const Formula* condition = f.condition();

  // Per run through the class: (condition holds, condition and target hold)
  // at every class point on that run.
  std::map<std::size_t, std::pair<bool, bool>> fibers;
  bool split = false;
  for (const Point& q : klass) {
    const bool c = condition == nullptr || holds(ctx, q, *condition);
    const bool t = holds(ctx, q, f.target());
    const std::pair<bool, bool> value{c, c && t};
    auto [it, inserted] = fibers.emplace(q.run, value);
    if (!inserted && it->second != value) split = true;
  }
  Rational total = 0, cond_mass = 0, joint_mass = 0;
  for (const auto& [run, value] : fibers) {
    total += measure->weight(run);
    if (value.first) cond_mass += measure->weight(run);
    if (value.second) joint_mass += measure->weight(run);
  }
  if (total == 0) throw ZeroProbabilityClass("zero-probability class");
  if (split) throw NonMeasurableEvent("fiber split at " + ctx.system().describe(p));
  Rational pr;
  if (condition == nullptr) {
    pr = joint_mass / total;
  } else {
    if (cond_mass == 0) throw ZeroConditioningEvent("zero conditioning mass");
    pr = joint_mass / cond_mass;
  }
  return compare(pr, f.comparison(), f.bound());
}

}  // namespace

bool holds(const EvalContext& ctx, Point p, const Formula& f) {
  const System& sys = ctx.system().system();
  switch (f.kind()) {
    case Formula::Kind::kProp: {
      auto it = ctx.system().interpretation().find(f.name());
      if (it == ctx.system().interpretation().end()) return false;
      for (const Point& q : it->second) {
        if (q == p) return true;
      }
      return false;
    }
    case Formula::Kind::kNot:
      return !holds(ctx, p, f.operand());
    case Formula::Kind::kAnd:
      return holds(ctx, p, f.lhs()) && holds(ctx, p, f.rhs());
    case Formula::Kind::kOr:
      return holds(ctx, p, f.lhs()) || holds(ctx, p, f.rhs());
    case Formula::Kind::kImplies:
      return !holds(ctx, p, f.lhs()) || holds(ctx, p, f.rhs());
    case Formula::Kind::kKnows:
    case Formula::Kind::kPossible: {
      // Every class member is evaluated, matching the kernel's demand rule.
      bool all = true, any = false;
      for (const Point& q :
           indistinguishable(sys, sys.agent_index(f.name()), p)) {
        const bool v = holds(ctx, q, f.operand());
        all = all && v;
        any = any || v;
      }
      return f.kind() == Formula::Kind::kKnows ? all : any;
    }
    case Formula::Kind::kTheta:
      sys.agent_index(f.name());
      return performed(sys.runs()[p.run], f.name(), f.action(), sys.horizon());
    case Formula::Kind::kDelta:
      sys.agent_index(f.name());
      return performed(sys.runs()[p.run], f.name(), f.action(), p.time);
    case Formula::Kind::kThetaOther:
      sys.agent_index(f.name());
      for (const AgentId& other : sys.roster()) {
        if (other != f.name() &&
            performed(sys.runs()[p.run], other, f.action(), sys.horizon())) {
          return true;
        }
      }
      return false;
    case Formula::Kind::kProbability:
      return pr_holds(ctx, p, f);
  }
  return false;
}

std::vector<char> label(const EvalContext& ctx, const Formula& formula) {
  std::vector<char> v;
  for (const Point& p : all_points(ctx.system().system())) {
    v.push_back(holds(ctx, p, formula));
  }
  return v;
}

}  // namespace anoncheck::reference
