#include "anoncheck/prob.h"

#include <algorithm>

#include "anoncheck/errors.h"
#include "anoncheck/evaluator.h"

namespace anoncheck {

RunMeasure::RunMeasure(const System& system,
                       const std::map<std::string, Rational>& weights) {
  Rational total = 0;
  for (const auto& [id, w] : weights) {
    if (!system.find_run(id)) {
      throw ModelError("measure assigns weight to unknown run '" + id + "'");
    }
    if (w < 0) throw ModelError("negative weight for run '" + id + "'");
  }
  for (const Run& run : system.runs()) {
    auto it = weights.find(run.id);
    if (it == weights.end()) {
      throw ModelError("measure has no weight for run '" + run.id + "'");
    }
    run_ids_.push_back(run.id);
    weights_.push_back(it->second);
    total += it->second;
  }
  if (total != 1) {
    throw ModelError("run weights sum to " + to_string(total) + ", not 1");
  }
}

RunMeasure RunMeasure::uniform(const System& system) {
  std::map<std::string, Rational> weights;
  const Rational w(1, static_cast<long long>(system.runs().size()));
  for (const Run& run : system.runs()) weights.emplace(run.id, w);
  return RunMeasure(system, weights);
}

std::map<std::string, Rational> RunMeasure::by_id() const {
  std::map<std::string, Rational> result;
  for (std::size_t r = 0; r < run_ids_.size(); ++r) {
    result.emplace(run_ids_[r], weights_[r]);
  }
  return result;
}

namespace internal {

Rational class_probability(const InterpretedSystem& system,
                           const RunMeasure& measure,
                           std::span<const std::size_t> members,
                           const std::vector<char>& target,
                           const std::vector<char>* condition,
                           bool run_stable) {
  Rational total = 0;
  Rational condition_mass = 0;
  Rational joint_mass = 0;
  std::optional<std::size_t> split_run;
  std::size_t begin = 0;
  while (begin < members.size()) {
    const std::size_t run = system.point_at(members[begin]).run;
    std::size_t end = begin + 1;
    while (end < members.size() && system.point_at(members[end]).run == run) {
      ++end;
    }
    const std::size_t head = members[begin];
    const bool cond_here = condition == nullptr || (*condition)[head];
    const bool joint_here = cond_here && target[head];
    for (std::size_t k = begin + 1; k < end && !run_stable && !split_run; ++k) {
      const std::size_t idx = members[k];
      const bool c = condition == nullptr || (*condition)[idx];
      if (c != cond_here || (c && target[idx]) != joint_here) split_run = run;
    }
    const Rational& w = measure.weight(run);
    total += w;
    if (cond_here) condition_mass += w;
    if (joint_here) joint_mass += w;
    begin = end;
  }
  // Without positive mass mu_{r,m,i} is undefined, so that error comes first.
  if (total == 0) {
    throw ZeroProbabilityClass(
        "the runs through the knowledge set at " +
        system.describe(system.point_at(members.front())) +
        " have probability 0");
  }
  if (split_run) {
    throw NonMeasurableEvent(
        "the satisfying set splits the fiber of run '" +
        system.system().runs()[*split_run].id + "' inside the knowledge set at " +
        system.describe(system.point_at(members.front())));
  }
  if (condition == nullptr) return joint_mass / total;
  if (condition_mass == 0) {
    throw ZeroConditioningEvent(
        "the conditioning event has probability 0 in the knowledge set at " +
        system.describe(system.point_at(members.front())));
  }
  return joint_mass / condition_mass;
}

}  // namespace internal

PointMeasure condition_at(const RunMeasure& measure,
                          const InterpretedSystem& system,
                          std::string_view agent, Point p) {
  PointMeasure result;
  result.base = p;
  result.agent = std::string(agent);
  result.knowledge_class = knowledge_set(system, agent, p);
  Rational total = 0;
  for (const Point& q : result.knowledge_class) {
    const std::string& id = system.system().runs()[q.run].id;
    if (result.fiber_weights.emplace(id, measure.weight(q.run)).second) {
      total += measure.weight(q.run);
    }
  }
  if (total == 0) {
    throw ZeroProbabilityClass("the runs through the knowledge set of " +
                               result.agent + " at " + system.describe(p) +
                               " have probability 0");
  }
  for (auto& [id, w] : result.fiber_weights) w /= total;
  return result;
}

Rational point_probability(const EvalContext& ctx, std::string_view agent,
                           Point p, const Formula& target,
                           const Formula* condition) {
  if (ctx.measure() == nullptr) {
    throw SemanticError("point_probability needs a run measure");
  }
  const InterpretedSystem& system = ctx.system();
  if (!system.system().contains(p)) throw ModelError("point outside the system");
  const KnowledgePartition& part =
      system.partition(system.system().agent_index(agent));
  const auto& members = part.members[part.class_of[system.index_of(p)]];
  const bool run_stable =
      is_run_formula(target) && (!condition || is_run_formula(*condition));
  TruthVector demand(system.num_points(), 0);
  for (std::size_t idx : members) demand[idx] = 1;
  const TruthVector t = label(ctx, target, demand);
  TruthVector c;
  if (condition) c = label(ctx, *condition, demand);
  return internal::class_probability(system, *ctx.measure(), members, t,
                                     condition ? &c : nullptr, run_stable);
}

Rational run_event_probability(const RunMeasure& measure,
                               const std::set<std::string>& runs) {
  const auto& ids = measure.run_ids();
  Rational total = 0;
  for (const std::string& id : runs) {
    auto it = std::lower_bound(ids.begin(), ids.end(), id);
    if (it == ids.end() || *it != id) {
      throw ModelError("unknown run '" + id + "'");
    }
    total += measure.weight(static_cast<std::size_t>(it - ids.begin()));
  }
  return total;
}

Rational violation_probability(const EvalContext& ctx, const Formula& formula) {
  if (ctx.measure() == nullptr) {
    throw SemanticError("violation_probability needs a run measure");
  }
  const std::vector<std::string> bad =
      satisfying_runs(ctx, Formula::negation(formula));
  return run_event_probability(*ctx.measure(),
                               std::set<std::string>(bad.begin(), bad.end()));
}

}  // namespace anoncheck
