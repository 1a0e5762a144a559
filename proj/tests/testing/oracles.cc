#include "testing/oracles.h"

#include <map>

namespace anoncheck::testing {

std::vector<Point> all_points(const System& system) {
  std::vector<Point> points;
  for (std::size_t r = 0; r < system.runs().size(); ++r) {
    for (int m = 0; m <= system.horizon(); ++m) points.push_back(Point{r, m});
  }
  return points;
}

std::vector<Point> scan_knowledge_set(const System& system, std::size_t agent,
                                      Point p) {
  std::vector<Point> out;
  for (Point q : all_points(system)) {
    if (system.runs()[q.run].states[static_cast<std::size_t>(q.time)].locals[agent] ==
        system.runs()[p.run].states[static_cast<std::size_t>(p.time)].locals[agent]) {
      out.push_back(q);
    }
  }
  return out;
}

std::vector<LocalState> stutter_free_history(const System& system,
                                             std::size_t agent, Point p) {
  std::vector<LocalState> history;
  for (int m = 0; m <= p.time; ++m) {
    const LocalState& s =
        system.runs()[p.run].states[static_cast<std::size_t>(m)].locals[agent];
    if (history.empty() || history.back() != s) history.push_back(s);
  }
  return history;
}

ProbabilityOutcome brute_probability(const System& system,
                                     const RunMeasure& measure,
                                     std::size_t agent, Point p,
                                     const PointPredicate& target,
                                     const PointPredicate* condition) {
  using Kind = ProbabilityOutcome::Kind;
  std::map<std::size_t, std::vector<Point>> fibers;
  for (Point q : scan_knowledge_set(system, agent, p)) fibers[q.run].push_back(q);

  Rational total = 0, cond_mass = 0, joint_mass = 0;
  bool uniform = true;
  for (const auto& [run, points] : fibers) {
    std::vector<std::pair<bool, bool>> values;
    for (Point q : points) {
      const bool c = condition == nullptr || (*condition)(q);
      values.emplace_back(c, c && target(q));
    }
    for (const auto& v : values) uniform = uniform && v == values.front();
    const Rational w = measure.by_id().at(system.runs()[run].id);
    total += w;
    if (values.front().first) cond_mass += w;
    if (values.front().second) joint_mass += w;
  }
  if (total == 0) return {Kind::kZeroClass, 0};
  if (!uniform) return {Kind::kNonMeasurable, 0};
  if (condition == nullptr) return {Kind::kValue, joint_mass / total};
  if (cond_mass == 0) return {Kind::kZeroCondition, 0};
  return {Kind::kValue, joint_mass / cond_mass};
}

bool performs_in_run(const System& system, const std::string& agent,
                     const std::string& action, Point p) {
  for (const Event& e : system.runs()[p.run].events) {
    if (e.agent == agent && e.action == action) return true;
  }
  return false;
}

bool performed_by(const System& system, const std::string& agent,
                  const std::string& action, Point p) {
  for (const Event& e : system.runs()[p.run].events) {
    if (e.agent == agent && e.action == action && e.time <= p.time) return true;
  }
  return false;
}

}  // namespace anoncheck::testing
