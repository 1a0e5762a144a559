#include "anoncheck/system.h"

#include <algorithm>
#include <set>
#include <unordered_map>

#include "anoncheck/errors.h"

namespace anoncheck {

bool is_valid_token(std::string_view text) {
  if (text.empty()) return false;
  return std::all_of(text.begin(), text.end(), [](char c) {
    return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') ||
           (c >= '0' && c <= '9') || c == '_' || c == '.';
  });
}

System::System(std::vector<AgentId> roster, std::vector<Run> runs)
    : roster_(std::move(roster)), runs_(std::move(runs)) {
  for (std::size_t i = 0; i < roster_.size(); ++i) {
    const AgentId& name = roster_[i];
    if (!is_valid_token(name)) {
      throw ModelError("invalid agent name '" + name + "'");
    }
    if (name == kEnvironmentName) {
      throw ModelError("agent name 'env' is reserved for the environment");
    }
    if (!agent_index_.emplace(name, i).second) {
      throw ModelError("duplicate agent '" + name + "' in roster");
    }
  }
  if (runs_.empty()) throw ModelError("a system needs at least one run");

  std::sort(runs_.begin(), runs_.end(),
            [](const Run& a, const Run& b) { return a.id < b.id; });

  horizon_ = static_cast<int>(runs_.front().states.size()) - 1;
  if (horizon_ < 0) {
    throw ModelError("run '" + runs_.front().id + "' has no states");
  }
  first_time_.resize(runs_.size());
  for (std::size_t r = 0; r < runs_.size(); ++r) {
    Run& run = runs_[r];
    if (!is_valid_token(run.id)) {
      throw ModelError("invalid run id '" + run.id + "'");
    }
    if (!run_index_.emplace(run.id, r).second) {
      throw ModelError("duplicate run id '" + run.id + "'");
    }
    if (static_cast<int>(run.states.size()) != horizon_ + 1) {
      throw ModelError("run '" + run.id + "' has " +
                       std::to_string(run.states.size()) +
                       " states; expected uniform horizon " +
                       std::to_string(horizon_));
    }
    for (const GlobalState& g : run.states) {
      if (g.locals.size() != roster_.size()) {
        throw ModelError("run '" + run.id +
                         "' has a global state that is not total over the "
                         "roster");
      }
    }
    std::sort(run.events.begin(), run.events.end());
    if (std::adjacent_find(run.events.begin(), run.events.end()) !=
        run.events.end()) {
      throw ModelError("run '" + run.id + "' repeats an event at one time");
    }
    for (const Event& e : run.events) {
      auto agent = find_agent(e.agent);
      if (!agent) {
        throw ModelError("run '" + run.id + "' has an event by unknown agent '" +
                         e.agent + "'");
      }
      if (!is_valid_token(e.action)) {
        throw ModelError("invalid action name '" + e.action + "'");
      }
      if (e.time < 0 || e.time > horizon_) {
        throw ModelError("run '" + run.id + "' has an event outside the horizon");
      }
      auto [it, inserted] = first_time_[r].try_emplace(
          e.action, std::vector<int>(roster_.size(), -1));
      int& slot = it->second[*agent];
      if (slot < 0 || e.time < slot) slot = e.time;
    }
  }
}

std::optional<std::size_t> System::find_agent(std::string_view name) const {
  auto it = agent_index_.find(name);
  if (it == agent_index_.end()) return std::nullopt;
  return it->second;
}

std::size_t System::agent_index(std::string_view name) const {
  auto index = find_agent(name);
  if (!index) throw ModelError("unknown agent '" + std::string(name) + "'");
  return *index;
}

std::optional<std::size_t> System::find_run(std::string_view id) const {
  auto it = run_index_.find(id);
  if (it == run_index_.end()) return std::nullopt;
  return it->second;
}

Point System::point(std::string_view run_id, int time) const {
  auto run = find_run(run_id);
  if (!run) throw ModelError("unknown run '" + std::string(run_id) + "'");
  Point p{*run, time};
  if (!contains(p)) {
    throw ModelError("time " + std::to_string(time) +
                     " is outside the horizon of run '" + std::string(run_id) +
                     "'");
  }
  return p;
}

bool System::contains(Point p) const {
  return p.run < runs_.size() && p.time >= 0 && p.time <= horizon_;
}

std::optional<int> System::first_performance(std::size_t run,
                                             std::size_t agent,
                                             std::string_view action) const {
  const auto& table = first_time_[run];
  auto it = table.find(action);
  if (it == table.end() || it->second[agent] < 0) return std::nullopt;
  return it->second[agent];
}

bool System::mentions_action(std::string_view action) const {
  return std::any_of(first_time_.begin(), first_time_.end(),
                     [&](const auto& table) { return table.contains(action); });
}

InterpretedSystem::InterpretedSystem(System system,
                                     Interpretation interpretation)
    : system_(std::move(system)), interpretation_(std::move(interpretation)) {
  num_points_ = system_.runs().size() * points_per_run();

  for (auto& [name, points] : interpretation_) {
    if (!is_valid_token(name)) {
      throw ModelError("invalid proposition name '" + name + "'");
    }
    std::vector<char> truth(num_points_, 0);
    for (const Point& p : points) {
      if (!system_.contains(p)) {
        throw ModelError("proposition '" + name +
                         "' lists a point outside the system");
      }
      truth[index_of(p)] = 1;
    }
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    truth_.emplace(name, std::move(truth));
  }

  const std::size_t agents = system_.roster().size();
  partitions_.resize(agents);
  for (std::size_t a = 0; a < agents; ++a) {
    KnowledgePartition& part = partitions_[a];
    part.class_of.resize(num_points_);
    std::unordered_map<std::string_view, std::size_t> ids;
    for (std::size_t idx = 0; idx < num_points_; ++idx) {
      const LocalState& s = system_.local_state(a, point_at(idx));
      auto [it, inserted] = ids.try_emplace(s.value, part.members.size());
      if (inserted) part.members.emplace_back();
      part.class_of[idx] = it->second;
      part.members[it->second].push_back(idx);
    }
  }
}

const std::vector<char>* InterpretedSystem::proposition(
    std::string_view name) const {
  auto it = truth_.find(name);
  return it == truth_.end() ? nullptr : &it->second;
}

std::string InterpretedSystem::describe(Point p) const {
  return "(" + system_.runs()[p.run].id + ", " + std::to_string(p.time) + ")";
}

std::vector<Point> points_of(const InterpretedSystem& system) {
  std::vector<Point> points;
  points.reserve(system.num_points());
  for (std::size_t i = 0; i < system.num_points(); ++i) {
    points.push_back(system.point_at(i));
  }
  return points;
}

std::vector<Point> knowledge_set(const InterpretedSystem& system,
                                 std::string_view agent, Point p) {
  if (!system.system().contains(p)) {
    throw ModelError("point outside the system");
  }
  const KnowledgePartition& part =
      system.partition(system.system().agent_index(agent));
  std::vector<Point> result;
  for (std::size_t idx : part.members[part.class_of[system.index_of(p)]]) {
    result.push_back(system.point_at(idx));
  }
  return result;
}

bool is_synchronous(const InterpretedSystem& system) {
  for (std::size_t a = 0; a < system.system().roster().size(); ++a) {
    for (const auto& members : system.partition(a).members) {
      const int t = system.point_at(members.front()).time;
      for (std::size_t idx : members) {
        if (system.point_at(idx).time != t) return false;
      }
    }
  }
  return true;
}

bool has_perfect_recall(const InterpretedSystem& system,
                        std::string_view agent) {
  const System& sys = system.system();
  const std::size_t a = sys.agent_index(agent);
  // Local state -> the stutter-free history that first produced it.
  std::map<std::string_view, std::vector<std::string_view>> seen;
  for (std::size_t r = 0; r < sys.runs().size(); ++r) {
    std::vector<std::string_view> history;
    for (int m = 0; m <= sys.horizon(); ++m) {
      std::string_view s = sys.local_state(a, Point{r, m}).value;
      if (history.empty() || history.back() != s) history.push_back(s);
      auto [it, inserted] = seen.try_emplace(s, history);
      if (!inserted && it->second != history) return false;
    }
  }
  return true;
}

}  // namespace anoncheck
