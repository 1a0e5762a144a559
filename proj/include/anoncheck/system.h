#ifndef ANONCHECK_SYSTEM_H_
#define ANONCHECK_SYSTEM_H_

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace anoncheck {

using AgentId = std::string;

// Agent names, actions, run ids and proposition names are tokens over
// [A-Za-z0-9_.]. "env" is reserved for the environment.
bool is_valid_token(std::string_view text);
inline constexpr std::string_view kEnvironmentName = "env";

// Opaque local state. Two states are the same iff their values are equal.
struct LocalState {
  std::string value;

  friend auto operator<=>(const LocalState&, const LocalState&) = default;
};

struct GlobalState {
  LocalState env;
  // Parallel to System::roster().
  std::vector<LocalState> locals;
};

struct Event {
  AgentId agent;
  std::string action;
  int time = 0;

  friend auto operator<=>(const Event&, const Event&) = default;
};

struct Run {
  std::string id;
  // states[m] is the global state at time m; size is horizon + 1.
  std::vector<GlobalState> states;
  std::vector<Event> events;
};

// A point (r, m). `run` indexes System::runs(), which is sorted by run id,
// so the natural ordering of points is (run id, time) lexicographic.
struct Point {
  std::size_t run = 0;
  int time = 0;

  friend auto operator<=>(const Point&, const Point&) = default;
};

// A finite set of runs over a fixed roster, all sharing one horizon.
class System {
 public:
  System(std::vector<AgentId> roster, std::vector<Run> runs);

  const std::vector<AgentId>& roster() const { return roster_; }
  const std::vector<Run>& runs() const { return runs_; }
  int horizon() const { return horizon_; }

  // Throws ModelError for names not in the roster.
  std::size_t agent_index(std::string_view name) const;
  std::optional<std::size_t> find_agent(std::string_view name) const;
  std::optional<std::size_t> find_run(std::string_view id) const;

  // Throws ModelError if the run id or time is out of range.
  Point point(std::string_view run_id, int time) const;
  bool contains(Point p) const;

  const LocalState& local_state(std::size_t agent, Point p) const {
    return runs_[p.run].states[static_cast<std::size_t>(p.time)]
        .locals[agent];
  }

  // Earliest time at which `agent` performs `action` in run `run`.
  std::optional<int> first_performance(std::size_t run, std::size_t agent,
                                       std::string_view action) const;

  // True if any run's event log mentions `action`.
  bool mentions_action(std::string_view action) const;

 private:
  std::vector<AgentId> roster_;
  std::vector<Run> runs_;
  int horizon_ = 0;
  std::map<std::string, std::size_t, std::less<>> agent_index_;
  std::map<std::string, std::size_t, std::less<>> run_index_;
  // Per run: action -> earliest time per roster agent (-1 if never).
  std::vector<std::map<std::string, std::vector<int>, std::less<>>>
      first_time_;
};

// The K_i indistinguishability partition of the points of a system.
struct KnowledgePartition {
  // class_of[point index] is the class id of that point.
  std::vector<std::size_t> class_of;
  // members[class id] lists point indices in increasing order.
  std::vector<std::vector<std::size_t>> members;
};

// A system together with an interpretation of primitive propositions.
class InterpretedSystem {
 public:
  using Interpretation = std::map<std::string, std::vector<Point>>;

  explicit InterpretedSystem(System system, Interpretation interpretation = {});

  const System& system() const { return system_; }
  const Interpretation& interpretation() const { return interpretation_; }

  std::size_t num_points() const { return num_points_; }
  std::size_t points_per_run() const {
    return static_cast<std::size_t>(system_.horizon()) + 1;
  }
  std::size_t index_of(Point p) const {
    return p.run * points_per_run() + static_cast<std::size_t>(p.time);
  }
  Point point_at(std::size_t index) const {
    return Point{index / points_per_run(),
                 static_cast<int>(index % points_per_run())};
  }

  // Truth vector by point index, or nullptr for unlisted propositions.
  const std::vector<char>* proposition(std::string_view name) const;

  const KnowledgePartition& partition(std::size_t agent) const {
    return partitions_[agent];
  }

  std::string describe(Point p) const;

 private:
  System system_;
  Interpretation interpretation_;
  std::size_t num_points_ = 0;
  std::map<std::string, std::vector<char>, std::less<>> truth_;
  std::vector<KnowledgePartition> partitions_;
};

std::vector<Point> points_of(const InterpretedSystem& system);

// K_i(r,m): all points where `agent` has the same local state as at `p`.
std::vector<Point> knowledge_set(const InterpretedSystem& system,
                                 std::string_view agent, Point p);

// Every agent knows the time: knowledge sets never mix times.
bool is_synchronous(const InterpretedSystem& system);

// Equal local states imply equal stutter-free histories of local states.
bool has_perfect_recall(const InterpretedSystem& system,
                        std::string_view agent);

}  // namespace anoncheck

#endif  // ANONCHECK_SYSTEM_H_
