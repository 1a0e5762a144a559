#ifndef ANONCHECK_TESTS_TESTING_FIXTURES_H_
#define ANONCHECK_TESTS_TESTING_FIXTURES_H_

#include <map>
#include <string>
#include <vector>

#include "anoncheck/prob.h"
#include "anoncheck/system.h"

namespace anoncheck::testing {

// locals[m][a] is agent a's state at time m; the environment is constant.
inline Run make_run(std::string id,
                    const std::vector<std::vector<std::string>>& locals,
                    std::vector<Event> events = {}) {
  Run run;
  run.id = std::move(id);
  for (const auto& row : locals) {
    GlobalState g;
    g.env = LocalState{"env"};
    for (const auto& s : row) g.locals.push_back(LocalState{s});
    run.states.push_back(std::move(g));
  }
  run.events = std::move(events);
  return run;
}

inline std::map<std::string, Rational> weights(
    std::initializer_list<std::pair<const char*, Rational>> items) {
  std::map<std::string, Rational> out;
  for (const auto& [id, w] : items) out.emplace(id, w);
  return out;
}

// Agents i, j, k. In r1 i performs a at time 1 after j saw a signal at time
// 0; in r2 k performs a at time 1 and there was no signal. At time 1 j's
// state no longer shows the signal.
inline InterpretedSystem signal_system() {
  return InterpretedSystem(System(
      {"i", "j", "k"},
      {make_run("r1", {{"i0", "sig", "k0"}, {"i1", "t1", "k1"}}, {{"i", "a", 1}}),
       make_run("r2", {{"i0", "nosig", "k0"}, {"i1", "t1", "k1"}},
                {{"k", "a", 1}})}));
}

// Agents 1..4 and observer o, horizon 4; in run r<k> agent k performs a at
// time k. The observer sees only the time.
inline InterpretedSystem staggered_system() {
  std::vector<Run> runs;
  for (int k = 1; k <= 4; ++k) {
    std::vector<std::vector<std::string>> locals;
    for (int m = 0; m <= 4; ++m) {
      std::vector<std::string> row;
      for (int a = 1; a <= 4; ++a) {
        // Performers know their own history.
        row.push_back(a == k && m >= k ? "done" : "idle" + std::to_string(m));
      }
      row.push_back("t" + std::to_string(m));
      locals.push_back(std::move(row));
    }
    runs.push_back(make_run("r" + std::to_string(k), locals,
                            {{std::to_string(k), "a", k}}));
  }
  return InterpretedSystem(System({"1", "2", "3", "4", "o"}, std::move(runs)));
}

// Donors 0 and 1 and observer o. Runs d0, d1 (that donor gives at time 0),
// n1, n2 (nobody gives). At time 1 o learns whether a donation happened but
// not from whom. "donated" holds on d0 and d1.
inline InterpretedSystem donation_system() {
  auto run = [](const char* id, const char* seen, std::vector<Event> ev) {
    return make_run(id, {{"x", "x", "t0"}, {"x", "x", seen}}, std::move(ev));
  };
  System system({"0", "1", "o"},
                {run("d0", "gift", {{"0", "gives", 0}}),
                 run("d1", "gift", {{"1", "gives", 0}}),
                 run("n1", "none", {}), run("n2", "none", {})});
  InterpretedSystem::Interpretation interp;
  for (const char* id : {"d0", "d1"}) {
    for (int m = 0; m <= 1; ++m) interp["donated"].push_back(system.point(id, m));
  }
  return InterpretedSystem(std::move(system), std::move(interp));
}

}  // namespace anoncheck::testing

#endif  // ANONCHECK_TESTS_TESTING_FIXTURES_H_
