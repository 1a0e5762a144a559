#include "anoncheck/csp.h"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

#include "anoncheck/anonymity.h"
#include "anoncheck/errors.h"
#include "anoncheck/evaluator.h"

namespace anoncheck::csp {
namespace {

bool valid_event(const Event& e) {
  return !e.empty() && std::none_of(e.begin(), e.end(), [](char c) {
    return std::isspace(static_cast<unsigned char>(c));
  });
}

void require_subset(const EventSet& subset, const EventSet& alphabet,
                    std::string_view what) {
  for (const Event& e : subset) {
    if (!alphabet.contains(e)) {
      throw ModelError(std::string(what) + " event '" + e +
                       "' is not in the alphabet");
    }
  }
}

// The common action a of A = {i.a : i in I_A}, and the agents I_A.
std::pair<std::string, std::vector<AgentId>> anonymous_action(
    const EventSet& anonymous) {
  std::string action;
  std::vector<AgentId> agents;
  for (const Event& e : anonymous) {
    auto parts = split_event(e);
    if (!parts || !is_valid_token(parts->first) ||
        !is_valid_token(parts->second)) {
      throw ModelError("anonymous event '" + e + "' is not of the form i.a");
    }
    if (action.empty()) action = parts->second;
    if (parts->second != action) {
      throw ModelError("anonymous events must share one action; found '" +
                       action + "' and '" + parts->second + "'");
    }
    agents.push_back(parts->first);
  }
  std::sort(agents.begin(), agents.end());
  return {action, agents};
}

}  // namespace

Process::Process(EventSet alphabet, std::set<Trace> traces)
    : alphabet_(std::move(alphabet)), traces_(std::move(traces)) {
  traces_.insert(Trace{});
  for (const Event& e : alphabet_) {
    if (!valid_event(e)) throw ModelError("invalid event '" + e + "'");
  }
  for (const Trace& t : traces_) {
    for (const Event& e : t) {
      if (!alphabet_.contains(e)) {
        throw ModelError("trace '" + to_string(t) + "' uses event '" + e +
                         "' outside the alphabet");
      }
    }
    if (!t.empty() && !traces_.contains(Trace(t.begin(), t.end() - 1))) {
      throw ModelError("trace set is not prefix-closed: '" + to_string(t) +
                       "' has no parent trace");
    }
  }
}

Process Process::prefix_closure(EventSet alphabet,
                                const std::set<Trace>& traces) {
  std::set<Trace> closed;
  for (const Trace& t : traces) {
    for (std::size_t len = 0; len <= t.size(); ++len) {
      closed.emplace(t.begin(), t.begin() + static_cast<std::ptrdiff_t>(len));
    }
  }
  return Process(std::move(alphabet), std::move(closed));
}

std::vector<Trace> Process::maximal_traces() const {
  std::vector<Trace> result;
  for (auto it = traces_.begin(); it != traces_.end(); ++it) {
    auto next = std::next(it);
    // In lexicographic order an extension of t, if any, directly follows t.
    const bool extended =
        next != traces_.end() && next->size() > it->size() &&
        std::equal(it->begin(), it->end(), next->begin());
    if (!extended) result.push_back(*it);
  }
  return result;
}

std::string to_string(const Trace& trace) {
  std::string s;
  for (const Event& e : trace) {
    if (!s.empty()) s += ' ';
    s += e;
  }
  return s;
}

Trace rename(const Trace& trace, const EventSet& anonymous) {
  Trace out = trace;
  for (Event& e : out) {
    if (anonymous.contains(e)) e = std::string(kAbstractionEvent);
  }
  return out;
}

Process apply_renaming(const Process& process, const EventSet& anonymous) {
  if (process.alphabet().contains(std::string(kAbstractionEvent))) {
    throw ModelError("the alphabet already contains the abstraction event");
  }
  require_subset(anonymous, process.alphabet(), "renamed");
  EventSet alphabet;
  for (const Event& e : process.alphabet()) {
    alphabet.insert(anonymous.contains(e) ? std::string(kAbstractionEvent) : e);
  }
  std::set<Trace> traces;
  for (const Trace& t : process.traces()) traces.insert(rename(t, anonymous));
  return Process(std::move(alphabet), std::move(traces));
}

Process apply_hiding(const Process& process, const EventSet& hidden) {
  require_subset(hidden, process.alphabet(), "hidden");
  EventSet alphabet;
  for (const Event& e : process.alphabet()) {
    if (!hidden.contains(e)) alphabet.insert(e);
  }
  std::set<Trace> traces;
  for (const Trace& t : process.traces()) {
    Trace kept;
    for (const Event& e : t) {
      if (!hidden.contains(e)) kept.push_back(e);
    }
    traces.insert(std::move(kept));
  }
  return Process(std::move(alphabet), std::move(traces));
}

StrongAnonymity strong_anonymity_on(const Process& process,
                                    const EventSet& anonymous) {
  const Process renamed = apply_renaming(process, anonymous);
  const std::vector<Event> choices(anonymous.begin(), anonymous.end());
  StrongAnonymity result;
  for (const Trace& image : renamed.traces()) {
    std::vector<std::size_t> slots;
    for (std::size_t k = 0; k < image.size(); ++k) {
      if (image[k] == kAbstractionEvent) slots.push_back(k);
    }
    // Odometer over every A-event assignment to the abstraction slots.
    std::vector<std::size_t> digit(slots.size(), 0);
    Trace candidate = image;
    while (true) {
      for (std::size_t s = 0; s < slots.size(); ++s) {
        candidate[slots[s]] = choices[digit[s]];
      }
      if (!process.traces().contains(candidate)) {
        if (!result.counterexample || candidate < *result.counterexample) {
          result.counterexample = candidate;
        }
        result.holds = false;
      }
      std::size_t s = 0;
      while (s < digit.size() && ++digit[s] == choices.size()) digit[s++] = 0;
      if (s == digit.size()) break;
    }
  }
  return result;
}

std::optional<std::pair<std::string, std::string>> split_event(
    std::string_view event) {
  const auto dot = event.find('.');
  if (dot == std::string_view::npos || dot == 0 || dot + 1 == event.size()) {
    return std::nullopt;
  }
  return std::make_pair(std::string(event.substr(0, dot)),
                        std::string(event.substr(dot + 1)));
}

InterpretedSystem compatible_system(const Process& process,
                                    const EventSet& anonymous,
                                    const AgentId& observer) {
  require_subset(anonymous, process.alphabet(), "anonymous");
  auto [action, agents] = anonymous_action(anonymous);
  if (std::find(agents.begin(), agents.end(), observer) != agents.end()) {
    throw ModelError("the observer '" + observer +
                     "' may not perform anonymous events");
  }
  std::vector<AgentId> roster = agents;
  roster.push_back(observer);

  const std::vector<Trace> maximal = process.maximal_traces();
  std::size_t horizon = 0;
  for (const Trace& t : maximal) horizon = std::max(horizon, t.size());
  const std::size_t width = std::to_string(maximal.size()).size();

  std::vector<Run> runs;
  for (std::size_t r = 0; r < maximal.size(); ++r) {
    const Trace& tau = maximal[r];
    std::string index = std::to_string(r);
    Run run;
    run.id = "tr" + std::string(width - index.size(), '0') + index;
    for (std::size_t m = 0; m <= horizon; ++m) {
      const Trace prefix(tau.begin(),
                         tau.begin() + static_cast<std::ptrdiff_t>(std::min(m, tau.size())));
      GlobalState g;
      g.env = LocalState{to_string(prefix)};
      for (std::size_t a = 0; a < agents.size(); ++a) g.locals.push_back(LocalState{"-"});
      g.locals.push_back(LocalState{to_string(rename(prefix, anonymous))});
      run.states.push_back(std::move(g));
    }
    for (std::size_t t = 0; t < tau.size(); ++t) {
      auto parts = split_event(tau[t]);
      if (!parts || !is_valid_token(parts->second)) continue;
      if (std::find(agents.begin(), agents.end(), parts->first) == agents.end()) {
        continue;
      }
      run.events.push_back(anoncheck::Event{parts->first, parts->second,
                                 static_cast<int>(t) + 1});
    }
    runs.push_back(std::move(run));
  }
  InterpretedSystem system(System(std::move(roster), std::move(runs)));
  if (!is_compatible(process, anonymous, system, observer)) {
    throw Error("internal error: constructed system is not compatible");
  }
  return system;
}

bool is_compatible(const Process& process, const EventSet& anonymous,
                   const InterpretedSystem& system, const AgentId& observer) {
  const System& sys = system.system();
  const auto o = sys.find_agent(observer);
  if (!o) return false;
  std::map<std::string, const Trace*> by_text;
  for (const Trace& t : process.traces()) by_text.emplace(to_string(t), &t);

  // Every point records some trace of P and its renaming.
  for (std::size_t r = 0; r < sys.runs().size(); ++r) {
    for (int m = 0; m <= sys.horizon(); ++m) {
      const GlobalState& g = sys.runs()[r].states[static_cast<std::size_t>(m)];
      auto it = by_text.find(g.env.value);
      if (it == by_text.end()) return false;
      if (g.locals[*o].value != to_string(rename(*it->second, anonymous))) {
        return false;
      }
    }
  }
  // Every trace of P is recorded at time |tau| of some run.
  for (const Trace& t : process.traces()) {
    if (t.size() > static_cast<std::size_t>(sys.horizon())) return false;
    const auto m = static_cast<std::size_t>(t.size());
    const std::string env = to_string(t);
    const std::string seen = to_string(rename(t, anonymous));
    const bool found = std::any_of(
        sys.runs().begin(), sys.runs().end(), [&](const Run& run) {
          return run.states[m].env.value == env &&
                 run.states[m].locals[*o].value == seen;
        });
    if (!found) return false;
  }
  // theta(i,a) holds on runs whose record contains an anonymous event i.a.
  for (std::size_t r = 0; r < sys.runs().size(); ++r) {
    const Run& run = sys.runs()[r];
    const auto& final_env = run.states.back().env.value;
    const Trace& full = *by_text.at(final_env);
    for (const Event& e : full) {
      if (!anonymous.contains(e)) continue;
      auto parts = split_event(e);
      auto agent = sys.find_agent(parts->first);
      if (!agent || !sys.first_performance(r, *agent, parts->second)) {
        return false;
      }
    }
  }
  return true;
}

Theorem51Result theorem51_check(const Process& process,
                                const EventSet& anonymous,
                                const AgentId& observer) {
  for (const Trace& t : process.traces()) {
    const auto hits = std::count_if(t.begin(), t.end(), [&](const Event& e) {
      return anonymous.contains(e);
    });
    if (hits > 1) {
      throw HypothesisViolation("trace '" + to_string(t) +
                                "' performs the anonymous action more than "
                                "once");
    }
  }
  auto [action, agents] = anonymous_action(anonymous);

  Theorem51Result result;
  result.strongly_anonymous = strong_anonymity_on(process, anonymous).holds;

  const InterpretedSystem system =
      compatible_system(process, anonymous, observer);
  const EvalContext ctx(system);
  result.anonymous_up_to = true;
  for (const AgentId& i : agents) {
    AnonymityQuery q;
    q.kind = AnonymityKind::kUpToSet;
    q.actor = i;
    q.action = action;
    q.observer = observer;
    q.anonymity_set = agents;
    if (!check_up_to(ctx, q).holds) {
      result.anonymous_up_to = false;
      break;
    }
  }
  return result;
}

Process read_trace_file(std::istream& in, bool close_prefixes) {
  std::optional<EventSet> alphabet;
  std::set<Trace> traces;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream words(line);
    std::vector<std::string> tokens;
    for (std::string w; words >> w;) tokens.push_back(w);
    if (tokens.empty()) continue;
    const std::string where = "line " + std::to_string(line_no);
    if (!alphabet) {
      if (tokens.front() != "alphabet:") {
        throw ParseError(where + ": expected an 'alphabet:' header");
      }
      alphabet.emplace(tokens.begin() + 1, tokens.end());
      if (alphabet->contains(std::string(kAbstractionEvent))) {
        throw ParseError(where + ": the abstraction event is reserved");
      }
      continue;
    }
    for (const std::string& e : tokens) {
      if (e == kAbstractionEvent) {
        throw ParseError(where + ": the abstraction event is reserved");
      }
      if (!alphabet->contains(e)) {
        throw ParseError(where + ": event '" + e + "' is not in the alphabet");
      }
    }
    traces.emplace(tokens.begin(), tokens.end());
  }
  if (!alphabet) throw ParseError("trace file has no 'alphabet:' header");
  if (close_prefixes) return Process::prefix_closure(std::move(*alphabet), traces);
  return Process(std::move(*alphabet), std::move(traces));
}

}  // namespace anoncheck::csp
