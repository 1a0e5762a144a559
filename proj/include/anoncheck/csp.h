#ifndef ANONCHECK_CSP_H_
#define ANONCHECK_CSP_H_

#include <istream>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "anoncheck/system.h"

namespace anoncheck::csp {

using Event = std::string;
using Trace = std::vector<Event>;
using EventSet = std::set<Event>;

// The fresh event that renaming substitutes for events of A. It may not
// occur in the alphabet of a process being renamed.
inline constexpr std::string_view kAbstractionEvent = "α";

// A process identified with its finite, prefix-closed set of traces.
class Process {
 public:
  // Throws ModelError if the trace set is not prefix-closed (the empty trace
  // is implied) or uses events outside the alphabet.
  Process(EventSet alphabet, std::set<Trace> traces);

  // Adds every prefix of every trace before validating.
  static Process prefix_closure(EventSet alphabet, const std::set<Trace>& traces);

  const EventSet& alphabet() const { return alphabet_; }
  const std::set<Trace>& traces() const { return traces_; }
  // Traces that are not a proper prefix of another trace, sorted.
  std::vector<Trace> maximal_traces() const;

  friend bool operator==(const Process&, const Process&) = default;

 private:
  EventSet alphabet_;
  std::set<Trace> traces_;
};

std::string to_string(const Trace& trace);

// f_A: each A-event replaced by the abstraction event. Throws ModelError if
// A is not a subset of the alphabet or the alphabet already holds the
// abstraction event.
Trace rename(const Trace& trace, const EventSet& anonymous);
Process apply_renaming(const Process& process, const EventSet& anonymous);

// P \ C: events of C deleted from every trace. Throws ModelError unless C is
// a subset of the alphabet.
Process apply_hiding(const Process& process, const EventSet& hidden);

struct StrongAnonymity {
  bool holds = true;
  // Least trace of f_A^-1(f_A(P)) missing from P.
  std::optional<Trace> counterexample;
};

// f_A^-1(f_A(P)) == P.
StrongAnonymity strong_anonymity_on(const Process& process,
                                    const EventSet& anonymous);

// Splits "i.a" into {"i", "a"} at the first dot.
std::optional<std::pair<std::string, std::string>> split_event(
    std::string_view event);

// The runs-and-systems model of P seen by an observer who sees every event
// except which A-event occurred: one run per maximal trace, horizon the
// longest trace, r_e(m) the length-min(m, |tau|) prefix, r_o(m) its
// renaming, and an event (i, a, t) whenever i.a is the t-th event with i in
// the roster. A must consist of events i.a for one action a. The roster is
// the observer plus the agents of A. Both compatibility conditions are
// verified after construction.
InterpretedSystem compatible_system(const Process& process,
                                    const EventSet& anonymous,
                                    const AgentId& observer);

// Checks both compatibility conditions between a process and a system.
bool is_compatible(const Process& process, const EventSet& anonymous,
                   const InterpretedSystem& system, const AgentId& observer);

struct Theorem51Result {
  bool strongly_anonymous = false;
  bool anonymous_up_to = false;  // for every i in I_A
  bool agrees() const { return strongly_anonymous == anonymous_up_to; }
};

// Both sides of: P is strongly anonymous on A iff for every i in I_A, a
// performed by i is anonymous up to I_A with respect to the observer in the
// compatible system. Throws HypothesisViolation if some trace holds more
// than one A-event.
Theorem51Result theorem51_check(const Process& process,
                                const EventSet& anonymous,
                                const AgentId& observer);

// Trace file: an "alphabet: e1 e2 ..." header, then one whitespace-separated
// trace per line; '#' starts a comment and blank lines are ignored. With
// close_prefixes the prefix closure is taken, otherwise a trace set that is
// not prefix-closed is an error. The abstraction event is rejected.
Process read_trace_file(std::istream& in, bool close_prefixes);

}  // namespace anoncheck::csp

#endif  // ANONCHECK_CSP_H_
