#ifndef ANONCHECK_FUNCTION_VIEWS_H_
#define ANONCHECK_FUNCTION_VIEWS_H_

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "anoncheck/system.h"

namespace anoncheck::views {

// The value of f(a) when no agent performs a.
inline constexpr std::string_view kNobody = "N";

// f_{(r,m)}: X -> roster + {N}. Maps each action to its performer.
using PointFunction = std::map<std::string, AgentId>;

// Per point index. Since f is read off the whole event log, all points of a
// run share one function. Throws HypothesisViolation if some run has an
// action of X performed by two agents, ModelError if the roster contains N.
std::vector<PointFunction> point_function(const InterpretedSystem& system,
                                          const std::set<std::string>& actions);

// Function knowledge (F, I, K) of type X -> Y.
struct FunctionKnowledge {
  std::map<std::string, std::set<AgentId>> graph;  // F, as x -> F(x)
  std::set<AgentId> image;                         // I
  std::set<std::pair<std::string, std::string>> kernel;  // K
};

std::set<AgentId> image_of(const PointFunction& f);
std::set<std::pair<std::string, std::string>> kernel_of(const PointFunction& f);

// Complete knowledge (f, im f, ker f).
FunctionKnowledge complete_knowledge(const PointFunction& f);

// What observer o knows about f at p: F is the union of the graphs over o's
// knowledge set, I the intersection of the images and K the intersection
// of the kernels.
FunctionKnowledge observer_knowledge(const InterpretedSystem& system,
                                     std::string_view observer, Point p,
                                     const std::set<std::string>& actions);

// f is a subset of F, I of im f, and K of ker f. Throws ModelError if the
// domains differ.
bool is_consistent_with(const FunctionKnowledge& view, const PointFunction& f);

struct Opaqueness {
  enum class Kind { kKValue, kZValue, kAbsolute };
  Kind kind = Kind::kAbsolute;
  std::size_t k = 0;         // kKValue
  std::set<AgentId> values;  // Z for kZValue, Y for kAbsolute

  static Opaqueness k_value(std::size_t k);
  static Opaqueness z_value(std::set<AgentId> z);
  static Opaqueness absolute(std::set<AgentId> codomain);
};

bool check_opaqueness(const FunctionKnowledge& view, const Opaqueness& variant);

// roster + {N}.
std::set<AgentId> codomain(const System& system);

// Copy of the system whose interpretation adds "f.<x>.<y>", true exactly
// where f_{(r,m)}(x) = y, for each x in X and y in Y.
InterpretedSystem with_function_propositions(
    const InterpretedSystem& system, const std::set<std::string>& actions);

struct EquivalenceResult {
  bool lhs = false;  // opaqueness side
  bool rhs = false;  // logical side
  bool agrees() const { return lhs == rhs; }
  // First point where the two sides disagree (pointwise checks only).
  std::optional<Point> disagreement;
};

// Pointwise: N_o(p) is Z-value opaque iff AND_x AND_{z in Z} P_o[f(x) = z]
// at p. lhs/rhs report whether each side holds at every point. Throws
// HypothesisViolation unless the f(x) = y propositions match f exactly.
EquivalenceResult prop52_check(const InterpretedSystem& system,
                               std::string_view observer,
                               const std::set<AgentId>& z,
                               const std::set<std::string>& actions);

// lhs: I_A-value opaqueness of N_o at every point where f(a) is in I_A.
// rhs: for every i in I_A, a performed by i is anonymous up to I_A with
// respect to o.
EquivalenceResult theorem53_check(const InterpretedSystem& system,
                                  std::string_view observer,
                                  const std::vector<AgentId>& anonymity_set,
                                  const std::string& action);

}  // namespace anoncheck::views

#endif  // ANONCHECK_FUNCTION_VIEWS_H_
