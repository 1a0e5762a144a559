#ifndef ANONCHECK_ANONYMITY_H_
#define ANONCHECK_ANONYMITY_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "anoncheck/evaluator.h"
#include "anoncheck/formula.h"
#include "anoncheck/rational.h"

namespace anoncheck {

enum class AnonymityKind {
  kMinimal,
  kTotal,
  kUpToSet,
  kKAnonymous,
  kAlpha,
  kStrongProbUpToSet,
  kBeyondSuspicion,
  kConditional,
  kConditionalWrt,
  kMinUnlinkable,
};

// theta: "i performs a at some time in the run"; delta: "i has performed a".
enum class PerformanceMode { kTheta, kDelta };

std::string_view to_string(AnonymityKind kind);
std::optional<AnonymityKind> parse_anonymity_kind(std::string_view text);
std::string_view to_string(PerformanceMode mode);

struct AnonymityQuery {
  AnonymityKind kind = AnonymityKind::kMinimal;
  AgentId actor;                 // i
  std::string action;            // a
  std::string second_action;     // a', MinUnlinkable only
  AgentId observer;              // j
  std::optional<std::vector<AgentId>> anonymity_set;  // I_A
  std::optional<int> k;
  std::optional<Rational> alpha;
  std::optional<Formula> condition;  // phi, ConditionalWrt only
  PerformanceMode mode = PerformanceMode::kTheta;
};

// One row of the table printed with a counterexample.
struct AgentDiagnostic {
  AgentId agent;
  bool possible = false;                // P_j theta(agent, a) at the witness
  std::optional<Rational> probability;  // Pr_j theta(agent, a), if defined
};

struct CheckReport {
  bool holds = true;
  Formula compiled = Formula::prop("unset");
  std::optional<Point> witness;
  std::vector<AgentDiagnostic> diagnostics;
  // Degenerate or noteworthy situations (vacuous sets, unknown actions).
  std::vector<std::string> notes;
};

// Dispatches on q.kind.
CheckReport check(const EvalContext& ctx, const AnonymityQuery& q);

// |= !K_j[theta(i,a)] (or delta in delta mode).
CheckReport check_minimal(const EvalContext& ctx, const AnonymityQuery& q);
// |= theta(i,a) => AND_{i' != j} P_j[theta(i',a)].
CheckReport check_total(const EvalContext& ctx, const AnonymityQuery& q);
// |= theta(i,a) => AND_{i' in I_A} P_j[theta(i',a)].
CheckReport check_up_to(const EvalContext& ctx, const AnonymityQuery& q);
// |= theta(i,a) => OR_{|I_A| = k} AND_{i' in I_A} P_j[theta(i',a)],
// decided by counting the possible performers at each point.
CheckReport check_k(const EvalContext& ctx, const AnonymityQuery& q);
// |= theta(i,a) => Pr_j[theta(i,a)] < alpha.
CheckReport check_alpha(const EvalContext& ctx, const AnonymityQuery& q);
// For each i' in I_A: |= theta(i,a) => Pr_j[theta(i,a)] = Pr_j[theta(i',a)].
CheckReport check_strong_prob_up_to(const EvalContext& ctx,
                                    const AnonymityQuery& q);
// As above with <=.
CheckReport check_beyond_suspicion(const EvalContext& ctx,
                                   const AnonymityQuery& q);
// |= K_j theta(jbar,a) => Pr_j(theta(i,a)) = mu(e_r(theta(i,a)) | e_r(theta(jbar,a))).
CheckReport check_conditional(const EvalContext& ctx, const AnonymityQuery& q);
// |= K_j phi => Pr_j(theta(i,a)) = mu(e_r(theta(i,a)) | e_r(phi)).
CheckReport check_conditional_wrt(const EvalContext& ctx,
                                  const AnonymityQuery& q);
// Wherever both a and a' are performed, j considers possible a point at
// which they were performed by two different agents.
CheckReport check_min_unlinkability(const EvalContext& ctx,
                                    const AnonymityQuery& q);

// No run has `action` performed by two distinct agents.
bool exclusivity_holds(const EvalContext& ctx, std::string_view action);

// The literal k-subset disjunction of k-anonymity, for cross-checking the
// counting implementation. Exponential in the roster size.
Formula k_anonymity_formula(const EvalContext& ctx, const AnonymityQuery& q);

// mu(e_r(target) | e_r(given)); throws ZeroConditioningEvent if mu(e_r(given)) = 0.
Rational prior_probability(const EvalContext& ctx, const Formula& target,
                           const Formula& given);

}  // namespace anoncheck

#endif  // ANONCHECK_ANONYMITY_H_
