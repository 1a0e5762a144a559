#ifndef ANONCHECK_FORMULA_H_
#define ANONCHECK_FORMULA_H_

#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "anoncheck/rational.h"
#include "anoncheck/system.h"

namespace anoncheck {

enum class Comparison { kLess, kLessEqual, kEqual, kGreaterEqual, kGreater };

std::string_view to_string(Comparison cmp);
bool compare(const Rational& lhs, Comparison cmp, const Rational& rhs);

// Immutable formula of the epistemic/probabilistic property language.
// Copies share structure; equality is structural.
class Formula {
 public:
  enum class Kind {
    kProp,
    kNot,
    kAnd,
    kOr,
    kImplies,
    kKnows,       // K_j phi
    kPossible,    // P_j phi, the dual of K_j
    kTheta,       // i performs a at some time in the run
    kDelta,       // i has performed a by the current time
    kThetaOther,  // some roster agent other than j performs a
    kProbability  // Pr_j(phi [| psi]) cmp bound
  };

  static Formula prop(std::string name);
  static Formula negation(Formula operand);
  static Formula conjunction(Formula lhs, Formula rhs);
  static Formula disjunction(Formula lhs, Formula rhs);
  static Formula implies(Formula lhs, Formula rhs);
  static Formula knows(AgentId agent, Formula operand);
  static Formula possible(AgentId agent, Formula operand);
  static Formula theta(AgentId agent, std::string action);
  static Formula delta(AgentId agent, std::string action);
  static Formula theta_other(AgentId agent, std::string action);
  // Throws ModelError if bound is outside [0, 1].
  static Formula probability(AgentId agent, Formula target,
                             std::optional<Formula> condition,
                             Comparison cmp, Rational bound);

  // Left-nested folds; the operand list must be nonempty.
  static Formula all_of(std::vector<Formula> operands);
  static Formula any_of(std::vector<Formula> operands);

  Kind kind() const;
  // Proposition name for kProp, agent for modal, theta/delta and Pr nodes.
  const std::string& name() const;
  const std::string& action() const;

  // kNot, kKnows, kPossible: operand(). Binary connectives: lhs()/rhs().
  const Formula& operand() const;
  const Formula& lhs() const;
  const Formula& rhs() const;

  // kProbability accessors.
  const Formula& target() const;
  const Formula* condition() const;
  Comparison comparison() const;
  const Rational& bound() const;

  friend bool operator==(const Formula& a, const Formula& b);
  friend bool operator!=(const Formula& a, const Formula& b) {
    return !(a == b);
  }

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

// Concrete syntax; parse_formula(to_string(f)) == f.
std::string to_string(const Formula& formula);
std::ostream& operator<<(std::ostream& out, const Formula& formula);

// Built only from theta/thetaOther and propositional connectives, so its
// truth value is constant along each run.
bool is_run_formula(const Formula& formula);
bool contains_probability(const Formula& formula);

}  // namespace anoncheck

#endif  // ANONCHECK_FORMULA_H_
