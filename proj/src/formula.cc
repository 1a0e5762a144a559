#include "anoncheck/formula.h"

#include <sstream>

#include "anoncheck/errors.h"

namespace anoncheck {

struct Formula::Node {
  Kind kind;
  std::string name;
  std::string action;
  std::vector<Formula> children;
  Comparison cmp = Comparison::kEqual;
  Rational bound;
};

std::string_view to_string(Comparison cmp) {
  switch (cmp) {
    case Comparison::kLess:
      return "<";
    case Comparison::kLessEqual:
      return "<=";
    case Comparison::kEqual:
      return "=";
    case Comparison::kGreaterEqual:
      return ">=";
    case Comparison::kGreater:
      return ">";
  }
  return "?";
}

bool compare(const Rational& lhs, Comparison cmp, const Rational& rhs) {
  switch (cmp) {
    case Comparison::kLess:
      return lhs < rhs;
    case Comparison::kLessEqual:
      return lhs <= rhs;
    case Comparison::kEqual:
      return lhs == rhs;
    case Comparison::kGreaterEqual:
      return lhs >= rhs;
    case Comparison::kGreater:
      return lhs > rhs;
  }
  return false;
}

Formula Formula::prop(std::string name) {
  return Formula(std::make_shared<const Node>(
      Node{Kind::kProp, std::move(name), {}, {}, {}, {}}));
}

Formula Formula::negation(Formula operand) {
  return Formula(
      std::make_shared<const Node>(Node{Kind::kNot, {}, {}, {operand}, {}, {}}));
}

Formula Formula::conjunction(Formula lhs, Formula rhs) {
  return Formula(std::make_shared<const Node>(
      Node{Kind::kAnd, {}, {}, {lhs, rhs}, {}, {}}));
}

Formula Formula::disjunction(Formula lhs, Formula rhs) {
  return Formula(std::make_shared<const Node>(
      Node{Kind::kOr, {}, {}, {lhs, rhs}, {}, {}}));
}

Formula Formula::implies(Formula lhs, Formula rhs) {
  return Formula(std::make_shared<const Node>(
      Node{Kind::kImplies, {}, {}, {lhs, rhs}, {}, {}}));
}

Formula Formula::knows(AgentId agent, Formula operand) {
  return Formula(std::make_shared<const Node>(
      Node{Kind::kKnows, std::move(agent), {}, {operand}, {}, {}}));
}

Formula Formula::possible(AgentId agent, Formula operand) {
  return Formula(std::make_shared<const Node>(
      Node{Kind::kPossible, std::move(agent), {}, {operand}, {}, {}}));
}

Formula Formula::theta(AgentId agent, std::string action) {
  return Formula(std::make_shared<const Node>(
      Node{Kind::kTheta, std::move(agent), std::move(action), {}, {}, {}}));
}

Formula Formula::delta(AgentId agent, std::string action) {
  return Formula(std::make_shared<const Node>(
      Node{Kind::kDelta, std::move(agent), std::move(action), {}, {}, {}}));
}

Formula Formula::theta_other(AgentId agent, std::string action) {
  return Formula(std::make_shared<const Node>(Node{
      Kind::kThetaOther, std::move(agent), std::move(action), {}, {}, {}}));
}

Formula Formula::probability(AgentId agent, Formula target,
                             std::optional<Formula> condition, Comparison cmp,
                             Rational bound) {
  if (bound < 0 || bound > 1) {
    throw ModelError("probability bound " + anoncheck::to_string(bound) +
                     " is outside [0, 1]");
  }
  std::vector<Formula> children{std::move(target)};
  if (condition) children.push_back(std::move(*condition));
  return Formula(std::make_shared<const Node>(Node{Kind::kProbability,
                                                   std::move(agent),
                                                   {},
                                                   std::move(children),
                                                   cmp,
                                                   std::move(bound)}));
}

Formula Formula::all_of(std::vector<Formula> operands) {
  if (operands.empty()) throw ModelError("empty conjunction");
  Formula result = operands.front();
  for (std::size_t i = 1; i < operands.size(); ++i) {
    result = conjunction(result, operands[i]);
  }
  return result;
}

Formula Formula::any_of(std::vector<Formula> operands) {
  if (operands.empty()) throw ModelError("empty disjunction");
  Formula result = operands.front();
  for (std::size_t i = 1; i < operands.size(); ++i) {
    result = disjunction(result, operands[i]);
  }
  return result;
}

Formula::Kind Formula::kind() const { return node_->kind; }
const std::string& Formula::name() const { return node_->name; }
const std::string& Formula::action() const { return node_->action; }
const Formula& Formula::operand() const { return node_->children.at(0); }
const Formula& Formula::lhs() const { return node_->children.at(0); }
const Formula& Formula::rhs() const { return node_->children.at(1); }
const Formula& Formula::target() const { return node_->children.at(0); }
const Formula* Formula::condition() const {
  return node_->children.size() > 1 ? &node_->children[1] : nullptr;
}
Comparison Formula::comparison() const { return node_->cmp; }
const Rational& Formula::bound() const { return node_->bound; }

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (x.kind != y.kind || x.name != y.name || x.action != y.action ||
      x.children.size() != y.children.size()) {
    return false;
  }
  if (x.kind == Formula::Kind::kProbability &&
      (x.cmp != y.cmp || x.bound != y.bound)) {
    return false;
  }
  for (std::size_t i = 0; i < x.children.size(); ++i) {
    if (x.children[i] != y.children[i]) return false;
  }
  return true;
}

namespace {

// Binding strength, loosest first.
enum Level { kImpliesLevel = 1, kOrLevel, kAndLevel, kUnaryLevel };

int level_of(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::kImplies:
      return kImpliesLevel;
    case Formula::Kind::kOr:
      return kOrLevel;
    case Formula::Kind::kAnd:
      return kAndLevel;
    default:
      return kUnaryLevel;
  }
}

void print(std::ostream& out, const Formula& f, int context) {
  const bool wrap = level_of(f) < context;
  if (wrap) out << '(';
  switch (f.kind()) {
    case Formula::Kind::kProp:
      out << f.name();
      break;
    case Formula::Kind::kNot:
      out << '!';
      print(out, f.operand(), kUnaryLevel);
      break;
    case Formula::Kind::kAnd:
      print(out, f.lhs(), kAndLevel);
      out << " & ";
      print(out, f.rhs(), kUnaryLevel);
      break;
    case Formula::Kind::kOr:
      print(out, f.lhs(), kOrLevel);
      out << " | ";
      print(out, f.rhs(), kAndLevel);
      break;
    case Formula::Kind::kImplies:
      print(out, f.lhs(), kOrLevel);
      out << " => ";
      print(out, f.rhs(), kImpliesLevel);
      break;
    case Formula::Kind::kKnows:
    case Formula::Kind::kPossible:
      out << (f.kind() == Formula::Kind::kKnows ? "K_" : "P_") << f.name()
          << ' ';
      print(out, f.operand(), kUnaryLevel);
      break;
    case Formula::Kind::kTheta:
      out << "theta(" << f.name() << ',' << f.action() << ')';
      break;
    case Formula::Kind::kDelta:
      out << "delta(" << f.name() << ',' << f.action() << ')';
      break;
    case Formula::Kind::kThetaOther:
      out << "thetaOther(" << f.name() << ',' << f.action() << ')';
      break;
    case Formula::Kind::kProbability:
      out << "Pr_" << f.name() << '(';
      // A bare '|' inside Pr( ) separates the condition, so disjunctive
      // targets need their own parentheses.
      print(out, f.target(), kAndLevel);
      if (const Formula* cond = f.condition()) {
        out << " | ";
        print(out, *cond, kImpliesLevel);
      }
      out << ") " << to_string(f.comparison()) << ' '
          << anoncheck::to_string(f.bound());
      break;
  }
  if (wrap) out << ')';
}

}  // namespace

std::string to_string(const Formula& formula) {
  std::ostringstream out;
  print(out, formula, kImpliesLevel);
  return out.str();
}

std::ostream& operator<<(std::ostream& out, const Formula& formula) {
  print(out, formula, kImpliesLevel);
  return out;
}

bool is_run_formula(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::kTheta:
    case Formula::Kind::kThetaOther:
      return true;
    case Formula::Kind::kNot:
      return is_run_formula(f.operand());
    case Formula::Kind::kAnd:
    case Formula::Kind::kOr:
    case Formula::Kind::kImplies:
      return is_run_formula(f.lhs()) && is_run_formula(f.rhs());
    default:
      return false;
  }
}

bool contains_probability(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::kProbability:
      return true;
    case Formula::Kind::kNot:
    case Formula::Kind::kKnows:
    case Formula::Kind::kPossible:
      return contains_probability(f.operand());
    case Formula::Kind::kAnd:
    case Formula::Kind::kOr:
    case Formula::Kind::kImplies:
      return contains_probability(f.lhs()) || contains_probability(f.rhs());
    default:
      return false;
  }
}

}  // namespace anoncheck
