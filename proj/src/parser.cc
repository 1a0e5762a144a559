#include "anoncheck/parser.h"

#include <cctype>

#include "anoncheck/errors.h"

namespace anoncheck {
namespace {

bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.';
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Formula parse() {
    Formula result = parse_implication(false);
    skip_space();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return result;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError(message, pos_);
  }

  void skip_space() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  bool accept(std::string_view token) {
    skip_space();
    if (text_.substr(pos_, token.size()) == token) {
      pos_ += token.size();
      return true;
    }
    return false;
  }

  void expect(std::string_view token) {
    if (!accept(token)) fail("expected '" + std::string(token) + "'");
  }

  std::string identifier() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && is_ident_char(text_[pos_])) ++pos_;
    if (start == pos_) fail("expected an identifier");
    return std::string(text_.substr(start, pos_ - start));
  }

  // In a Pr target, a top-level '|' belongs to the Pr syntax.
  Formula parse_implication(bool in_target) {
    Formula lhs = parse_disjunction(in_target);
    if (accept("=>")) {
      return Formula::implies(lhs, parse_implication(in_target));
    }
    return lhs;
  }

  Formula parse_disjunction(bool in_target) {
    Formula lhs = parse_conjunction();
    while (!in_target && peek() == '|') {
      ++pos_;
      lhs = Formula::disjunction(lhs, parse_conjunction());
    }
    return lhs;
  }

  Formula parse_conjunction() {
    Formula lhs = parse_unary();
    while (peek() == '&') {
      ++pos_;
      lhs = Formula::conjunction(lhs, parse_unary());
    }
    return lhs;
  }

  Formula parse_unary() {
    const char c = peek();
    if (c == '!') {
      ++pos_;
      return Formula::negation(parse_unary());
    }
    if (c == '(') {
      ++pos_;
      Formula inner = parse_implication(false);
      expect(")");
      return inner;
    }
    if (!is_ident_char(c)) {
      fail(c == '\0' ? "unexpected end of formula" : "unexpected character");
    }
    const std::size_t start = pos_;
    std::string word = identifier();
    if (word.starts_with("Pr_")) {
      if (word.size() == 3) fail("missing agent after 'Pr_'");
      return parse_probability(word.substr(3));
    }
    if (word.starts_with("K_") || word.starts_with("P_")) {
      if (word.size() == 2) {
        pos_ = start;
        fail("missing agent after '" + word + "'");
      }
      std::string agent = word.substr(2);
      Formula operand = parse_unary();
      return word[0] == 'K' ? Formula::knows(std::move(agent), operand)
                            : Formula::possible(std::move(agent), operand);
    }
    if ((word == "theta" || word == "delta" || word == "thetaOther") &&
        peek() == '(') {
      ++pos_;
      std::string agent = identifier();
      expect(",");
      std::string action = identifier();
      expect(")");
      if (word == "theta") return Formula::theta(agent, action);
      if (word == "delta") return Formula::delta(agent, action);
      return Formula::theta_other(agent, action);
    }
    return Formula::prop(std::move(word));
  }

  Formula parse_probability(std::string agent) {
    expect("(");
    Formula target = parse_implication(true);
    std::optional<Formula> condition;
    if (accept("|")) condition = parse_implication(false);
    expect(")");
    Comparison cmp;
    if (accept("<=")) {
      cmp = Comparison::kLessEqual;
    } else if (accept(">=")) {
      cmp = Comparison::kGreaterEqual;
    } else if (accept("<")) {
      cmp = Comparison::kLess;
    } else if (accept(">")) {
      cmp = Comparison::kGreater;
    } else if (peek() == '=' && text_.substr(pos_, 2) != "=>") {
      ++pos_;
      cmp = Comparison::kEqual;
    } else {
      fail("expected a comparison after Pr_" + agent + "(...)");
    }
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isdigit(static_cast<unsigned char>(text_[pos_])) ||
            text_[pos_] == '/' || text_[pos_] == '.')) {
      ++pos_;
    }
    Rational bound;
    try {
      bound = parse_rational(text_.substr(start, pos_ - start));
    } catch (const ParseError& e) {
      pos_ = start;
      fail(e.what());
    }
    if (bound < 0 || bound > 1) {
      pos_ = start;
      fail("probability bound outside [0, 1]");
    }
    return Formula::probability(std::move(agent), std::move(target),
                                std::move(condition), cmp, std::move(bound));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Formula parse_formula(std::string_view text) { return Parser(text).parse(); }

}  // namespace anoncheck
