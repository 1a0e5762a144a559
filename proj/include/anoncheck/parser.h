#ifndef ANONCHECK_PARSER_H_
#define ANONCHECK_PARSER_H_

#include <string_view>

#include "anoncheck/formula.h"

namespace anoncheck {

// Parses the property language:
//
//   phi ::= "(" phi ")" | "!" phi | phi "&" phi | phi "|" phi | phi "=>" phi
//         | "K_" IDENT phi | "P_" IDENT phi
//         | "theta(" IDENT "," IDENT ")" | "delta(" IDENT "," IDENT ")"
//         | "thetaOther(" IDENT "," IDENT ")"
//         | "Pr_" IDENT "(" phi [ "|" phi ] ")" CMP RATIONAL
//         | IDENT
//
// Unary operators bind tightest, then "&", then "|"; "=>" is
// right-associative. Inside "Pr_j( )" a top-level "|" starts the condition,
// so a disjunctive target must be parenthesized. Identifiers beginning with
// "K_", "P_" or "Pr_" are operators, never propositions.
//
// Throws ParseError (with the byte offset) on malformed input, malformed
// rationals, and bounds outside [0, 1].
Formula parse_formula(std::string_view text);

}  // namespace anoncheck

#endif  // ANONCHECK_PARSER_H_
