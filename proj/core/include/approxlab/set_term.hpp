// Expression trees over element sets: products, inverses, powers, closed
// thickenings, commutator sets, conjugation sets, and the identity singleton.
//
// Concrete syntax (CLI front-end):
//   term    := factor ('*' factor)*
//   factor  := atom ('^' (integer | '(' term ')'))*     -- power / conjugation
//   atom    := name | '1' | '(' term ')' | '[' term ',' term ']'
//            | 'D' '[' rational ']' '(' term ')'        -- thickening D_r(t)
// Examples: "X*X^-1*X", "D[1/2](X^2)", "[X,Y]", "X^(Y)".
#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>

#include "approxlab/element_set.hpp"
#include "approxlab/rational.hpp"

namespace approxlab {

struct SetTerm;
using TermPtr = std::shared_ptr<const SetTerm>;

struct SetTerm {
  enum class Kind { Var, One, Product, Inverse, Power, Thicken, Commutator, Conjugation };

  Kind kind;
  std::string name;  // Var
  TermPtr a, b;      // children
  int exponent = 0;  // Power
  Rat radius;        // Thicken

  static TermPtr var(std::string name);
  static TermPtr one();
  static TermPtr product(TermPtr l, TermPtr r);
  static TermPtr inverse(TermPtr t);
  static TermPtr power(TermPtr t, int n);
  static TermPtr thicken(TermPtr t, Rat r);  // throws if r < 0
  static TermPtr commutator(TermPtr l, TermPtr r);
  static TermPtr conjugation(TermPtr base, TermPtr by);
};

// Throws std::invalid_argument with a position-tagged message on bad syntax.
TermPtr parse_set_term(const std::string& text);

std::string term_to_string(const TermPtr& t);

std::set<std::string> term_variables(const TermPtr& t);

// Evaluates t with variables bound by env.  All bound sets must share one
// group; `fallback_group` supplies the group for variable-free terms.
ElementSet eval_set_term(const TermPtr& t, const std::map<std::string, ElementSet>& env,
                         const GroupPtr& fallback_group = nullptr);

}  // namespace approxlab
