#include "approxlab/set_term.hpp"

#include <cctype>
#include <stdexcept>

namespace approxlab {

namespace {

TermPtr node(SetTerm t) { return std::make_shared<const SetTerm>(std::move(t)); }

}  // namespace

TermPtr SetTerm::var(std::string name) {
  SetTerm t{Kind::Var, std::move(name), nullptr, nullptr, 0, Rat(0)};
  return node(std::move(t));
}
TermPtr SetTerm::one() { return node(SetTerm{Kind::One, "", nullptr, nullptr, 0, Rat(0)}); }
TermPtr SetTerm::product(TermPtr l, TermPtr r) {
  return node(SetTerm{Kind::Product, "", std::move(l), std::move(r), 0, Rat(0)});
}
TermPtr SetTerm::inverse(TermPtr t) {
  return node(SetTerm{Kind::Inverse, "", std::move(t), nullptr, 0, Rat(0)});
}
TermPtr SetTerm::power(TermPtr t, int n) {
  return node(SetTerm{Kind::Power, "", std::move(t), nullptr, n, Rat(0)});
}
TermPtr SetTerm::thicken(TermPtr t, Rat r) {
  if (r < 0) throw std::invalid_argument("thickening radius must be nonnegative");
  return node(SetTerm{Kind::Thicken, "", std::move(t), nullptr, 0, std::move(r)});
}
TermPtr SetTerm::commutator(TermPtr l, TermPtr r) {
  return node(SetTerm{Kind::Commutator, "", std::move(l), std::move(r), 0, Rat(0)});
}
TermPtr SetTerm::conjugation(TermPtr base, TermPtr by) {
  return node(SetTerm{Kind::Conjugation, "", std::move(base), std::move(by), 0, Rat(0)});
}

namespace {

class Parser {
 public:
  explicit Parser(const std::string& text) : s_(text) {}

  TermPtr parse() {
    TermPtr t = term();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected trailing input");
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& what) {
    throw std::invalid_argument("set term parse error at position " +
                                std::to_string(pos_) + ": " + what);
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!eat(c)) fail(std::string("expected '") + c + "'");
  }

  TermPtr term() {
    TermPtr t = factor();
    while (eat('*')) t = SetTerm::product(t, factor());
    return t;
  }

  TermPtr factor() {
    TermPtr t = atom();
    while (true) {
      skip_ws();
      if (pos_ < s_.size() && s_[pos_] == '^') {
        ++pos_;
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == '(') {
          ++pos_;
          TermPtr by = term();
          expect(')');
          t = SetTerm::conjugation(t, by);
        } else {
          t = SetTerm::power(t, parse_int());
        }
      } else {
        break;
      }
    }
    return t;
  }

  TermPtr atom() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      TermPtr t = term();
      expect(')');
      return t;
    }
    if (c == '[') {
      ++pos_;
      TermPtr l = term();
      expect(',');
      TermPtr r = term();
      expect(']');
      return SetTerm::commutator(l, r);
    }
    if (c == '1') {
      ++pos_;
      return SetTerm::one();
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string name = parse_name();
      // 'D' immediately followed by '[' is the thickening operator.
      if (name == "D" && pos_ < s_.size() && s_[pos_] == '[') {
        ++pos_;
        Rat r = parse_rational();
        expect(']');
        expect('(');
        TermPtr t = term();
        expect(')');
        return SetTerm::thicken(t, r);
      }
      return SetTerm::var(name);
    }
    fail("expected a set expression");
  }

  std::string parse_name() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
      ++pos_;
    return s_.substr(start, pos_ - start);
  }

  int parse_int() {
    skip_ws();
    std::size_t start = pos_;
    if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) ++pos_;
    std::size_t digits = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (pos_ == digits) fail("expected an integer exponent");
    try {
      return std::stoi(s_.substr(start, pos_ - start));
    } catch (const std::out_of_range&) {
      fail("exponent out of range");
    }
  }

  Rat parse_rational() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < s_.size() &&
           (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '/' ||
            s_[pos_] == '.' || s_[pos_] == '-' || s_[pos_] == '+'))
      ++pos_;
    auto r = parse_rat(s_.substr(start, pos_ - start));
    if (!r) fail("expected a rational radius");
    if (*r < 0) fail("thickening radius must be nonnegative");
    return *r;
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

bool atom_like(const TermPtr& t) {
  switch (t->kind) {
    case SetTerm::Kind::Var:
    case SetTerm::Kind::One:
    case SetTerm::Kind::Thicken:
    case SetTerm::Kind::Commutator:
      return true;
    default:
      return false;
  }
}

std::string wrapped(const TermPtr& t) {
  std::string s = term_to_string(t);
  return atom_like(t) ? s : "(" + s + ")";
}

void collect_vars(const TermPtr& t, std::set<std::string>& out) {
  if (!t) return;
  if (t->kind == SetTerm::Kind::Var) out.insert(t->name);
  collect_vars(t->a, out);
  collect_vars(t->b, out);
}

}  // namespace

TermPtr parse_set_term(const std::string& text) { return Parser(text).parse(); }

std::string term_to_string(const TermPtr& t) {
  switch (t->kind) {
    case SetTerm::Kind::Var:
      return t->name;
    case SetTerm::Kind::One:
      return "1";
    case SetTerm::Kind::Product:
      // '*' is the loosest operator, so factor-level children never need parens,
      // and nested products re-parse to an equivalent (associative) tree.
      return term_to_string(t->a) + "*" + term_to_string(t->b);
    case SetTerm::Kind::Inverse:
      return wrapped(t->a) + "^-1";
    case SetTerm::Kind::Power:
      return wrapped(t->a) + "^" + std::to_string(t->exponent);
    case SetTerm::Kind::Thicken:
      return "D[" + rat_to_string(t->radius) + "](" + term_to_string(t->a) + ")";
    case SetTerm::Kind::Commutator:
      return "[" + term_to_string(t->a) + "," + term_to_string(t->b) + "]";
    case SetTerm::Kind::Conjugation:
      return wrapped(t->a) + "^(" + term_to_string(t->b) + ")";
  }
  return "";
}

std::set<std::string> term_variables(const TermPtr& t) {
  std::set<std::string> out;
  collect_vars(t, out);
  return out;
}

ElementSet eval_set_term(const TermPtr& t, const std::map<std::string, ElementSet>& env,
                         const GroupPtr& fallback_group) {
  switch (t->kind) {
    case SetTerm::Kind::Var: {
      auto it = env.find(t->name);
      if (it == env.end())
        throw std::invalid_argument("unbound set variable: " + t->name);
      return it->second;
    }
    case SetTerm::Kind::One: {
      GroupPtr g = fallback_group;
      if (!g && !env.empty()) g = env.begin()->second.group();
      if (!g) throw std::invalid_argument("cannot infer group for the identity singleton");
      return ElementSet::singleton_identity(g);
    }
    case SetTerm::Kind::Product:
      return eval_set_term(t->a, env, fallback_group)
          .product(eval_set_term(t->b, env, fallback_group));
    case SetTerm::Kind::Inverse:
      return eval_set_term(t->a, env, fallback_group).inverse();
    case SetTerm::Kind::Power:
      return eval_set_term(t->a, env, fallback_group).power(t->exponent);
    case SetTerm::Kind::Thicken:
      return eval_set_term(t->a, env, fallback_group).thicken(t->radius);
    case SetTerm::Kind::Commutator:
      return eval_set_term(t->a, env, fallback_group)
          .commutator_set(eval_set_term(t->b, env, fallback_group));
    case SetTerm::Kind::Conjugation:
      return eval_set_term(t->a, env, fallback_group)
          .conjugation_set(eval_set_term(t->b, env, fallback_group));
  }
  throw std::logic_error("unreachable set term kind");
}

}  // namespace approxlab
