#ifndef TMLN_KERNEL_HPP_
#define TMLN_KERNEL_HPP_

// Symbols, literals, rules and forward-chaining derivability over the
// function-free fragment {ground literals, ground Horn rules}.

#include <compare>
#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace tmln {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Name of the distinguished temporal sort. It is implicit and may not be
// declared by a signature.
inline constexpr const char* kTimeSort = "Time";

struct ConstantDecl {
  std::string name;
  std::string sort;
  friend auto operator<=>(const ConstantDecl&, const ConstantDecl&) = default;
};

// A predicate is declared by its non-temporal argument sorts; the two
// trailing temporal bounds are implicit.
struct PredicateDecl {
  std::string name;
  std::vector<std::string> arg_sorts;
  std::size_t effective_arity() const { return arg_sorts.size() + 2; }
  friend auto operator<=>(const PredicateDecl&, const PredicateDecl&) = default;
};

struct Signature {
  std::vector<std::string> sorts;
  std::vector<ConstantDecl> constants;
  std::vector<PredicateDecl> predicates;

  bool has_sort(const std::string& sort) const;
  const ConstantDecl* find_constant(const std::string& name) const;
  const PredicateDecl* find_predicate(const std::string& name) const;

  friend bool operator==(const Signature&, const Signature&) = default;
};

struct SignatureIssue {
  std::string symbol;
  std::string message;
  friend bool operator==(const SignatureIssue&, const SignatureIssue&) = default;
};

// Empty iff every signature invariant holds.
std::vector<SignatureIssue> validate_signature(const Signature& sig);

struct Constant {
  std::string name;
  friend auto operator<=>(const Constant&, const Constant&) = default;
};

struct Variable {
  std::string name;
  std::string sort;
  friend auto operator<=>(const Variable&, const Variable&) = default;
};

struct TimePoint {
  std::int64_t value = 0;
  friend auto operator<=>(const TimePoint&, const TimePoint&) = default;
};

using Term = std::variant<Constant, Variable, TimePoint>;

inline bool is_variable(const Term& t) {
  return std::holds_alternative<Variable>(t);
}

// Signed temporal atom P(args, lower, upper). Member order is the canonical
// order: predicate, argument tuple, polarity, bound pair.
struct Literal {
  std::string predicate;
  std::vector<Term> args;
  bool positive = true;
  Term lower = TimePoint{};
  Term upper = TimePoint{};

  bool is_ground() const;
  Literal negated() const;
  // Requires a ground literal.
  std::int64_t lower_time() const;
  std::int64_t upper_time() const;

  friend auto operator<=>(const Literal&, const Literal&) = default;
};

// (premises) -> conclusion.
struct Rule {
  std::vector<Literal> premises;
  Literal conclusion;

  // The set X of variables occurring anywhere in the rule, sorted.
  std::vector<Variable> variables() const;
  bool is_ground() const;

  friend auto operator<=>(const Rule&, const Rule&) = default;
};

using Formula = std::variant<Literal, Rule>;

inline bool is_rule(const Formula& f) { return std::holds_alternative<Rule>(f); }
bool is_ground(const Formula& f);

// Variable name -> ground term.
using Binding = std::map<std::string, Term>;

// Applies `binding` to every variable occurrence. Throws Error on an
// uncovered variable or a sort mismatch. Constants are sort-checked
// against `sig`.
Literal substitute(const Literal& lit, const Binding& binding,
                   const Signature& sig);
Rule substitute(const Rule& rule, const Binding& binding, const Signature& sig);

using LiteralSet = std::set<Literal>;

// Least fixpoint of rule firing over ground inputs: every input literal
// is in the closure, and so is the conclusion of every input rule whose
// premises all are. Throws Error on non-ground input.
LiteralSet derive_closure(std::span<const Formula> formulae);

bool entails(std::span<const Formula> formulae, const Literal& target);

// Extends `entails` to rule targets by the deduction theorem: a set
// entails (p1 & ... & pk -> c) iff the set plus the premises entails c.
bool entails_formula(std::span<const Formula> formulae, const Formula& target);

// Debug rendering with raw integer bounds and `!` for negation.
std::string to_string(const Term& t);
std::string to_string(const Literal& lit);
std::string to_string(const Rule& rule);
std::string to_string(const Formula& f);

}  // namespace tmln

#endif  // TMLN_KERNEL_HPP_
