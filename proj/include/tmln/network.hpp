#ifndef TMLN_NETWORK_HPP_
#define TMLN_NETWORK_HPP_

#include <map>
#include <string>
#include <vector>

#include "tmln/kernel.hpp"
#include "tmln/temporal.hpp"
#include "tmln/weight.hpp"

namespace tmln {

struct WeightedFormula {
  Formula formula;
  Weight weight;
  friend auto operator<=>(const WeightedFormula&, const WeightedFormula&) =
      default;
};

// A state: weighted ground formulae sorted by formula, one entry per
// formula. Use make_instantiation to build one from arbitrary input.
using Instantiation = std::vector<WeightedFormula>;

// Sorts and drops exact duplicates. Throws Error when one formula carries
// two different weights.
Instantiation make_instantiation(std::vector<WeightedFormula> items);

struct Fact {
  Literal literal;
  Weight weight;
  friend auto operator<=>(const Fact&, const Fact&) = default;
};

struct RuleEntry {
  std::string id;
  Rule rule;
  Weight weight;
  friend auto operator<=>(const RuleEntry&, const RuleEntry&) = default;
};

struct Tmln {
  Signature signature;
  Timeline timeline;
  std::vector<Fact> facts;
  std::vector<RuleEntry> rules;

  // Puts facts and rules in canonical order.
  void canonicalize();
  friend bool operator==(const Tmln&, const Tmln&) = default;
};

struct NetworkIssue {
  std::string where;
  std::string message;
};

// Signature, sort, arity, range and rule-shape checks. Rules must be
// safe: every conclusion variable also occurs in a premise.
std::vector<NetworkIssue> validate(const Tmln& m);

// Checks one literal against the signature and timeline. Variables are
// allowed; their sort must match the argument position.
std::vector<std::string> check_literal(const Literal& lit, const Signature& sig,
                                       const Timeline& timeline);

std::vector<Formula> tf(const Instantiation& items);
std::vector<Formula> tf(const Tmln& m);

// Max over the minimal supports of the minimum weight inside each. Throws
// Error when `target` is not derivable.
Weight weight_of(const Literal& target, const Instantiation& items);
Weight weight_of(const Literal& target, const Tmln& m);

// Support weight of every derivable literal at once.
std::map<Literal, Weight> support_weights(const Instantiation& items);

// Rule instances whose premises are derivable, with the raw weight of the
// source rule (the max when several source rules produce the same one).
Instantiation applicable_instances(const Tmln& m);

// MI(M): the facts plus every derivable ground rule instance, weighted by
// min(rule weight, W(premise_1), ..., W(premise_k)).
Instantiation ground(const Tmln& m);

// MI of a set of ground formulae, each ground rule treated as a rule of
// its own.
Instantiation reinstantiate(const Instantiation& items);

// tau(TF(m)) entails tau(phi). Rules fire with their bounds widened to
// the whole timeline.
bool tau_entails(const Tmln& m, const Formula& phi);

// Formula text with TMIN/TMAX for the timeline bounds.
std::string render(const Term& t, const Timeline& timeline, bool is_time);
std::string render(const Literal& lit, const Timeline& timeline);
std::string render(const Formula& f, const Timeline& timeline);

}  // namespace tmln

#endif  // TMLN_NETWORK_HPP_
