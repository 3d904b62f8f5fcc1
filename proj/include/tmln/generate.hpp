#ifndef TMLN_GENERATE_HPP_
#define TMLN_GENERATE_HPP_

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "tmln/network.hpp"
#include "tmln/semantics.hpp"

namespace tmln::gen {

using Rng = std::mt19937_64;

struct KbShape {
  int constants = 2;
  int predicates = 3;
  int max_args = 1;  // object arguments per predicate, at least 1
  int facts = 5;
  int rules = 2;
  int max_premises = 2;
  std::int64_t horizon = 6;  // timeline is 0..horizon
  double negative_rate = 0.4;
  double zero_weight_rate = 0.1;
  int weight_steps = 10;  // weights are k / weight_steps
  bool certain_rules = false;  // every rule weight 1
};

// Weight k / steps for a uniform k.
Weight grid_weight(Rng& rng, int steps);

// A valid TMLN over one object sort. Rules may chain.
Tmln random_kb(Rng& rng, const KbShape& shape);
// Redraws until 1 <= |MI| <= max_mi.
Tmln random_kb(Rng& rng, const KbShape& shape, std::size_t max_mi);

// A ground literal over the KB vocabulary with a random interval.
Literal random_literal(Rng& rng, const Tmln& m, bool allow_negative = true);

// Ground literals, with a ground rule now and then, over a small shared
// vocabulary so that complementary pairs are common.
std::vector<Formula> random_formula_set(Rng& rng, std::size_t size);

// Weight-0 fact over a predicate not in `m`. Extends the signature.
Fact fresh_fact(Rng& rng, Tmln& m, Weight w = Weight::Zero());

// A fact over existing predicates that tau(TF(m)) does not entail, if one
// turns up within `attempts` draws.
std::optional<Fact> tau_novel_fact(Rng& rng, const Tmln& m, int attempts = 50);

// Audit samples drawn from `m`: random bases in MI(M), extensions from a
// fresh predicate or from MI(M) outside the base when tau-novel, random
// tuples, permutations and y <= z.
std::vector<AuditSample> audit_samples(Rng& rng, const Tmln& m, std::size_t n);

}  // namespace tmln::gen

#endif  // TMLN_GENERATE_HPP_
