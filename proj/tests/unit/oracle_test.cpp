#include <gtest/gtest.h>

#include "support.hpp"
#include "tmln/generate.hpp"
#include "tmln/oracle.hpp"

namespace tmln {
namespace {

using testing::kb;
using testing::lit;

TEST(BruteClosure, EmptyIsEmpty) { EXPECT_TRUE(oracle::brute_closure({}).empty()); }

TEST(BruteClosure, MatchesEngineOnRandomSets) {
  gen::Rng rng(4);
  for (int k = 0; k < 1000; ++k) {
    const auto fs = gen::random_formula_set(rng, 8);
    const auto brute = oracle::brute_closure(fs);
    const LiteralSet engine = derive_closure(fs);
    EXPECT_EQ(LiteralSet(brute.begin(), brute.end()), engine);
  }
}

TEST(BruteWeight, SingleFact) {
  const Literal p = lit("P", {"A"}, 0, 0);
  const Instantiation i = make_instantiation({{p, Weight::FromDouble(0.3)}});
  EXPECT_EQ(oracle::brute_weight(p, i).ToString(), "0.3");
}

TEST(BruteWeight, LiftedRulesOnTmln) {
  const Tmln m = kb("sort S\ntimeline 0 9\nconst A : S\npred P(S)\npred Q(S)\n"
                    "fact P(A, 1, 2) : 0.6\nrule R1 : 0.9 { P(x, t, u) => Q(x, TMIN, TMAX) }\n");
  EXPECT_EQ(oracle::brute_weight(lit("Q", {"A"}, 0, 9), m).ToString(), "0.6");
  EXPECT_EQ(weight_of(lit("Q", {"A"}, 0, 9), m).ToString(), "0.6");
}

TEST(BruteMap, EmptyKbHasEmptyMap) {
  const MapResult r = oracle::brute_map({}, shipped_semantics()[0]);
  ASSERT_EQ(r.maps.size(), 1u);
  EXPECT_TRUE(r.maps[0].formulae.empty());
}

TEST(Compare, OresmeAllMatch) {
  for (const auto& rep : oracle::compare(testing::oresme(), shipped_semantics())) {
    EXPECT_TRUE(rep.match) << rep.operation << "\n" << rep.engine_output << "\n" << rep.oracle_output;
  }
}

TEST(Compare, EmptyKbAllMatch) {
  for (const auto& rep : oracle::compare(kb("timeline 0 0\n"), shipped_semantics())) {
    EXPECT_TRUE(rep.match) << rep.operation;
  }
}

TEST(Compare, RandomTenFormulaKbs) {
  gen::Rng rng(12);
  gen::KbShape shape;
  shape.facts = 7;
  shape.rules = 3;
  for (int k = 0; k < 10; ++k) {
    gen::KbShape s = shape;
    Tmln m = gen::random_kb(rng, s, 10);
    for (const auto& rep : oracle::compare(m, shipped_semantics())) {
      EXPECT_TRUE(rep.match) << rep.operation;
    }
  }
}

// Classical MAP counts rule weights. Scoring facts alone would prefer
// {A}, {!B} and miss the optimum {A, A => B}.
TEST(Classical, RuleWeightsCount) {
  const Literal a = lit("A", {"K"}, 0, 0), b = lit("B", {"K"}, 0, 0);
  Rule r;
  r.premises = {a};
  r.conclusion = b;
  const Instantiation mi = make_instantiation({{a, Weight::FromDouble(0.3)},
                                               {b.negated(), Weight::FromDouble(0.2)},
                                               {r, Weight::One()}});
  const MapResult classical = oracle::classical_map(mi);
  EXPECT_NEAR(classical.strength, 1.3, 1e-9);
  EXPECT_NEAR(oracle::classical_fact_optimum(mi), 0.5, 1e-9);
  const ParametricSemantics tinc{Relation::kTInc, Selector::Id(), Aggregator::Sum()};
  EXPECT_TRUE(same_result(classical, oracle::brute_map(mi, tinc)));
}

}  // namespace
}  // namespace tmln
