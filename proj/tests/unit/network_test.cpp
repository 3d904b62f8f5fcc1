#include <gtest/gtest.h>

#include "support.hpp"
#include "tmln/network.hpp"
#include "tmln/oracle.hpp"

namespace tmln {
namespace {

using testing::kb;
using testing::lit;
using testing::oresme;

TEST(Tf, StripsWeightsAndMerges) {
  const Literal a = lit("P", {"A"}, 0, 1), b = lit("P", {"B"}, 0, 1);
  const Instantiation items = make_instantiation({{a, Weight::FromDouble(0.4)}, {b, Weight::One()}});
  EXPECT_EQ(tf(items), (std::vector<Formula>{a, b}));
  EXPECT_TRUE(tf(Instantiation{}).empty());
  EXPECT_EQ(tf(oresme()).size(), 8u);
}

TEST(MakeInstantiation, ConflictingWeightsThrow) {
  const Literal a = lit("P", {"A"}, 0, 1);
  EXPECT_THROW(make_instantiation({{a, Weight::Zero()}, {a, Weight::One()}}), Error);
}

TEST(Ground, OresmeGroundRuleWeights) {
  const Tmln m = oresme();
  const auto l = testing::oresme_labels(m);
  ASSERT_EQ(ground(m).size(), 9u);
  EXPECT_EQ(l.at("GR11").weight.ToString(), "0.4");
  EXPECT_EQ(l.at("GR12").weight.ToString(), "0.5");
  EXPECT_EQ(l.at("GR2").weight.ToString(), "0.8");
}

constexpr const char* kHeader =
    "sort S\ntimeline 0 9\nconst A : S\nconst B : S\npred P(S)\npred Q(S)\npred R(S)\n";

TEST(Ground, RuleFreeKbIsItsFacts) {
  const Tmln m = kb(std::string(kHeader) + "fact P(A, 1, 2) : 0.3\nfact !Q(B, 0, 9) : 1\n");
  EXPECT_EQ(ground(m).size(), 2u);
}

TEST(Ground, RuleWithUnderivablePremiseIsExcluded) {
  const Tmln m = kb(std::string(kHeader) +
                    "fact P(A, 1, 2) : 0.3\nrule R1 : 1 { R(x, t, u) => Q(x, t, u) }\n");
  EXPECT_EQ(ground(m).size(), 1u);
}

TEST(Ground, ChainedRulesReachFixpoint) {
  const Tmln m = kb(std::string(kHeader) +
                    "fact P(A, 1, 2) : 0.6\n"
                    "rule R1 : 0.9 { P(x, t, u) => Q(x, t, u) }\n"
                    "rule R2 : 0.7 { Q(x, t, u) => R(x, TMIN, TMAX) }\n");
  const Instantiation mi = ground(m);
  ASSERT_EQ(mi.size(), 3u);
  // Each ground rule weighs min(rule weight, W of its premises).
  EXPECT_EQ(mi[1].weight.ToString(), "0.6");
  EXPECT_EQ(mi[2].weight.ToString(), "0.6");
  EXPECT_EQ(mi, oracle::brute_ground(m));
}

TEST(WeightOf, NegatedPeasantFamilyViaGr2) {
  const Tmln m = oresme();
  const auto l = testing::oresme_labels(m);
  const Instantiation items = testing::pick(l, {"F2", "F3", "GR2"});
  EXPECT_EQ(weight_of(lit("PeasantFamily", {"NO"}, 1300, 1400, false), items).ToString(), "0.8");
}

TEST(WeightOf, SingletonSupport) {
  EXPECT_EQ(weight_of(lit("Studied", {"NO", "CoN"}, 1340, 1354), oresme()).ToString(), "0.4");
}

TEST(WeightOf, BestOfTwoSupports) {
  const Literal p = lit("P", {"A"}, 0, 0), q = lit("P", {"B"}, 0, 0), g = lit("R", {"A"}, 0, 0);
  Rule r1, r2;
  r1.premises = {p};
  r1.conclusion = g;
  r2.premises = {q};
  r2.conclusion = g;
  const Instantiation items = make_instantiation({{p, Weight::FromDouble(0.9)},
                                                  {r1, Weight::FromDouble(0.4)},
                                                  {q, Weight::FromDouble(0.5)},
                                                  {r2, Weight::FromDouble(0.7)},
                                                  {lit("Q", {"A"}, 0, 0), Weight::One()}});
  EXPECT_EQ(weight_of(g, items).ToString(), "0.5");
  EXPECT_EQ(oracle::brute_weight(g, items).ToString(), "0.5");
}

TEST(WeightOf, UnderivableTargetThrows) {
  EXPECT_THROW(weight_of(lit("PeasantFamily", {"MA"}, 1300, 1400), oresme()), Error);
}

TEST(Reinstantiate, ReweighsAndDropsRules) {
  const Literal p = lit("P", {"A"}, 0, 0), q = lit("Q", {"A"}, 0, 0);
  Rule r;
  r.premises = {p};
  r.conclusion = q;
  const Instantiation items = make_instantiation({{p, Weight::FromDouble(0.5)},
                                                  {r, Weight::FromDouble(0.9)}});
  const Instantiation re = reinstantiate(items);
  ASSERT_EQ(re.size(), 2u);
  EXPECT_EQ(re[1].weight.ToString(), "0.5");
  const Instantiation rule_only = make_instantiation({{r, Weight::FromDouble(0.9)}});
  EXPECT_TRUE(reinstantiate(rule_only).empty());
}

TEST(TauEntails, TimeInsensitiveNovelty) {
  const Tmln m = oresme();
  EXPECT_TRUE(tau_entails(m, lit("Studied", {"NO", "CoN"}, 1301, 1302)));
  EXPECT_FALSE(tau_entails(m, lit("Studied", {"MA", "CoN"}, 1301, 1302)));
}

TEST(Validate, OresmeHasNoIssues) { EXPECT_TRUE(validate(oresme()).empty()); }

}  // namespace
}  // namespace tmln
