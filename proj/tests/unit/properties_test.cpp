#include <gtest/gtest.h>

#include "support.hpp"
#include "tmln/properties.hpp"

namespace tmln {
namespace {

using testing::kb;
using testing::lit;

TEST(Lattice, SmallRunPasses) {
  gen::Rng rng(2);
  for (const auto& s : props::relation_lattice(rng, 300)) EXPECT_TRUE(s.passed()) << props::summary_line(s);
}

TEST(Principles, SeededRunsAreReproducible) {
  props::PrincipleOptions opt;
  opt.kbs = 10;
  gen::Rng a(5), b(5);
  const auto ra = props::principles(a, opt, shipped_semantics());
  const auto rb = props::principles(b, opt, shipped_semantics());
  ASSERT_EQ(ra.size(), rb.size());
  for (std::size_t i = 0; i < ra.size(); ++i) {
    EXPECT_EQ(props::summary_line(ra[i]), props::summary_line(rb[i]));
    EXPECT_EQ(ra[i].counterexample, rb[i].counterexample);
  }
}

TEST(Principles, FreshPredicateExtensionsPass) {
  props::PrincipleOptions opt;
  opt.kbs = 60;
  gen::Rng rng(9);
  for (const auto& s : props::principles(rng, opt, shipped_semantics())) {
    if (s.name.find("existing predicate") != std::string::npos) continue;
    EXPECT_TRUE(s.passed()) << props::summary_line(s) << "\n" << s.counterexample;
  }
}

// A weighted fact over an existing predicate fires R1. The new ground rule
// belongs to MI(M') and joins every optimum, so I + {phi} alone is no
// longer maximal.
TEST(Principles, ExistingPredicateExtensionAddsGroundRule) {
  const std::string header =
      "sort Obj\ntimeline 0 6\nconst C0 : Obj\nconst C1 : Obj\npred P0(Obj)\npred P2(Obj)\n"
      "rule R1 : 0.9 { P0(x, t0, u0) => P2(C1, t0, u0) }\n";
  const Tmln m = kb(header + "fact P2(C0, 1, 3) : 0.4\n");
  const Tmln extended = kb(header + "fact P2(C0, 1, 3) : 0.4\nfact P0(C1, 2, 2) : 0.5\n");
  const ParametricSemantics tps{Relation::kTCon, Selector::Id(), Aggregator::Sum()};
  const MapResult before = map_pruned(m, tps), after = map_pruned(extended, tps);
  ASSERT_EQ(before.maps.size(), 1u);
  Instantiation want = before.maps[0].formulae;
  want.push_back({lit("P0", {"C1"}, 2, 2), Weight::FromDouble(0.5)});
  want = make_instantiation(want);
  ASSERT_EQ(after.maps.size(), 1u);
  EXPECT_NE(after.maps[0].formulae, want);
  EXPECT_EQ(after.maps[0].formulae.size(), want.size() + 1);
  EXPECT_NEAR(after.strength, before.strength + 1.0, 1e-9);
}

TEST(Oracle, SmallEquivalenceRun) {
  gen::Rng rng(6);
  for (const auto& s : props::oracle_equivalence(rng, 40, 12, shipped_semantics())) {
    EXPECT_TRUE(s.passed()) << props::summary_line(s) << "\n" << s.counterexample;
  }
}

TEST(Classical, AllWeightReadingAgrees) {
  gen::Rng rng(10);
  const auto r = props::classical_agreement(rng, 60, 12);
  ASSERT_EQ(r.size(), 2u);
  EXPECT_TRUE(r[0].passed()) << r[0].counterexample;
  EXPECT_GT(r[1].failures, 0u);
}

TEST(Format, SmallRoundTripRun) {
  gen::Rng rng(3);
  for (const auto& s : props::format_roundtrip(rng, 50)) EXPECT_TRUE(s.passed()) << s.counterexample;
}

TEST(Mutants, NamesResolve) {
  gen::Rng rng(1);
  const auto corpus = props::audit_corpus(rng, 50);
  EXPECT_EQ(props::mutant_names().size(), 11u);
  EXPECT_THROW(props::audit_mutant("Theta-(z)", corpus), Error);
}

}  // namespace
}  // namespace tmln
