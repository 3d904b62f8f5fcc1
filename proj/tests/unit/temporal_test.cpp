#include <gtest/gtest.h>

#include "support.hpp"
#include "tmln/temporal.hpp"

namespace tmln {
namespace {

using testing::lit;

const Timeline kLine{1300, 1400};

TEST(TimeRange, ClosedRangeSize) {
  const TimeInterval t = ti(kLine, 1340, 1354);
  EXPECT_EQ(t.size(), 15);
  EXPECT_EQ(t.first(), 1340);
  EXPECT_EQ(t.last(), 1354);
}

TEST(TimeRange, ExtremesCoverTimeline) {
  const TimeInterval t = ti(kLine, kLine.lower, kLine.upper);
  EXPECT_EQ(t.size(), 101);
}

TEST(TimeRange, InvertedBoundsThrow) {
  try {
    ti(kLine, 1360, 1355);
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("inverted bounds"), std::string::npos);
  }
  EXPECT_THROW(ti(kLine, 1200, 1300), Error);
}

TEST(Tau, WidensEveryBound) {
  const Literal l = lit("Studied", {"NO", "CoN"}, 1340, 1354);
  EXPECT_EQ(tau(l, kLine), lit("Studied", {"NO", "CoN"}, 1300, 1400));
  Rule r;
  r.premises = {l};
  r.conclusion = lit("Q", {"NO"}, 1350, 1351);
  const Rule t = std::get<Rule>(tau(Formula{r}, kLine));
  EXPECT_EQ(t.premises[0].lower_time(), 1300);
  EXPECT_EQ(t.conclusion.upper_time(), 1400);
}

TEST(Tau, FullRangeIsFixpoint) {
  const Literal l = lit("P", {"A"}, 1300, 1400, false);
  EXPECT_EQ(tau(l, kLine), l);
}

RelationProfile profile(std::vector<Formula> fs) {
  return relation_profile(derive_closure(fs));
}

TEST(Relations, StudiedOverlapIsPartial) {
  const auto p = profile({lit("Studied", {"NO", "CoN"}, 1340, 1354),
                          lit("Studied", {"NO", "CoN"}, 1353, 1370, false)});
  EXPECT_TRUE(p.p_inc);
  EXPECT_FALSE(p.t_con);
  EXPECT_TRUE(p.p_con);
  EXPECT_FALSE(p.t_inc);
}

TEST(Relations, EqualIntervalsAreTotallyInconsistent) {
  const auto p = profile({lit("P", {"A"}, 1, 2), lit("P", {"A"}, 1, 2, false)});
  EXPECT_TRUE(p.t_inc);
  EXPECT_FALSE(p.p_con);
}

TEST(Relations, NoComplementaryPairIsVacuous) {
  const auto p = profile({lit("P", {"A"}, 1, 2), lit("P", {"B"}, 1, 2, false)});
  EXPECT_TRUE(p.t_con);
  EXPECT_TRUE(p.p_con);
  EXPECT_FALSE(p.p_inc);
  EXPECT_FALSE(p.t_inc);
}

TEST(Relations, NestingWithoutEqualityBreaksPartialConsistency) {
  const auto p = profile({lit("P", {"A"}, 1, 5), lit("P", {"A"}, 2, 3, false)});
  EXPECT_FALSE(p.p_con);
  EXPECT_TRUE(p.p_inc);
  EXPECT_FALSE(p.t_inc);
}

TEST(Relations, ParseNames) {
  RelationKind k;
  ASSERT_TRUE(parse_relation("!pInc", k));
  EXPECT_EQ(k.relation, Relation::kPInc);
  EXPECT_TRUE(k.negated);
  EXPECT_FALSE(parse_relation("pinc", k));
  EXPECT_EQ(relation_name(k), "!pInc");
}

}  // namespace
}  // namespace tmln
