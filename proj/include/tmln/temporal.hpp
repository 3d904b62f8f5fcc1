#ifndef TMLN_TEMPORAL_HPP_
#define TMLN_TEMPORAL_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "tmln/kernel.hpp"

namespace tmln {

// Bounded discrete timeline; TMIN/TMAX name its two ends.
struct Timeline {
  std::int64_t lower = 0;
  std::int64_t upper = 0;

  bool contains(std::int64_t t) const { return lower <= t && t <= upper; }
  friend bool operator==(const Timeline&, const Timeline&) = default;
};

// Closed integer range [first, last]; never materialized as a point set.
class TimeInterval {
 public:
  TimeInterval(std::int64_t first, std::int64_t last);

  std::int64_t first() const { return first_; }
  std::int64_t last() const { return last_; }
  std::int64_t size() const { return last_ - first_ + 1; }
  bool contains(std::int64_t t) const { return first_ <= t && t <= last_; }
  bool intersects(const TimeInterval& o) const {
    return first_ <= o.last_ && o.first_ <= last_;
  }
  bool covers(const TimeInterval& o) const {
    return first_ <= o.first_ && o.last_ <= last_;
  }
  // this \ o is non-empty.
  bool exceeds(const TimeInterval& o) const { return !o.covers(*this); }

  friend bool operator==(const TimeInterval&, const TimeInterval&) = default;

 private:
  std::int64_t first_;
  std::int64_t last_;
};

// The points between two bounds. Throws Error on inverted bounds or a
// point outside the timeline.
TimeInterval ti(const Timeline& timeline, std::int64_t t1, std::int64_t t2);

// Rewrites the bounds of every literal (including those inside rules) to
// (TMIN, TMAX).
Literal tau(const Literal& lit, const Timeline& timeline);
Formula tau(const Formula& f, const Timeline& timeline);
std::vector<Formula> tau(std::span<const Formula> formulae,
                         const Timeline& timeline);

enum class Relation { kPCon, kTCon, kPInc, kTInc };

struct RelationKind {
  Relation relation = Relation::kTCon;
  bool negated = false;
  friend bool operator==(const RelationKind&, const RelationKind&) = default;
};

const char* relation_name(Relation r);
std::string relation_name(RelationKind k);
// Parses "pCon", "tCon", "pInc", "tInc", optionally prefixed by "!".
bool parse_relation(const std::string& text, RelationKind& out);

// How the positive and negative interval of one complementary pair relate.
struct PairShape {
  bool overlap = false;      // TI1 ∩ TI2 ≠ ∅
  bool equal = false;        // TI1 = TI2
  bool nested = false;       // TI1 ⊆ TI2 or TI2 ⊆ TI1
};

PairShape classify_pair(const TimeInterval& positive,
                        const TimeInterval& negative);

// Values of the four relations over one literal closure.
struct RelationProfile {
  bool p_con = true;
  bool t_con = true;
  bool p_inc = false;
  bool t_inc = false;

  bool holds(RelationKind kind) const;
  friend bool operator==(const RelationProfile&, const RelationProfile&) =
      default;
};

// Scans every complementary pair P(args, ..) / !P(args, ..) of `closure`.
RelationProfile relation_profile(const LiteralSet& closure);

// Evaluates `kind` over the literal closure of ground `formulae`.
bool relation_holds(RelationKind kind, std::span<const Formula> formulae);

}  // namespace tmln

#endif  // TMLN_TEMPORAL_HPP_
