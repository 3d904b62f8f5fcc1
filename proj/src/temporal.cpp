#include "tmln/temporal.hpp"

#include <map>
#include <utility>

namespace tmln {

TimeInterval::TimeInterval(std::int64_t first, std::int64_t last)
    : first_(first), last_(last) {
  if (first > last) {
    throw Error("inverted bounds " + std::to_string(first) + " > " +
                std::to_string(last));
  }
}

TimeInterval ti(const Timeline& timeline, std::int64_t t1, std::int64_t t2) {
  if (t1 > t2) {
    throw Error("inverted bounds " + std::to_string(t1) + " > " +
                std::to_string(t2));
  }
  if (!timeline.contains(t1) || !timeline.contains(t2)) {
    throw Error("time point outside the timeline");
  }
  return TimeInterval(t1, t2);
}

Literal tau(const Literal& lit, const Timeline& timeline) {
  Literal out = lit;
  out.lower = TimePoint{timeline.lower};
  out.upper = TimePoint{timeline.upper};
  return out;
}

Formula tau(const Formula& f, const Timeline& timeline) {
  if (const auto* lit = std::get_if<Literal>(&f)) return tau(*lit, timeline);
  Rule r = std::get<Rule>(f);
  for (auto& p : r.premises) p = tau(p, timeline);
  r.conclusion = tau(r.conclusion, timeline);
  return r;
}

std::vector<Formula> tau(std::span<const Formula> formulae,
                         const Timeline& timeline) {
  std::vector<Formula> out;
  out.reserve(formulae.size());
  for (const auto& f : formulae) out.push_back(tau(f, timeline));
  return out;
}

const char* relation_name(Relation r) {
  switch (r) {
    case Relation::kPCon: return "pCon";
    case Relation::kTCon: return "tCon";
    case Relation::kPInc: return "pInc";
    case Relation::kTInc: return "tInc";
  }
  return "?";
}

std::string relation_name(RelationKind k) {
  return (k.negated ? "!" : "") + std::string(relation_name(k.relation));
}

bool parse_relation(const std::string& text, RelationKind& out) {
  std::string name = text;
  bool negated = false;
  if (!name.empty() && name[0] == '!') {
    negated = true;
    name.erase(0, 1);
  }
  for (Relation r : {Relation::kPCon, Relation::kTCon, Relation::kPInc,
                     Relation::kTInc}) {
    if (name == relation_name(r)) {
      out = {r, negated};
      return true;
    }
  }
  return false;
}

PairShape classify_pair(const TimeInterval& positive,
                        const TimeInterval& negative) {
  PairShape s;
  s.overlap = positive.intersects(negative);
  s.equal = positive == negative;
  s.nested = !positive.exceeds(negative) || !negative.exceeds(positive);
  return s;
}

bool RelationProfile::holds(RelationKind kind) const {
  bool v = false;
  switch (kind.relation) {
    case Relation::kPCon: v = p_con; break;
    case Relation::kTCon: v = t_con; break;
    case Relation::kPInc: v = p_inc; break;
    case Relation::kTInc: v = t_inc; break;
  }
  return kind.negated ? !v : v;
}

RelationProfile relation_profile(const LiteralSet& closure) {
  // Group by (predicate, args); within a group, positives and negatives
  // form the complementary pairs.
  using Key = std::pair<std::string, std::vector<Term>>;
  std::map<Key, std::pair<std::vector<TimeInterval>, std::vector<TimeInterval>>>
      groups;
  for (const auto& lit : closure) {
    auto& g = groups[{lit.predicate, lit.args}];
    TimeInterval iv(lit.lower_time(), lit.upper_time());
    (lit.positive ? g.first : g.second).push_back(iv);
  }
  RelationProfile prof;
  for (const auto& [key, g] : groups) {
    for (const auto& pos : g.first) {
      for (const auto& neg : g.second) {
        const PairShape s = classify_pair(pos, neg);
        if (s.nested) prof.p_con = false;
        if (s.overlap) {
          prof.t_con = false;
          prof.p_inc = true;
        }
        if (s.equal) prof.t_inc = true;
      }
    }
  }
  return prof;
}

bool relation_holds(RelationKind kind, std::span<const Formula> formulae) {
  return relation_profile(derive_closure(formulae)).holds(kind);
}

}  // namespace tmln
