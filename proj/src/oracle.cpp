#include "tmln/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <optional>
#include <set>

#include "tmln/kbformat.hpp"

namespace tmln::oracle {

namespace {

void require_size(std::size_t n, std::size_t bound, const char* what) {
  if (n > bound) {
    throw Error(std::string(what) + ": " + std::to_string(n) +
                " formulae exceed the oracle bound of " + std::to_string(bound));
  }
}

bool in_list(const std::vector<Literal>& list, const Literal& lit) {
  return std::find(list.begin(), list.end(), lit) != list.end();
}

std::vector<Literal> naive_closure(const std::vector<Formula>& formulae) {
  std::vector<Literal> known;
  for (const auto& f : formulae) {
    if (const auto* lit = std::get_if<Literal>(&f)) {
      if (!in_list(known, *lit)) known.push_back(*lit);
    }
  }
  bool grew = true;
  while (grew) {
    grew = false;
    for (const auto& f : formulae) {
      const auto* rule = std::get_if<Rule>(&f);
      if (rule == nullptr || in_list(known, rule->conclusion)) continue;
      bool fires = true;
      for (const auto& p : rule->premises) fires = fires && in_list(known, p);
      if (fires) {
        known.push_back(rule->conclusion);
        grew = true;
      }
    }
  }
  return known;
}

// Extends `b` so that `pattern` becomes `lit`, or returns nothing.
std::optional<Binding> unify(const Literal& pattern, const Literal& lit,
                             Binding b, const Signature& sig) {
  if (pattern.predicate != lit.predicate || pattern.positive != lit.positive ||
      pattern.args.size() != lit.args.size()) {
    return std::nullopt;
  }
  auto one = [&](const Term& p, const Term& g, bool time_slot) -> bool {
    const auto* v = std::get_if<Variable>(&p);
    if (v == nullptr) return p == g;
    if (time_slot || v->sort == kTimeSort) {
      if (!std::holds_alternative<TimePoint>(g)) return false;
    } else {
      const auto* c = std::get_if<Constant>(&g);
      if (c == nullptr) return false;
      const auto* decl = sig.find_constant(c->name);
      if (decl == nullptr || decl->sort != v->sort) return false;
    }
    auto it = b.find(v->name);
    if (it != b.end()) return it->second == g;
    b[v->name] = g;
    return true;
  };
  for (std::size_t i = 0; i < pattern.args.size(); ++i) {
    if (!one(pattern.args[i], lit.args[i], false)) return std::nullopt;
  }
  if (!one(pattern.lower, lit.lower, true)) return std::nullopt;
  if (!one(pattern.upper, lit.upper, true)) return std::nullopt;
  return b;
}

Literal apply(const Literal& lit, const Binding& b) {
  Literal out = lit;
  auto fix = [&](Term& t) {
    if (const auto* v = std::get_if<Variable>(&t)) {
      auto it = b.find(v->name);
      if (it != b.end()) t = it->second;
    }
  };
  for (auto& a : out.args) fix(a);
  fix(out.lower);
  fix(out.upper);
  return out;
}

// Every binding that maps each premise onto some literal of `known`.
std::vector<Binding> premise_matches(const Rule& rule,
                                     const std::vector<Literal>& known,
                                     const Signature& sig) {
  const std::size_t k = rule.premises.size();
  std::vector<Binding> out;
  if (known.empty()) return out;
  std::vector<std::size_t> pick(k, 0);
  while (true) {
    std::optional<Binding> b = Binding{};
    for (std::size_t i = 0; i < k && b; ++i) {
      b = unify(rule.premises[i], known[pick[i]], *b, sig);
    }
    if (b && std::find(out.begin(), out.end(), *b) == out.end()) {
      out.push_back(*b);
    }
    std::size_t pos = 0;
    while (pos < k && ++pick[pos] == known.size()) pick[pos++] = 0;
    if (pos == k) break;
  }
  return out;
}

// Closure of a TMLN subset whose rules may carry variables.
std::vector<Literal> lifted_closure(const std::vector<const Fact*>& facts,
                                    const std::vector<const RuleEntry*>& rules,
                                    const Signature& sig) {
  std::vector<Literal> known;
  for (const auto* f : facts) {
    if (!in_list(known, f->literal)) known.push_back(f->literal);
  }
  bool grew = true;
  while (grew) {
    grew = false;
    for (const auto* r : rules) {
      for (const auto& b : premise_matches(r->rule, known, sig)) {
        const Literal c = apply(r->rule.conclusion, b);
        if (c.is_ground() && !in_list(known, c)) {
          known.push_back(c);
          grew = true;
        }
      }
    }
  }
  return known;
}

// Max over the minimal entailing masks of the min weight in each.
Weight best_minimal(std::size_t n, const std::vector<Weight>& weights,
                    const std::function<bool(std::uint64_t)>& entails_mask,
                    const Literal& target) {
  std::vector<std::uint64_t> hits;
  for (std::uint64_t mask = 0; mask < (1ULL << n); ++mask) {
    if (entails_mask(mask)) hits.push_back(mask);
  }
  std::optional<Weight> best;
  for (std::uint64_t h : hits) {
    bool minimal = true;
    for (std::uint64_t o : hits) {
      if (o != h && (o & h) == o) minimal = false;
    }
    if (!minimal) continue;
    Weight lo = Weight::One();
    for (std::size_t i = 0; i < n; ++i) {
      if (h & (1ULL << i)) lo = std::min(lo, weights[i]);
    }
    if (!best || lo > *best) best = lo;
  }
  if (!best) throw Error("oracle: " + to_string(target) + " is not derivable");
  return *best;
}

std::set<std::int64_t> points(const Literal& lit) {
  const std::int64_t a = lit.lower_time(), b = lit.upper_time();
  if (b - a > 100000) throw Error("oracle: interval too long to materialize");
  std::set<std::int64_t> out;
  for (std::int64_t t = a; t <= b; ++t) out.insert(t);
  return out;
}

bool subset_of(const std::set<std::int64_t>& a, const std::set<std::int64_t>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

RelationProfile point_profile(const std::vector<Literal>& closure) {
  RelationProfile prof;
  for (const auto& p : closure) {
    if (!p.positive) continue;
    for (const auto& n : closure) {
      if (n.positive || n.predicate != p.predicate || n.args != p.args) continue;
      const auto tp = points(p), tn = points(n);
      std::vector<std::int64_t> common;
      std::set_intersection(tp.begin(), tp.end(), tn.begin(), tn.end(),
                            std::back_inserter(common));
      if (!common.empty()) {
        prof.t_con = false;
        prof.p_inc = true;
      }
      if (subset_of(tp, tn) || subset_of(tn, tp)) prof.p_con = false;
      if (tp == tn) prof.t_inc = true;
    }
  }
  return prof;
}

int brute_delta(Relation x, const std::vector<Literal>& closure) {
  const RelationProfile prof = point_profile(closure);
  switch (x) {
    case Relation::kTCon: return prof.t_con ? 1 : 0;
    case Relation::kPCon: return prof.p_con ? 1 : 0;
    case Relation::kPInc: return prof.p_inc ? 0 : 1;
    case Relation::kTInc: return prof.t_inc ? 0 : 1;
  }
  return 0;
}

std::vector<double> brute_select(const Selector& sigma,
                                 const Instantiation& items) {
  std::vector<double> out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    const double w = items[i].weight.value();
    if (sigma.kind == SelectorKind::kId) {
      out.push_back(w);
    } else if (sigma.kind == SelectorKind::kThresh) {
      out.push_back(w > sigma.alpha ? w - sigma.alpha : 0.0);
    } else if (!is_rule(items[i].formula)) {
      out.push_back(w);
    } else {
      std::vector<Formula> rest;
      for (std::size_t j = 0; j < items.size(); ++j) {
        if (j != i) rest.push_back(items[j].formula);
      }
      const auto known = naive_closure(rest);
      bool usable = true;
      for (const auto& p : std::get<Rule>(items[i].formula).premises) {
        usable = usable && in_list(known, p);
      }
      out.push_back(usable ? w : 0.0);
    }
  }
  return out;
}

double brute_theta(const Aggregator& theta, const std::vector<double>& w) {
  switch (theta.kind) {
    case AggregatorKind::kSum: {
      double s = 0;
      for (double x : w) s += x;
      return s;
    }
    case AggregatorKind::kSumAlpha: {
      double s = 0;
      for (double x : w) s += std::pow(x, theta.alpha);
      return s == 0 ? 0.0 : std::pow(s, 1.0 / theta.alpha);
    }
    case AggregatorKind::kPsum: {
      double keep = 1;
      for (double x : w) keep *= 1.0 - x;
      return 1.0 - keep;
    }
  }
  return 0;
}

Instantiation pick(const Instantiation& mi, std::uint64_t mask) {
  Instantiation out;
  for (std::size_t i = 0; i < mi.size(); ++i) {
    if (mask & (1ULL << i)) out.push_back(mi[i]);
  }
  return out;
}

std::vector<Formula> formulae_of(const Instantiation& items) {
  std::vector<Formula> out;
  for (const auto& wf : items) out.push_back(wf.formula);
  return out;
}

bool classically_consistent(const Instantiation& items) {
  const auto known = naive_closure(formulae_of(items));
  for (const auto& l : known) {
    if (in_list(known, l.negated())) return false;
  }
  return true;
}

std::string digest(const std::string& text) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string show(const Instantiation& items, const Timeline& tl) {
  std::string out = "{";
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += "; ";
    out += render(items[i].formula, tl) + " : " + items[i].weight.ToString();
  }
  return out + "}";
}

std::string show(const MapResult& r, const Timeline& tl) {
  std::string out = "strength " + FormatDecimal(r.strength);
  for (const auto& m : r.maps) out += " " + show(m.formulae, tl);
  return out;
}

std::string show(std::vector<Literal> lits, const Timeline& tl) {
  std::sort(lits.begin(), lits.end());
  std::string out = "{";
  for (std::size_t i = 0; i < lits.size(); ++i) {
    if (i) out += "; ";
    out += render(lits[i], tl);
  }
  return out + "}";
}

}  // namespace

std::vector<Literal> brute_closure(const std::vector<Formula>& formulae) {
  require_size(formulae.size(), kClosureBound, "brute_closure");
  return naive_closure(formulae);
}

Weight brute_weight(const Literal& target, const Instantiation& items) {
  require_size(items.size(), kWeightBound, "brute_weight");
  std::vector<Weight> weights;
  for (const auto& wf : items) weights.push_back(wf.weight);
  return best_minimal(
      items.size(), weights,
      [&](std::uint64_t mask) {
        return in_list(naive_closure(formulae_of(pick(items, mask))), target);
      },
      target);
}

Weight brute_weight(const Literal& target, const Tmln& m) {
  const std::size_t n = m.facts.size() + m.rules.size();
  require_size(n, kWeightBound, "brute_weight");
  std::vector<Weight> weights;
  for (const auto& f : m.facts) weights.push_back(f.weight);
  for (const auto& r : m.rules) weights.push_back(r.weight);
  return best_minimal(
      n, weights,
      [&](std::uint64_t mask) {
        std::vector<const Fact*> facts;
        std::vector<const RuleEntry*> rules;
        for (std::size_t i = 0; i < n; ++i) {
          if (!(mask & (1ULL << i))) continue;
          if (i < m.facts.size()) {
            facts.push_back(&m.facts[i]);
          } else {
            rules.push_back(&m.rules[i - m.facts.size()]);
          }
        }
        return in_list(lifted_closure(facts, rules, m.signature), target);
      },
      target);
}

Instantiation brute_ground(const Tmln& m) {
  std::vector<const Fact*> facts;
  std::vector<const RuleEntry*> rules;
  for (const auto& f : m.facts) facts.push_back(&f);
  for (const auto& r : m.rules) rules.push_back(&r);
  const auto known = lifted_closure(facts, rules, m.signature);

  std::map<Rule, Weight> ground_rules;
  for (const auto& r : m.rules) {
    for (const auto& b : premise_matches(r.rule, known, m.signature)) {
      Rule g;
      Weight w = r.weight;
      for (const auto& p : r.rule.premises) {
        g.premises.push_back(apply(p, b));
        w = std::min(w, brute_weight(g.premises.back(), m));
      }
      g.conclusion = apply(r.rule.conclusion, b);
      auto [it, fresh] = ground_rules.emplace(g, w);
      if (!fresh) it->second = std::max(it->second, w);
    }
  }
  std::vector<WeightedFormula> out;
  for (const auto& f : m.facts) out.push_back({f.literal, f.weight});
  for (const auto& [g, w] : ground_rules) out.push_back({g, w});
  return make_instantiation(std::move(out));
}

RelationProfile brute_profile(const std::vector<Formula>& formulae) {
  return point_profile(naive_closure(formulae));
}

namespace {

MapResult maximal_optimal(const Instantiation& mi, const std::vector<double>& score,
                          const std::function<std::vector<double>(const Instantiation&)>& slots) {
  const double best = *std::max_element(score.begin(), score.end());
  std::vector<std::uint64_t> optimal;
  for (std::uint64_t mask = 0; mask < score.size(); ++mask) {
    if (score[mask] >= best - kTolerance) optimal.push_back(mask);
  }
  MapResult out;
  out.strength = best;
  out.evaluated = score.size();
  for (std::uint64_t a : optimal) {
    bool maximal = true;
    for (std::uint64_t b : optimal) {
      if (a != b && (a & b) == a) maximal = false;
    }
    if (!maximal) continue;
    MapEntry e;
    e.formulae = pick(mi, a);
    e.contributions = slots(e.formulae);
    out.maps.push_back(std::move(e));
  }
  std::sort(out.maps.begin(), out.maps.end(),
            [](const MapEntry& x, const MapEntry& y) { return x.formulae < y.formulae; });
  return out;
}

std::vector<double> raw_weights(const Instantiation& items) {
  std::vector<double> out;
  for (const auto& wf : items) out.push_back(wf.weight.value());
  return out;
}

}  // namespace

MapResult brute_map(const Instantiation& mi, const ParametricSemantics& tps) {
  require_size(mi.size(), kMapBound, "brute_map");
  std::vector<double> score(1ULL << mi.size());
  for (std::uint64_t mask = 0; mask < score.size(); ++mask) {
    const Instantiation items = pick(mi, mask);
    const int d = brute_delta(tps.delta, naive_closure(formulae_of(items)));
    score[mask] = d * brute_theta(tps.theta, brute_select(tps.sigma, items));
  }
  return maximal_optimal(mi, score, [&](const Instantiation& items) {
    return brute_select(tps.sigma, items);
  });
}

MapResult classical_map(const Instantiation& mi) {
  require_size(mi.size(), kMapBound, "classical_map");
  std::vector<double> score(1ULL << mi.size());
  for (std::uint64_t mask = 0; mask < score.size(); ++mask) {
    const Instantiation items = pick(mi, mask);
    double s = 0;
    if (classically_consistent(items)) {
      for (const auto& wf : items) s += wf.weight.value();
    }
    score[mask] = s;
  }
  return maximal_optimal(mi, score, raw_weights);
}

double classical_fact_optimum(const Instantiation& mi) {
  require_size(mi.size(), kMapBound, "classical_fact_optimum");
  double best = 0;
  for (std::uint64_t mask = 0; mask < (1ULL << mi.size()); ++mask) {
    const Instantiation items = pick(mi, mask);
    if (!classically_consistent(items)) continue;
    double s = 0;
    for (const auto& wf : items) {
      if (!is_rule(wf.formula)) s += wf.weight.value();
    }
    best = std::max(best, s);
  }
  return best;
}

std::vector<OracleReport> compare(const Tmln& m,
                                  const std::vector<ParametricSemantics>& configs) {
  std::vector<OracleReport> out;
  const std::string inputs = digest(serialize(m));
  const Timeline& tl = m.timeline;
  auto add = [&](std::string op, std::string oracle_text, std::string engine_text) {
    const bool match = oracle_text == engine_text;
    out.push_back({std::move(op), inputs, std::move(oracle_text),
                   std::move(engine_text), match});
  };

  const Instantiation mi = ground(m);
  add("ground", show(brute_ground(m), tl), show(mi, tl));

  if (mi.size() <= kClosureBound) {
    const auto formulae = tf(mi);
    const LiteralSet engine = derive_closure(formulae);
    add("closure", show(brute_closure(formulae), tl),
        show(std::vector<Literal>(engine.begin(), engine.end()), tl));
  }

  if (m.facts.size() + m.rules.size() <= kWeightBound) {
    for (const auto& [lit, w] : support_weights(mi)) {
      add("weight " + render(lit, tl), brute_weight(lit, m).ToString(),
          weight_of(lit, m).ToString());
    }
  }

  if (mi.size() <= kMapBound) {
    for (const auto& tps : configs) {
      const MapResult oracle_map = brute_map(mi, tps);
      const MapResult engine_map = map_exhaustive(mi, tps);
      const MapResult pruned_map = map_pruned(mi, tps);
      const bool match = same_result(oracle_map, engine_map) &&
                         same_result(oracle_map, pruned_map);
      out.push_back({"map " + tps.name(), inputs, show(oracle_map, tl),
                     show(engine_map, tl), match});
    }
  }
  return out;
}

}  // namespace tmln::oracle
