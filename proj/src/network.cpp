#include "tmln/network.hpp"

#include <algorithm>
#include <set>
#include <utility>

namespace tmln {

Instantiation make_instantiation(std::vector<WeightedFormula> items) {
  std::sort(items.begin(), items.end());
  items.erase(std::unique(items.begin(), items.end()), items.end());
  for (std::size_t i = 1; i < items.size(); ++i) {
    if (items[i].formula == items[i - 1].formula) {
      throw Error("formula listed with two weights: " +
                  to_string(items[i].formula));
    }
  }
  return items;
}

void Tmln::canonicalize() {
  std::sort(facts.begin(), facts.end());
  facts.erase(std::unique(facts.begin(), facts.end()), facts.end());
  std::sort(rules.begin(), rules.end());
}

std::vector<std::string> check_literal(const Literal& lit, const Signature& sig,
                                       const Timeline& timeline) {
  std::vector<std::string> out;
  const PredicateDecl* decl = sig.find_predicate(lit.predicate);
  if (decl == nullptr) {
    out.push_back("unknown predicate " + lit.predicate);
    return out;
  }
  if (lit.args.size() != decl->arg_sorts.size()) {
    out.push_back(lit.predicate + " expects " +
                  std::to_string(decl->effective_arity()) + " arguments");
    return out;
  }
  for (std::size_t i = 0; i < lit.args.size(); ++i) {
    const std::string& want = decl->arg_sorts[i];
    const Term& a = lit.args[i];
    if (const auto* c = std::get_if<Constant>(&a)) {
      const ConstantDecl* cd = sig.find_constant(c->name);
      if (cd == nullptr) {
        out.push_back("unknown constant " + c->name);
      } else if (cd->sort != want) {
        out.push_back("sort mismatch: " + c->name + " is " + cd->sort +
                      ", expected " + want);
      }
    } else if (const auto* v = std::get_if<Variable>(&a)) {
      if (v->sort != want) {
        out.push_back("sort mismatch for variable " + v->name);
      }
    } else {
      out.push_back("time point in a non-temporal position of " +
                    lit.predicate);
    }
  }
  for (const Term* b : {&lit.lower, &lit.upper}) {
    if (const auto* v = std::get_if<Variable>(b)) {
      if (v->sort != kTimeSort) {
        out.push_back("sort mismatch for variable " + v->name);
      }
    } else if (!std::holds_alternative<TimePoint>(*b)) {
      out.push_back("temporal bound of " + lit.predicate +
                    " is not a time point");
    }
  }
  const auto* lo = std::get_if<TimePoint>(&lit.lower);
  const auto* hi = std::get_if<TimePoint>(&lit.upper);
  if (lo != nullptr && !timeline.contains(lo->value)) {
    out.push_back("time point " + std::to_string(lo->value) +
                  " outside the timeline");
  }
  if (hi != nullptr && !timeline.contains(hi->value)) {
    out.push_back("time point " + std::to_string(hi->value) +
                  " outside the timeline");
  }
  if (lo != nullptr && hi != nullptr && lo->value > hi->value) {
    out.push_back("inverted bounds");
  }
  return out;
}

std::vector<NetworkIssue> validate(const Tmln& m) {
  std::vector<NetworkIssue> issues;
  for (const auto& si : validate_signature(m.signature)) {
    issues.push_back({si.symbol, si.message});
  }
  if (m.timeline.lower > m.timeline.upper) {
    issues.push_back({"timeline", "inverted bounds"});
  }
  std::map<Literal, Weight> seen;
  for (const auto& f : m.facts) {
    const std::string where = to_string(f.literal);
    if (!f.literal.is_ground()) issues.push_back({where, "fact is not ground"});
    if (!f.weight.in_unit_interval()) {
      issues.push_back({where, "weight outside [0,1]"});
    }
    for (auto& msg : check_literal(f.literal, m.signature, m.timeline)) {
      issues.push_back({where, std::move(msg)});
    }
    auto [it, inserted] = seen.emplace(f.literal, f.weight);
    if (!inserted && it->second != f.weight) {
      issues.push_back({where, "fact listed with two weights"});
    }
  }
  std::set<std::string> ids;
  for (const auto& r : m.rules) {
    if (!ids.insert(r.id).second) issues.push_back({r.id, "duplicate rule id"});
    if (!r.weight.in_unit_interval()) {
      issues.push_back({r.id, "weight outside [0,1]"});
    }
    if (r.rule.premises.empty()) issues.push_back({r.id, "rule has no premise"});
    if (r.rule.is_ground()) issues.push_back({r.id, "rule has no variable"});
    std::map<std::string, std::string> sorts;
    std::set<std::string> premise_vars;
    auto scan = [&](const Literal& lit, bool premise) {
      for (auto& msg : check_literal(lit, m.signature, m.timeline)) {
        issues.push_back({r.id, std::move(msg)});
      }
      auto note = [&](const Term& t) {
        const auto* v = std::get_if<Variable>(&t);
        if (v == nullptr) return;
        auto [it, inserted] = sorts.emplace(v->name, v->sort);
        if (!inserted && it->second != v->sort) {
          issues.push_back({r.id, "variable " + v->name + " used at two sorts"});
        }
        if (premise) {
          premise_vars.insert(v->name);
        } else if (!premise_vars.contains(v->name)) {
          issues.push_back(
              {r.id, "conclusion variable " + v->name + " not in any premise"});
        }
      };
      for (const auto& a : lit.args) note(a);
      note(lit.lower);
      note(lit.upper);
    };
    for (const auto& p : r.rule.premises) scan(p, true);
    scan(r.rule.conclusion, false);
  }
  return issues;
}

std::vector<Formula> tf(const Instantiation& items) {
  std::vector<Formula> out;
  out.reserve(items.size());
  for (const auto& wf : items) out.push_back(wf.formula);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Formula> tf(const Tmln& m) {
  std::vector<Formula> out;
  for (const auto& f : m.facts) out.emplace_back(f.literal);
  for (const auto& r : m.rules) out.emplace_back(r.rule);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::map<Literal, Weight> support_weights(const Instantiation& items) {
  // Bottleneck fixpoint: a literal's value is the best min-weight over its
  // derivations. Max over all supports equals max over minimal ones, since
  // growing a support can only lower its minimum.
  std::map<Literal, Weight> val;
  std::vector<std::pair<const Rule*, Weight>> rules;
  for (const auto& wf : items) {
    if (!is_ground(wf.formula)) throw Error("support_weights: non-ground input");
    if (const auto* lit = std::get_if<Literal>(&wf.formula)) {
      auto [it, inserted] = val.emplace(*lit, wf.weight);
      if (!inserted) it->second = std::max(it->second, wf.weight);
    } else {
      rules.emplace_back(&std::get<Rule>(wf.formula), wf.weight);
    }
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& [rule, w] : rules) {
      Weight cand = w;
      bool ok = true;
      for (const auto& p : rule->premises) {
        auto it = val.find(p);
        if (it == val.end()) {
          ok = false;
          break;
        }
        cand = std::min(cand, it->second);
      }
      if (!ok) continue;
      auto [it, inserted] = val.emplace(rule->conclusion, cand);
      if (!inserted && cand > it->second) {
        it->second = cand;
        changed = true;
      } else if (inserted) {
        changed = true;
      }
    }
  }
  return val;
}

Weight weight_of(const Literal& target, const Instantiation& items) {
  const auto val = support_weights(items);
  auto it = val.find(target);
  if (it == val.end()) throw Error("not derivable: " + to_string(target));
  return it->second;
}

namespace {

using Index = std::map<std::pair<std::string, bool>, std::vector<const Literal*>>;

bool bind_term(const Term& pattern, const Term& value, const Signature& sig,
               Binding& b) {
  const auto* v = std::get_if<Variable>(&pattern);
  if (v == nullptr) return pattern == value;
  auto it = b.find(v->name);
  if (it != b.end()) return it->second == value;
  if (v->sort == kTimeSort) {
    if (!std::holds_alternative<TimePoint>(value)) return false;
  } else {
    const auto* c = std::get_if<Constant>(&value);
    if (c == nullptr) return false;
    const ConstantDecl* decl = sig.find_constant(c->name);
    if (decl == nullptr || decl->sort != v->sort) return false;
  }
  b.emplace(v->name, value);
  return true;
}

bool match(const Literal& pattern, const Literal& ground, const Signature& sig,
           Binding& b) {
  if (pattern.args.size() != ground.args.size()) return false;
  for (std::size_t i = 0; i < pattern.args.size(); ++i) {
    if (!bind_term(pattern.args[i], ground.args[i], sig, b)) return false;
  }
  return bind_term(pattern.lower, ground.lower, sig, b) &&
         bind_term(pattern.upper, ground.upper, sig, b);
}

// Left-to-right join of the premises against the indexed closure.
void join(const Rule& rule, std::size_t k, const Index& index,
          const Signature& sig, Binding& b, std::set<Rule>& out) {
  if (k == rule.premises.size()) {
    out.insert(substitute(rule, b, sig));
    return;
  }
  const Literal& p = rule.premises[k];
  auto it = index.find({p.predicate, p.positive});
  if (it == index.end()) return;
  for (const Literal* cand : it->second) {
    Binding next = b;
    if (match(p, *cand, sig, next)) join(rule, k + 1, index, sig, next, out);
  }
}

struct Grounding {
  // Instance -> best raw weight over its source rules.
  std::map<Rule, Weight> instances;
};

Grounding instantiate_rules(const Tmln& m) {
  Grounding g;
  LiteralSet closure;
  for (const auto& f : m.facts) closure.insert(f.literal);
  bool grew = true;
  while (grew) {
    grew = false;
    Index index;
    for (const auto& lit : closure) {
      index[{lit.predicate, lit.positive}].push_back(&lit);
    }
    std::vector<Literal> fresh;
    for (const auto& entry : m.rules) {
      std::set<Rule> found;
      Binding b;
      join(entry.rule, 0, index, m.signature, b, found);
      for (const auto& r : found) {
        auto [it, inserted] = g.instances.emplace(r, entry.weight);
        if (!inserted) it->second = std::max(it->second, entry.weight);
        if (!closure.contains(r.conclusion)) fresh.push_back(r.conclusion);
      }
    }
    for (auto& lit : fresh) grew |= closure.insert(std::move(lit)).second;
  }
  return g;
}

Instantiation base_of(const Tmln& m, const Grounding& g) {
  std::vector<WeightedFormula> items;
  for (const auto& f : m.facts) items.push_back({f.literal, f.weight});
  for (const auto& [r, w] : g.instances) items.push_back({r, w});
  // Duplicate facts with different weights are rejected by validate; keep
  // the larger one here so that W stays a max.
  std::sort(items.begin(), items.end());
  std::vector<WeightedFormula> out;
  for (auto& wf : items) {
    if (!out.empty() && out.back().formula == wf.formula) {
      out.back().weight = std::max(out.back().weight, wf.weight);
    } else {
      out.push_back(std::move(wf));
    }
  }
  return out;
}

}  // namespace

Weight weight_of(const Literal& target, const Tmln& m) {
  return weight_of(target, base_of(m, instantiate_rules(m)));
}

Instantiation applicable_instances(const Tmln& m) {
  Instantiation out;
  for (const auto& [r, w] : instantiate_rules(m).instances) {
    out.push_back({r, w});
  }
  return out;
}

Instantiation ground(const Tmln& m) {
  // Each source rule is weighted separately, then the max is kept per
  // ground rule.
  std::map<Rule, Weight> best;
  const auto val = support_weights(base_of(m, instantiate_rules(m)));
  Index index;
  for (const auto& [lit, w] : val) {
    index[{lit.predicate, lit.positive}].push_back(&lit);
  }
  for (const auto& entry : m.rules) {
    std::set<Rule> found;
    Binding b;
    join(entry.rule, 0, index, m.signature, b, found);
    for (const auto& r : found) {
      Weight w = entry.weight;
      for (const auto& p : r.premises) w = std::min(w, val.at(p));
      auto [it, inserted] = best.emplace(r, w);
      if (!inserted) it->second = std::max(it->second, w);
    }
  }
  std::vector<WeightedFormula> items;
  for (const auto& f : m.facts) items.push_back({f.literal, f.weight});
  for (const auto& [r, w] : best) items.push_back({r, w});
  return make_instantiation(std::move(items));
}

Instantiation reinstantiate(const Instantiation& items) {
  const auto val = support_weights(items);
  std::vector<WeightedFormula> out;
  for (const auto& wf : items) {
    const auto* rule = std::get_if<Rule>(&wf.formula);
    if (rule == nullptr) {
      out.push_back(wf);
      continue;
    }
    Weight w = wf.weight;
    bool ok = true;
    for (const auto& p : rule->premises) {
      auto it = val.find(p);
      if (it == val.end()) {
        ok = false;
        break;
      }
      w = std::min(w, it->second);
    }
    if (ok) out.push_back({wf.formula, w});
  }
  return make_instantiation(std::move(out));
}

bool tau_entails(const Tmln& m, const Formula& phi) {
  Tmln t;
  t.signature = m.signature;
  t.timeline = m.timeline;
  std::set<Literal> seen;
  for (const auto& f : m.facts) {
    const Literal lit = tau(f.literal, m.timeline);
    if (seen.insert(lit).second) t.facts.push_back({lit, Weight::One()});
  }
  for (const auto& r : m.rules) {
    t.rules.push_back({r.id, std::get<Rule>(tau(Formula{r.rule}, m.timeline)),
                       r.weight});
  }
  return entails_formula(tf(ground(t)), tau(phi, m.timeline));
}

std::string render(const Term& t, const Timeline& timeline, bool is_time) {
  if (is_time) {
    if (const auto* tp = std::get_if<TimePoint>(&t)) {
      if (tp->value == timeline.lower) return "TMIN";
      if (tp->value == timeline.upper) return "TMAX";
    }
  }
  return to_string(t);
}

std::string render(const Literal& lit, const Timeline& timeline) {
  std::string out = lit.positive ? "" : "!";
  out += lit.predicate;
  out += '(';
  for (const auto& a : lit.args) {
    out += render(a, timeline, false);
    out += ", ";
  }
  out += render(lit.lower, timeline, true);
  out += ", ";
  out += render(lit.upper, timeline, true);
  out += ')';
  return out;
}

std::string render(const Formula& f, const Timeline& timeline) {
  if (const auto* lit = std::get_if<Literal>(&f)) return render(*lit, timeline);
  const Rule& r = std::get<Rule>(f);
  std::string out = "{ ";
  for (std::size_t i = 0; i < r.premises.size(); ++i) {
    if (i > 0) out += " & ";
    out += render(r.premises[i], timeline);
  }
  out += " => ";
  out += render(r.conclusion, timeline);
  out += " }";
  return out;
}

}  // namespace tmln
