#include "tmln/kernel.hpp"

#include <algorithm>
#include <deque>

namespace tmln {

bool Signature::has_sort(const std::string& sort) const {
  return std::find(sorts.begin(), sorts.end(), sort) != sorts.end();
}

const ConstantDecl* Signature::find_constant(const std::string& name) const {
  for (const auto& c : constants) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

const PredicateDecl* Signature::find_predicate(const std::string& name) const {
  for (const auto& p : predicates) {
    if (p.name == name) return &p;
  }
  return nullptr;
}

std::vector<SignatureIssue> validate_signature(const Signature& sig) {
  std::vector<SignatureIssue> issues;
  std::set<std::string> seen;
  for (const auto& s : sig.sorts) {
    if (s == kTimeSort) {
      issues.push_back({s, "reserved sort name"});
    } else if (!seen.insert(s).second) {
      issues.push_back({s, "duplicate sort"});
    }
  }
  seen.clear();
  for (const auto& c : sig.constants) {
    if (!seen.insert(c.name).second) {
      issues.push_back({c.name, "duplicate constant"});
    }
    if (!sig.has_sort(c.sort)) {
      issues.push_back({c.name, "unknown sort " + c.sort});
    }
  }
  seen.clear();
  for (const auto& p : sig.predicates) {
    if (!seen.insert(p.name).second) {
      issues.push_back({p.name, "duplicate predicate"});
    }
    if (p.effective_arity() < 3) {
      issues.push_back({p.name, "arity < 3"});
    }
    for (const auto& s : p.arg_sorts) {
      if (!sig.has_sort(s)) issues.push_back({p.name, "unknown sort " + s});
    }
  }
  return issues;
}

bool Literal::is_ground() const {
  if (is_variable(lower) || is_variable(upper)) return false;
  return std::none_of(args.begin(), args.end(), is_variable);
}

Literal Literal::negated() const {
  Literal out = *this;
  out.positive = !positive;
  return out;
}

namespace {

std::int64_t time_of(const Term& t) {
  if (const auto* tp = std::get_if<TimePoint>(&t)) return tp->value;
  throw Error("temporal bound is not a time point: " + to_string(t));
}

void collect_vars(const Literal& lit, std::set<Variable>& out) {
  for (const auto& a : lit.args) {
    if (const auto* v = std::get_if<Variable>(&a)) out.insert(*v);
  }
  if (const auto* v = std::get_if<Variable>(&lit.lower)) out.insert(*v);
  if (const auto* v = std::get_if<Variable>(&lit.upper)) out.insert(*v);
}

Term substitute_term(const Term& t, const Binding& binding,
                     const Signature& sig) {
  const auto* var = std::get_if<Variable>(&t);
  if (var == nullptr) return t;
  auto it = binding.find(var->name);
  if (it == binding.end()) throw Error("uncovered variable " + var->name);
  const Term& value = it->second;
  if (is_variable(value)) {
    throw Error("binding for " + var->name + " is not ground");
  }
  if (var->sort == kTimeSort) {
    if (!std::holds_alternative<TimePoint>(value)) {
      throw Error("sort mismatch for " + var->name);
    }
  } else {
    const auto* c = std::get_if<Constant>(&value);
    if (c == nullptr) throw Error("sort mismatch for " + var->name);
    const ConstantDecl* decl = sig.find_constant(c->name);
    if (decl == nullptr || decl->sort != var->sort) {
      throw Error("sort mismatch for " + var->name);
    }
  }
  return value;
}

}  // namespace

std::int64_t Literal::lower_time() const { return time_of(lower); }
std::int64_t Literal::upper_time() const { return time_of(upper); }

std::vector<Variable> Rule::variables() const {
  std::set<Variable> vars;
  for (const auto& p : premises) collect_vars(p, vars);
  collect_vars(conclusion, vars);
  return {vars.begin(), vars.end()};
}

bool Rule::is_ground() const {
  return conclusion.is_ground() &&
         std::all_of(premises.begin(), premises.end(),
                     [](const Literal& l) { return l.is_ground(); });
}

bool is_ground(const Formula& f) {
  return std::visit([](const auto& x) { return x.is_ground(); }, f);
}

Literal substitute(const Literal& lit, const Binding& binding,
                   const Signature& sig) {
  Literal out = lit;
  for (auto& a : out.args) a = substitute_term(a, binding, sig);
  out.lower = substitute_term(out.lower, binding, sig);
  out.upper = substitute_term(out.upper, binding, sig);
  return out;
}

Rule substitute(const Rule& rule, const Binding& binding,
                const Signature& sig) {
  Rule out;
  out.premises.reserve(rule.premises.size());
  for (const auto& p : rule.premises) {
    out.premises.push_back(substitute(p, binding, sig));
  }
  out.conclusion = substitute(rule.conclusion, binding, sig);
  return out;
}

LiteralSet derive_closure(std::span<const Formula> formulae) {
  LiteralSet closure;
  std::deque<const Literal*> agenda;
  // For each rule, the number of distinct premises not yet derived.
  std::vector<const Rule*> rules;
  std::vector<std::size_t> missing;
  std::map<Literal, std::vector<std::size_t>> waiting;

  for (const auto& f : formulae) {
    if (!is_ground(f)) throw Error("derive_closure: non-ground input");
    if (const auto* lit = std::get_if<Literal>(&f)) {
      closure.insert(*lit);
    } else {
      rules.push_back(&std::get<Rule>(f));
    }
  }
  for (const auto& lit : closure) agenda.push_back(&lit);

  missing.resize(rules.size());
  for (std::size_t r = 0; r < rules.size(); ++r) {
    std::set<Literal> distinct(rules[r]->premises.begin(),
                               rules[r]->premises.end());
    std::size_t count = 0;
    for (const auto& p : distinct) {
      if (!closure.contains(p)) {
        waiting[p].push_back(r);
        ++count;
      }
    }
    missing[r] = count;
    if (count == 0) {
      auto [it, inserted] = closure.insert(rules[r]->conclusion);
      if (inserted) agenda.push_back(&*it);
    }
  }

  while (!agenda.empty()) {
    const Literal* lit = agenda.front();
    agenda.pop_front();
    auto w = waiting.find(*lit);
    if (w == waiting.end()) continue;
    for (std::size_t r : w->second) {
      if (--missing[r] == 0) {
        auto [it, inserted] = closure.insert(rules[r]->conclusion);
        if (inserted) agenda.push_back(&*it);
      }
    }
    waiting.erase(w);
  }
  return closure;
}

bool entails(std::span<const Formula> formulae, const Literal& target) {
  if (formulae.empty()) return false;
  return derive_closure(formulae).contains(target);
}

bool entails_formula(std::span<const Formula> formulae,
                     const Formula& target) {
  if (const auto* lit = std::get_if<Literal>(&target)) {
    return entails(formulae, *lit);
  }
  const Rule& rule = std::get<Rule>(target);
  std::vector<Formula> extended(formulae.begin(), formulae.end());
  for (const auto& p : rule.premises) extended.emplace_back(p);
  return entails(extended, rule.conclusion);
}

std::string to_string(const Term& t) {
  if (const auto* c = std::get_if<Constant>(&t)) return c->name;
  if (const auto* v = std::get_if<Variable>(&t)) return v->name;
  return std::to_string(std::get<TimePoint>(t).value);
}

std::string to_string(const Literal& lit) {
  std::string out = lit.positive ? "" : "!";
  out += lit.predicate;
  out += '(';
  for (const auto& a : lit.args) {
    out += to_string(a);
    out += ", ";
  }
  out += to_string(lit.lower);
  out += ", ";
  out += to_string(lit.upper);
  out += ')';
  return out;
}

std::string to_string(const Rule& rule) {
  std::string out = "{ ";
  for (std::size_t i = 0; i < rule.premises.size(); ++i) {
    if (i > 0) out += " & ";
    out += to_string(rule.premises[i]);
  }
  out += " => ";
  out += to_string(rule.conclusion);
  out += " }";
  return out;
}

std::string to_string(const Formula& f) {
  return std::visit([](const auto& x) { return to_string(x); }, f);
}

}  // namespace tmln
