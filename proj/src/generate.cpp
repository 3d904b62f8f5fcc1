#include "tmln/generate.hpp"

#include <algorithm>
#include <optional>
#include <string>

namespace tmln::gen {

namespace {

constexpr const char* kObject = "Obj";

int uniform(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

bool chance(Rng& rng, double p) {
  return std::bernoulli_distribution(p)(rng);
}

std::pair<std::int64_t, std::int64_t> interval(Rng& rng, std::int64_t lo,
                                               std::int64_t hi) {
  std::uniform_int_distribution<std::int64_t> d(lo, hi);
  std::int64_t a = d(rng), b = d(rng);
  if (a > b) std::swap(a, b);
  return {a, b};
}

Term random_constant(Rng& rng, const Tmln& m) {
  const auto& cs = m.signature.constants;
  return Constant{cs[uniform(rng, 0, static_cast<int>(cs.size()) - 1)].name};
}

}  // namespace

Weight grid_weight(Rng& rng, int steps) {
  return Weight::FromNanos(Weight::kScale / steps * uniform(rng, 0, steps));
}

Literal random_literal(Rng& rng, const Tmln& m, bool allow_negative) {
  const auto& ps = m.signature.predicates;
  const auto& p = ps[uniform(rng, 0, static_cast<int>(ps.size()) - 1)];
  Literal lit;
  lit.predicate = p.name;
  for (std::size_t i = 0; i < p.arg_sorts.size(); ++i) {
    lit.args.push_back(random_constant(rng, m));
  }
  lit.positive = !(allow_negative && chance(rng, 0.4));
  const auto [a, b] = interval(rng, m.timeline.lower, m.timeline.upper);
  lit.lower = TimePoint{a};
  lit.upper = TimePoint{b};
  return lit;
}

Tmln random_kb(Rng& rng, const KbShape& shape) {
  Tmln m;
  m.signature.sorts = {kObject};
  for (int i = 0; i < shape.constants; ++i) {
    m.signature.constants.push_back({"C" + std::to_string(i), kObject});
  }
  for (int i = 0; i < shape.predicates; ++i) {
    PredicateDecl p{"P" + std::to_string(i), {}};
    const int args = uniform(rng, 1, std::max(1, shape.max_args));
    p.arg_sorts.assign(args, kObject);
    m.signature.predicates.push_back(p);
  }
  m.timeline = {0, shape.horizon};

  for (int i = 0; i < shape.facts; ++i) {
    Literal lit = random_literal(rng, m, false);
    lit.positive = !chance(rng, shape.negative_rate);
    const bool taken = std::any_of(m.facts.begin(), m.facts.end(),
                                   [&](const Fact& f) { return f.literal == lit; });
    if (taken) continue;
    const Weight w = chance(rng, shape.zero_weight_rate)
                         ? Weight::Zero()
                         : grid_weight(rng, shape.weight_steps);
    m.facts.push_back({lit, w});
  }

  const Variable x{"x", kObject};
  for (int r = 0; r < shape.rules; ++r) {
    Rule rule;
    const int premises = uniform(rng, 1, std::max(1, shape.max_premises));
    for (int i = 0; i < premises; ++i) {
      const auto& p = m.signature.predicates[uniform(
          rng, 0, static_cast<int>(m.signature.predicates.size()) - 1)];
      Literal lit;
      lit.predicate = p.name;
      for (std::size_t a = 0; a < p.arg_sorts.size(); ++a) {
        // The first argument of the first premise always binds x.
        const bool use_x = (i == 0 && a == 0) || chance(rng, 0.5);
        lit.args.push_back(use_x ? Term{x} : random_constant(rng, m));
      }
      lit.positive = !chance(rng, shape.negative_rate);
      lit.lower = Variable{"t" + std::to_string(i), kTimeSort};
      lit.upper = Variable{"u" + std::to_string(i), kTimeSort};
      rule.premises.push_back(lit);
    }
    const auto& c = m.signature.predicates[uniform(
        rng, 0, static_cast<int>(m.signature.predicates.size()) - 1)];
    rule.conclusion.predicate = c.name;
    for (std::size_t a = 0; a < c.arg_sorts.size(); ++a) {
      rule.conclusion.args.push_back(chance(rng, 0.7) ? Term{x}
                                                      : random_constant(rng, m));
    }
    rule.conclusion.positive = !chance(rng, shape.negative_rate);
    if (chance(rng, 0.5)) {
      rule.conclusion.lower = TimePoint{m.timeline.lower};
      rule.conclusion.upper = TimePoint{m.timeline.upper};
    } else {
      rule.conclusion.lower = rule.premises[0].lower;
      rule.conclusion.upper = rule.premises[0].upper;
    }
    const Weight w = shape.certain_rules ? Weight::One()
                                         : grid_weight(rng, shape.weight_steps);
    m.rules.push_back({"R" + std::to_string(r + 1), rule, w});
  }
  m.canonicalize();
  return m;
}

Tmln random_kb(Rng& rng, const KbShape& shape, std::size_t max_mi) {
  for (int attempt = 0; attempt < 10000; ++attempt) {
    Tmln m = random_kb(rng, shape);
    const std::size_t n = ground(m).size();
    if (n >= 1 && n <= max_mi) return m;
  }
  throw Error("random_kb: no KB within the MI bound after 10000 draws");
}

std::vector<Formula> random_formula_set(Rng& rng, std::size_t size) {
  std::vector<Literal> pool;
  std::vector<Formula> out;
  auto literal = [&] {
    Literal lit;
    lit.predicate = chance(rng, 0.5) ? "A" : "B";
    lit.args = {Constant{chance(rng, 0.5) ? "K" : "L"}};
    lit.positive = chance(rng, 0.5);
    const auto [a, b] = interval(rng, 0, 5);
    lit.lower = TimePoint{a};
    lit.upper = TimePoint{b};
    return lit;
  };
  while (out.size() < size) {
    if (!pool.empty() && chance(rng, 0.2)) {
      Rule r;
      r.premises.push_back(pool[uniform(rng, 0, static_cast<int>(pool.size()) - 1)]);
      r.conclusion = literal();
      out.push_back(r);
    } else {
      pool.push_back(literal());
      out.push_back(pool.back());
    }
  }
  return out;
}

Fact fresh_fact(Rng& rng, Tmln& m, Weight w) {
  std::string name = "Fresh";
  for (int i = 0; m.signature.find_predicate(name) != nullptr; ++i) {
    name = "Fresh" + std::to_string(i);
  }
  if (m.signature.constants.empty()) throw Error("fresh_fact: no constants");
  const auto& c = m.signature.constants[uniform(
      rng, 0, static_cast<int>(m.signature.constants.size()) - 1)];
  m.signature.predicates.push_back({name, {c.sort}});
  Literal lit;
  lit.predicate = name;
  lit.args = {Constant{c.name}};
  lit.positive = chance(rng, 0.5);
  const auto [a, b] = interval(rng, m.timeline.lower, m.timeline.upper);
  lit.lower = TimePoint{a};
  lit.upper = TimePoint{b};
  return {lit, w};
}

std::optional<Fact> tau_novel_fact(Rng& rng, const Tmln& m, int attempts) {
  for (int i = 0; i < attempts; ++i) {
    const Literal lit = random_literal(rng, m);
    if (!tau_entails(m, lit)) {
      return Fact{lit, grid_weight(rng, 10)};
    }
  }
  return std::nullopt;
}

std::vector<AuditSample> audit_samples(Rng& rng, const Tmln& m, std::size_t n) {
  const Instantiation mi = ground(m);
  Tmln fresh_kb = m;
  std::vector<AuditSample> out;
  while (out.size() < n) {
    AuditSample s;
    std::vector<std::size_t> outside;
    for (std::size_t i = 0; i < mi.size(); ++i) {
      if (chance(rng, 0.5)) {
        s.base.push_back(mi[i]);
      } else {
        outside.push_back(i);
      }
    }
    std::shuffle(s.base.begin(), s.base.end(), rng);

    std::vector<std::size_t> novel;
    for (std::size_t i : outside) {
      if (tau_novel(s.base, mi[i].formula, m.timeline)) novel.push_back(i);
    }
    if (!novel.empty() && chance(rng, 0.5)) {
      s.extension = mi[novel[uniform(rng, 0, static_cast<int>(novel.size()) - 1)]];
      s.extension.weight = grid_weight(rng, 10);
    } else {
      const Fact f = fresh_fact(rng, fresh_kb, grid_weight(rng, 10));
      s.extension = {f.literal, f.weight};
    }

    const int len = uniform(rng, 0, 5);
    for (int i = 0; i < len; ++i) s.tuple.push_back(grid_weight(rng, 20).value());
    s.permutation.resize(s.tuple.size());
    for (std::size_t i = 0; i < s.permutation.size(); ++i) s.permutation[i] = i;
    std::shuffle(s.permutation.begin(), s.permutation.end(), rng);
    s.y = grid_weight(rng, 20).value();
    s.z = grid_weight(rng, 20).value();
    if (s.y > s.z) std::swap(s.y, s.z);
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace tmln::gen
