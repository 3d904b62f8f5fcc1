#include "tmln/properties.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>

#include "tmln/kbformat.hpp"
#include "tmln/oracle.hpp"

namespace tmln::props {

namespace {

// Failure bookkeeping that keeps the smallest counterexample.
class Recorder {
 public:
  explicit Recorder(std::string name) { r_.name = std::move(name); }

  void trial() { ++r_.trials; }
  void checked() { ++r_.checked; }
  void fail(std::size_t size, const std::string& label,
            const std::function<std::string()>& describe) {
    ++r_.failures;
    if (std::find(r_.failing_labels.begin(), r_.failing_labels.end(), label) ==
        r_.failing_labels.end()) {
      r_.failing_labels.push_back(label);
    }
    if (size < best_size_) {
      best_size_ = size;
      r_.counterexample = describe();
    }
  }
  const SuiteResult& result() const { return r_; }

 private:
  SuiteResult r_;
  std::size_t best_size_ = static_cast<std::size_t>(-1);
};

std::string show_formulae(const std::vector<Formula>& fs) {
  std::string out = "{";
  for (std::size_t i = 0; i < fs.size(); ++i) {
    if (i) out += "; ";
    out += to_string(fs[i]);
  }
  return out + "}";
}

std::string show_state(const Instantiation& items, const Timeline& tl) {
  std::string out = "{";
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += "; ";
    out += render(items[i].formula, tl) + " : " + items[i].weight.ToString();
  }
  return out + "}";
}

std::string show_result(const MapResult& r, const Timeline& tl) {
  std::string out = "strength " + FormatDecimal(r.strength) + ", maps";
  for (const auto& m : r.maps) out += " " + show_state(m.formulae, tl);
  return out;
}

bool near(double a, double b) { return std::abs(a - b) <= kTolerance; }

Instantiation with(const Instantiation& items, const WeightedFormula& extra) {
  std::vector<WeightedFormula> v(items.begin(), items.end());
  v.push_back(extra);
  return make_instantiation(std::move(v));
}

bool is_strict_subset(const Instantiation& small, const Instantiation& big) {
  if (small.size() >= big.size()) return false;
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

constexpr std::array<Relation, 4> kRelations = {Relation::kTCon, Relation::kPInc,
                                                Relation::kPCon, Relation::kTInc};

}  // namespace

std::string summary_line(const SuiteResult& r) {
  std::string out = r.name + ": " + (r.passed() ? "pass" : "FAIL") + " (" +
                    std::to_string(r.trials) + " trials, " +
                    std::to_string(r.checked) + " checked, " +
                    std::to_string(r.failures) + " failures)";
  if (!r.failing_labels.empty()) {
    out += " in";
    for (const auto& l : r.failing_labels) out += " " + l;
  }
  return out;
}

std::vector<SuiteResult> relation_lattice(gen::Rng& rng, std::size_t sets) {
  Recorder comp("complementarity"), sub("subsumption"),
      inc("inclusion"), points("relations vs point sets");
  std::uniform_int_distribution<int> size(1, 8);
  for (std::size_t n = 0; n < sets; ++n) {
    const auto phi = gen::random_formula_set(rng, size(rng));
    const RelationProfile p = relation_profile(derive_closure(phi));
    const auto describe = [&] {
      return show_formulae(phi) + " tCon=" + std::to_string(p.t_con) +
             " pCon=" + std::to_string(p.p_con) + " pInc=" +
             std::to_string(p.p_inc) + " tInc=" + std::to_string(p.t_inc);
    };
    for (Recorder* r : {&comp, &sub, &inc, &points}) {
      r->trial();
      r->checked();
    }
    if (!(!p.t_con == p.p_inc && p.t_con == !p.p_inc)) {
      comp.fail(phi.size(), "tCon/pInc", describe);
    }
    if (p.p_con && p.t_inc) sub.fail(phi.size(), "pCon->!tInc", describe);
    if (!p.p_con && !p.p_inc) sub.fail(phi.size(), "!pCon->pInc", describe);
    if (!p.p_inc && !p.p_con) sub.fail(phi.size(), "!pInc->pCon", describe);
    // {tCon} = {!pInc} ⊆ {pCon} ⊆ {!tInc}; {tInc} ⊆ {!pCon} ⊆ {pInc} = {!tCon}
    const bool chain = (p.t_con == !p.p_inc) && (!p.t_con || p.p_con) &&
                       (!p.p_con || !p.t_inc) && (!p.t_inc || !p.p_con) &&
                       (p.p_con || p.p_inc) && (p.p_inc == !p.t_con);
    if (!chain) inc.fail(phi.size(), "chain", describe);
    const RelationProfile q = oracle::brute_profile(phi);
    if (p.t_con != q.t_con || p.p_con != q.p_con || p.p_inc != q.p_inc ||
        p.t_inc != q.t_inc) {
      points.fail(phi.size(), "profile", describe);
    }
  }
  return {comp.result(), sub.result(), inc.result(), points.result()};
}

std::vector<SuiteResult> principles(gen::Rng& rng, const PrincipleOptions& opt,
                                    const std::vector<ParametricSemantics>& configs) {
  // One recorder per principle and extension kind: index 0 extends with a
  // fresh predicate, index 1 with a tau-novel literal over existing ones.
  const char* kinds[2] = {" (fresh predicate)", " (existing predicate)"};
  std::vector<Recorder> p1, p2, p3;
  for (const char* k : kinds) {
    p1.emplace_back(std::string("principle: temporal neutrality") + k);
    p2.emplace_back(std::string("principle: consistency monotony") + k);
    p3.emplace_back(std::string("principle: invariant consistent facts") + k);
  }
  Recorder order("pointwise Delta order"), chain("optimal strength chain");
  std::bernoulli_distribution coin(0.5);

  for (std::size_t k = 0; k < opt.kbs; ++k) {
    const Tmln m = opt.fixed ? *opt.fixed : gen::random_kb(rng, opt.shape, opt.max_mi - 1);
    const Instantiation mi = ground(m);
    const Timeline& tl = m.timeline;

    // Weight-0 extensions of both kinds; the second only when a tau-novel
    // literal turns up.
    std::vector<std::pair<Tmln, Fact>> neutral;
    {
      Tmln a = m;
      const Fact f = gen::fresh_fact(rng, a);
      a.facts.push_back(f);
      a.canonicalize();
      neutral.emplace_back(std::move(a), f);
    }
    if (auto f = gen::tau_novel_fact(rng, m)) {
      Tmln b = m;
      f->weight = Weight::Zero();
      b.facts.push_back(*f);
      b.canonicalize();
      neutral.emplace_back(std::move(b), *f);
    }
    std::vector<Instantiation> neutral_mi;
    for (const auto& [n, f] : neutral) neutral_mi.push_back(ground(n));

    // Weighted extension for Principles 2 and 3, alternating kinds.
    Tmln mc = m;
    std::optional<Fact> phi;
    std::size_t kind = 0;
    if (coin(rng)) {
      phi = gen::tau_novel_fact(rng, m);
      if (phi) kind = 1;
    }
    if (!phi) phi = gen::fresh_fact(rng, mc, gen::grid_weight(rng, 10));
    mc.facts.push_back(*phi);
    mc.canonicalize();
    const Instantiation mc_mi = ground(mc);
    const WeightedFormula phi_wf{phi->literal, phi->weight};

    const auto kb_text = [&](const Tmln& x) { return "\n" + serialize(x); };

    std::map<std::string, std::array<std::optional<double>, 4>> by_pair;

    for (const auto& tps : configs) {
      const MapResult base = map_pruned(mi, tps);
      for (std::size_t i = 0; i < kRelations.size(); ++i) {
        if (kRelations[i] == tps.delta) {
          by_pair[tps.sigma.name() + " " + tps.theta.name()][i] = base.strength;
        }
      }

      for (std::size_t e = 0; e < neutral.size(); ++e) {
        Recorder& r = p1[e];
        r.trial();
        if (neutral_mi[e].size() > opt.max_extended_mi) continue;
        r.checked();
        const MapResult after = map_pruned(neutral_mi[e], tps);
        if (!near(after.strength, base.strength)) {
          r.fail(neutral_mi[e].size(), tps.name(), [&] {
            return tps.name() + " adding " + render(neutral[e].second.literal, tl) +
                   " : 0\nbefore: " + show_result(base, tl) +
                   "\nafter: " + show_result(after, tl) + kb_text(m);
          });
        }
      }

      const RelationKind con = con_of(tps.delta);
      bool consistent = true, reinstated = true;
      for (const auto& entry : base.maps) {
        auto formulae = tf(entry.formulae);
        formulae.push_back(phi->literal);
        consistent = consistent && relation_holds(con, formulae);
        reinstated = reinstated &&
                     is_strict_subset(entry.formulae,
                                      reinstantiate(with(entry.formulae, phi_wf)));
      }
      p2[kind].trial();
      p3[kind].trial();
      if (!consistent || mc_mi.size() > opt.max_extended_mi) continue;
      const MapResult after = map_pruned(mc_mi, tps);
      const auto describe = [&](const std::string& what) {
        return tps.name() + " adding " + render(phi->literal, tl) + " : " +
               phi->weight.ToString() + "\n" + what + "\nbefore: " +
               show_result(base, tl) + "\nafter: " + show_result(after, tl) +
               kb_text(m);
      };
      if (reinstated) {
        p2[kind].checked();
        if (after.strength < base.strength - kTolerance) {
          p2[kind].fail(mc_mi.size(), tps.name(),
                        [&] { return describe("strength drops"); });
        }
      }
      p3[kind].checked();
      for (const auto& entry : base.maps) {
        const Instantiation want = with(entry.formulae, phi_wf);
        const bool found = std::any_of(
            after.maps.begin(), after.maps.end(),
            [&](const MapEntry& x) { return x.formulae == want; });
        if (!found) {
          p3[kind].fail(mc_mi.size(), tps.name(), [&] {
            return describe(show_state(want, tl) + " is not a MAP");
          });
          break;
        }
      }
    }

    // Pointwise order on random states of MI(M).
    std::uniform_int_distribution<std::uint64_t> pick(0, (1ULL << mi.size()) - 1);
    for (int s = 0; s < 16; ++s) {
      const std::uint64_t mask = pick(rng);
      Instantiation state;
      for (std::size_t i = 0; i < mi.size(); ++i) {
        if (mask & (1ULL << i)) state.push_back(mi[i]);
      }
      order.trial();
      order.checked();
      const int tcon = delta(Relation::kTCon, state);
      const int pinc = delta(Relation::kPInc, state);
      const int pcon = delta(Relation::kPCon, state);
      const int tinc = delta(Relation::kTInc, state);
      if (!(tcon == pinc && pinc <= pcon && pcon <= tinc)) {
        order.fail(state.size(), "Delta", [&] {
          return show_state(state, tl) + " tCon=" + std::to_string(tcon) +
                 " pInc=" + std::to_string(pinc) + " pCon=" +
                 std::to_string(pcon) + " tInc=" + std::to_string(tinc);
        });
      }
    }

    for (const auto& [pair, s] : by_pair) {
      chain.trial();
      if (!(s[0] && s[1] && s[2] && s[3])) continue;
      chain.checked();
      const bool ok = near(*s[0], *s[1]) && *s[1] <= *s[2] + kTolerance &&
                      *s[2] <= *s[3] + kTolerance;
      if (!ok) {
        chain.fail(mi.size(), pair, [&] {
          return pair + ": tCon " + FormatDecimal(*s[0]) + ", pInc " +
                 FormatDecimal(*s[1]) + ", pCon " + FormatDecimal(*s[2]) +
                 ", tInc " + FormatDecimal(*s[3]) + kb_text(m);
        });
      }
    }
  }
  std::vector<SuiteResult> out;
  for (const auto* group : {&p1, &p2, &p3}) {
    for (const auto& r : *group) out.push_back(r.result());
  }
  out.push_back(order.result());
  out.push_back(chain.result());
  return out;
}

std::vector<SuiteResult> oracle_equivalence(
    gen::Rng& rng, std::size_t kbs, std::size_t max_mi,
    const std::vector<ParametricSemantics>& configs) {
  Recorder maps("MAP pruned = exhaustive = serial = brute"),
      weights("W = brute_weight"), grounding("ground = brute_ground");
  gen::KbShape shape;
  std::uniform_int_distribution<int> facts(2, 7), rules(1, 3);
  for (std::size_t k = 0; k < kbs; ++k) {
    shape.facts = facts(rng);
    shape.rules = rules(rng);
    const Tmln m = gen::random_kb(rng, shape, max_mi);
    const Instantiation mi = ground(m);
    const Timeline& tl = m.timeline;
    const auto& tps = configs[k % configs.size()];

    maps.trial();
    maps.checked();
    const MapResult brute = oracle::brute_map(mi, tps);
    const MapResult exhaustive = map_exhaustive(mi, tps);
    const MapResult serial = map_exhaustive_serial(mi, tps);
    const MapResult pruned = map_pruned(mi, tps);
    if (!same_result(brute, exhaustive) || !same_result(brute, serial) ||
        !same_result(brute, pruned)) {
      maps.fail(mi.size(), tps.name(), [&] {
        return tps.name() + "\nbrute: " + show_result(brute, tl) +
               "\nexhaustive: " + show_result(exhaustive, tl) +
               "\nserial: " + show_result(serial, tl) +
               "\npruned: " + show_result(pruned, tl) + "\n" + serialize(m);
      });
    }

    grounding.trial();
    grounding.checked();
    const Instantiation bg = oracle::brute_ground(m);
    if (bg != mi) {
      grounding.fail(mi.size(), "ground", [&] {
        return "brute " + show_state(bg, tl) + "\nengine " + show_state(mi, tl) +
               "\n" + serialize(m);
      });
    }

    for (const auto& [lit, w] : support_weights(mi)) {
      weights.trial();
      weights.checked();
      const Weight engine = weight_of(lit, m);
      const Weight brute_w = oracle::brute_weight(lit, m);
      if (engine != brute_w) {
        weights.fail(mi.size(), "W", [&] {
          return render(lit, tl) + ": engine " + engine.ToString() + ", brute " +
                 brute_w.ToString() + "\n" + serialize(m);
        });
      }
    }
  }
  return {maps.result(), weights.result(), grounding.result()};
}

std::vector<SuiteResult> classical_agreement(gen::Rng& rng, std::size_t kbs,
                                             std::size_t max_mi) {
  Recorder all("<tInc, id, sum> = classical MAP"),
      facts_only("<tInc, id, sum> strength = fact-only classical optimum");
  gen::KbShape shape;
  shape.certain_rules = true;
  const ParametricSemantics tps{Relation::kTInc, Selector::Id(), Aggregator::Sum()};
  for (std::size_t k = 0; k < kbs; ++k) {
    const Tmln m = gen::random_kb(rng, shape, max_mi);
    const Instantiation mi = ground(m);
    const Timeline& tl = m.timeline;
    const MapResult ours = map_pruned(mi, tps);
    const MapResult classical = oracle::classical_map(mi);
    all.trial();
    all.checked();
    if (!same_result(ours, classical)) {
      all.fail(mi.size(), "classical", [&] {
        return "tps: " + show_result(ours, tl) + "\nclassical: " +
               show_result(classical, tl) + "\n" + serialize(m);
      });
    }
    facts_only.trial();
    facts_only.checked();
    const double fo = oracle::classical_fact_optimum(mi);
    if (!near(fo, ours.strength)) {
      facts_only.fail(mi.size(), "fact-only", [&] {
        return "tps strength " + FormatDecimal(ours.strength) +
               ", fact-only classical optimum " + FormatDecimal(fo) + "\n" +
               show_result(ours, tl) + "\n" + serialize(m);
      });
    }
  }
  return {all.result(), facts_only.result()};
}

std::vector<SuiteResult> format_roundtrip(gen::Rng& rng, std::size_t kbs) {
  Recorder trip("parse(serialize(M)) = M"), spans("diagnostic spans");
  gen::KbShape shape;
  std::uniform_int_distribution<int> facts(0, 8), rules(0, 3), args(1, 3);
  for (std::size_t k = 0; k < kbs; ++k) {
    shape.facts = facts(rng);
    shape.rules = rules(rng);
    shape.max_args = args(rng);
    Tmln m = gen::random_kb(rng, shape);
    canonicalize_all(m);
    const std::string text = serialize(m);
    trip.trial();
    trip.checked();
    const ParseResult back = parse(text);
    if (!back.ok() || !(*back.kb == m) || serialize(*back.kb) != text) {
      trip.fail(text.size(), "roundtrip", [&] {
        std::string d;
        for (const auto& x : back.diagnostics) d += format_diagnostic(x, "kb") + "\n";
        return text + d;
      });
    }

    // Damage one line and check that every diagnostic points inside it.
    std::string broken = text;
    std::uniform_int_distribution<std::size_t> at(0, broken.size() - 1);
    const std::size_t pos = at(rng);
    static const char* kJunk[] = {"(", ")", " : 2", "&", "=> ", "!!", "x", "{"};
    std::uniform_int_distribution<int> junk(0, 7);
    broken.insert(pos, kJunk[junk(rng)]);
    const ParseResult damaged = parse(broken);
    spans.trial();
    spans.checked();
    for (const auto& d : damaged.diagnostics) {
      bool ok = d.span.begin <= d.span.end && d.span.end <= broken.size() &&
                d.span.line >= 1 && d.span.column >= 1;
      if (ok) {
        const std::size_t line_start =
            d.span.begin == 0 ? 0 : broken.rfind('\n', d.span.begin - 1);
        const std::size_t start = line_start == std::string::npos ? 0
                                  : d.span.begin == 0         ? 0
                                                              : line_start + 1;
        const std::size_t line =
            1 + std::count(broken.begin(), broken.begin() + d.span.begin, '\n');
        ok = line == d.span.line && d.span.column == d.span.begin - start + 1;
      }
      if (!ok) {
        spans.fail(broken.size(), "span", [&] {
          return format_diagnostic(d, "kb") + " offsets " +
                 std::to_string(d.span.begin) + ".." + std::to_string(d.span.end) +
                 "\n" + broken;
        });
        break;
      }
    }
    if (damaged.ok() == false && damaged.diagnostics.empty()) {
      spans.fail(broken.size(), "silent", [&] { return "no diagnostics\n" + broken; });
    }
  }
  return {trip.result(), spans.result()};
}

AuditCorpus audit_corpus(gen::Rng& rng, std::size_t samples) {
  AuditCorpus c;
  gen::KbShape shape;
  c.timeline = {0, shape.horizon};
  while (c.samples.size() < samples) {
    const Tmln m = gen::random_kb(rng, shape, 10);
    for (auto& s : gen::audit_samples(rng, m, 10)) c.samples.push_back(std::move(s));
  }
  c.samples.resize(samples);
  return c;
}

std::vector<AuditRun> audit_shipped(const AuditCorpus& corpus) {
  std::vector<AuditRun> out;
  const std::vector<Selector> sigmas = {Selector::Id(), Selector::Thresh(0.3),
                                        Selector::Rule()};
  const std::vector<Aggregator> thetas = {Aggregator::Sum(), Aggregator::SumAlpha(2),
                                          Aggregator::Psum()};
  for (Relation x : kRelations) {
    out.push_back({std::string("Delta_") + relation_name(x),
                   audit_well_behaved(delta_fn(x), nullptr, nullptr, con_of(x),
                                      corpus.samples, corpus.timeline)});
  }
  for (Relation x : kRelations) {
    const RelationKind con = con_of(x);
    for (const auto& s : sigmas) {
      for (const auto& t : thetas) {
        out.push_back({"<" + s.name() + ", " + t.name() + "> under " +
                           relation_name(con),
                       audit_well_behaved(nullptr, sigma_fn(s), theta_fn(t), con,
                                          corpus.samples, corpus.timeline)});
      }
    }
  }
  return out;
}

namespace {

struct Plan {
  std::string condition;
  std::string mutant;
  DeltaFn delta;
  SigmaFn sigma;
  ThetaFn theta;
};

std::vector<Plan> plans() {
  const ThetaFn sum = theta_fn(Aggregator::Sum());
  const SigmaFn id = sigma_fn(Selector::Id());
  auto total = [](std::span<const double> w) {
    double s = 0;
    for (double x : w) s += x;
    return s;
  };

  return {
      {"Delta-(a)", "Delta always 0", [](const Instantiation&) { return 0; }, nullptr,
       nullptr},
      {"Theta-(a)", "sum + 1", nullptr, nullptr,
       [=](std::span<const double> w) { return total(w) + 1.0; }},
      {"Theta-(b)", "sum - 1", nullptr, nullptr,
       [=](std::span<const double> w) { return total(w) - 1.0; }},
      {"Theta-(c)", "position-weighted sum", nullptr, nullptr,
       [](std::span<const double> w) {
         double s = 0;
         for (std::size_t i = 0; i < w.size(); ++i) s += w[i] * (1.0 + 0.1 * i);
         return s;
       }},
      {"Theta-(d)", "sum + 0.1 per entry", nullptr, nullptr,
       [=](std::span<const double> w) { return total(w) + 0.1 * w.size(); }},
      {"Theta-(e)", "sum of w(1-w)", nullptr, nullptr,
       [](std::span<const double> w) {
         double s = 0;
         for (double x : w) s += x * (1.0 - x);
         return s;
       }},
      {"sigma-(a)", "empty state gives (0)", nullptr,
       [=](const Instantiation& items) {
         return items.empty() ? std::vector<double>{0.0} : id(items);
       },
       sum},
      {"sigma-(b)", "always ()", nullptr,
       [](const Instantiation&) { return std::vector<double>{}; }, sum},
      {"sigma-(c)", "weight 0 becomes 0.1", nullptr,
       [=](const Instantiation& items) {
         auto v = id(items);
         for (double& x : v) {
           if (x == 0.0) x = 0.1;
         }
         return v;
       },
       sum},
      {"sigma-(d)", "reversed order", nullptr,
       [=](const Instantiation& items) {
         auto v = id(items);
         std::reverse(v.begin(), v.end());
         return v;
       },
       sum},
      {"sigma-(e)", "w / |I|", nullptr,
       [=](const Instantiation& items) {
         auto v = id(items);
         for (double& x : v) x /= static_cast<double>(v.size());
         return v;
       },
       sum},
  };

}

AuditReport run_plan(const Plan& p, const AuditCorpus& corpus) {
  return audit_well_behaved(p.delta, p.sigma, p.theta, con_of(Relation::kTInc),
                            corpus.samples, corpus.timeline);
}

}  // namespace

std::vector<std::string> mutant_names() {
  std::vector<std::string> out;
  for (const auto& p : plans()) out.push_back(p.condition);
  return out;
}

AuditReport audit_mutant(const std::string& condition, const AuditCorpus& corpus) {
  for (const auto& p : plans()) {
    if (p.condition == condition) return run_plan(p, corpus);
  }
  throw Error("unknown mutant '" + condition + "'");
}

std::vector<MutantRun> audit_mutants(const AuditCorpus& corpus) {
  std::vector<MutantRun> out;
  for (const auto& p : plans()) {
    const AuditReport r = run_plan(p, corpus);
    const ConditionResult* c = r.find(p.condition);
    out.push_back({p.condition, p.mutant, c != nullptr && !c->passed});
  }
  return out;
}

}  // namespace tmln::props
