#include "tmln/semantics.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>

namespace tmln {

Selector Selector::Thresh(double alpha) {
  if (!(alpha >= 0.0 && alpha < 1.0)) {
    throw Error("thresh alpha must lie in [0,1)");
  }
  return {SelectorKind::kThresh, alpha};
}

Aggregator Aggregator::SumAlpha(double alpha) {
  if (!(alpha >= 1.0)) throw Error("sum_alpha requires alpha >= 1");
  return {AggregatorKind::kSumAlpha, alpha};
}

std::string Selector::name() const {
  switch (kind) {
    case SelectorKind::kId: return "id";
    case SelectorKind::kThresh: return "thresh:" + FormatDecimal(alpha);
    case SelectorKind::kRule: return "rule";
  }
  return "?";
}

std::string Aggregator::name() const {
  switch (kind) {
    case AggregatorKind::kSum: return "sum";
    case AggregatorKind::kSumAlpha: return "sum_alpha:" + FormatDecimal(alpha);
    case AggregatorKind::kPsum: return "psum";
  }
  return "?";
}

std::string ParametricSemantics::name() const {
  return std::string("<") + relation_name(delta) + ", " + sigma.name() + ", " +
         theta.name() + ">";
}

namespace {

bool split_param(const std::string& text, std::string& head, double& value,
                 bool& has_value, std::string& error) {
  auto colon = text.find(':');
  head = text.substr(0, colon);
  has_value = colon != std::string::npos;
  if (!has_value) return true;
  const std::string num = text.substr(colon + 1);
  char* end = nullptr;
  value = std::strtod(num.c_str(), &end);
  if (num.empty() || end != num.c_str() + num.size() || !std::isfinite(value)) {
    error = "malformed parameter in '" + text + "'";
    return false;
  }
  return true;
}

}  // namespace

bool parse_selector(const std::string& text, Selector& out, std::string& error) {
  std::string head;
  double value = 0;
  bool has_value = false;
  if (!split_param(text, head, value, has_value, error)) return false;
  if (head == "id" && !has_value) {
    out = Selector::Id();
  } else if (head == "rule" && !has_value) {
    out = Selector::Rule();
  } else if (head == "thresh" && has_value) {
    if (!(value >= 0.0 && value < 1.0)) {
      error = "thresh alpha must lie in [0,1)";
      return false;
    }
    out = Selector::Thresh(value);
  } else {
    error = "unknown selector '" + text + "'";
    return false;
  }
  return true;
}

bool parse_aggregator(const std::string& text, Aggregator& out,
                      std::string& error) {
  std::string head;
  double value = 0;
  bool has_value = false;
  if (!split_param(text, head, value, has_value, error)) return false;
  if (head == "sum" && !has_value) {
    out = Aggregator::Sum();
  } else if (head == "psum" && !has_value) {
    out = Aggregator::Psum();
  } else if (head == "sum_alpha" && has_value) {
    if (!(value >= 1.0)) {
      error = "sum_alpha requires alpha >= 1";
      return false;
    }
    out = Aggregator::SumAlpha(value);
  } else {
    error = "unknown aggregator '" + text + "'";
    return false;
  }
  return true;
}

bool parse_validator(const std::string& text, Relation& out) {
  RelationKind k;
  if (!parse_relation(text, k) || k.negated) return false;
  out = k.relation;
  return true;
}

RelationKind con_of(Relation delta) {
  switch (delta) {
    case Relation::kTCon: return {Relation::kTCon, false};
    case Relation::kPCon: return {Relation::kPCon, false};
    case Relation::kPInc: return {Relation::kPInc, true};
    case Relation::kTInc: return {Relation::kTInc, true};
  }
  return {};
}

std::vector<ParametricSemantics> shipped_semantics() {
  std::vector<ParametricSemantics> out;
  for (Relation d : {Relation::kTCon, Relation::kPCon, Relation::kPInc,
                     Relation::kTInc}) {
    for (const Selector& s :
         {Selector::Id(), Selector::Thresh(0.3), Selector::Rule()}) {
      for (const Aggregator& a :
           {Aggregator::Sum(), Aggregator::SumAlpha(2.0), Aggregator::Psum()}) {
        out.push_back({d, s, a});
      }
    }
  }
  return out;
}

int delta(Relation x, const RelationProfile& profile) {
  switch (x) {
    case Relation::kPCon: return profile.p_con ? 1 : 0;
    case Relation::kTCon: return profile.t_con ? 1 : 0;
    case Relation::kPInc: return profile.p_inc ? 0 : 1;
    case Relation::kTInc: return profile.t_inc ? 0 : 1;
  }
  return 0;
}

int delta(Relation x, const Instantiation& items) {
  const auto formulae = tf(items);
  return delta(x, relation_profile(derive_closure(formulae)));
}

double aggregate(const Aggregator& theta, std::span<const double> weights) {
  for (double w : weights) {
    if (!(w >= 0.0 && w <= 1.0)) {
      throw Error("aggregate: weight " + FormatDecimal(w) + " outside [0,1]");
    }
  }
  switch (theta.kind) {
    case AggregatorKind::kSum: {
      double s = 0.0;
      for (double w : weights) s += w;
      return s;
    }
    case AggregatorKind::kSumAlpha: {
      if (!(theta.alpha >= 1.0)) throw Error("sum_alpha requires alpha >= 1");
      if (weights.empty()) return 0.0;
      double s = 0.0;
      for (double w : weights) s += std::pow(w, theta.alpha);
      return std::pow(s, 1.0 / theta.alpha);
    }
    case AggregatorKind::kPsum: {
      double acc = 0.0;
      for (double w : weights) acc = acc + w - acc * w;
      return acc;
    }
  }
  return 0.0;
}

std::vector<double> select(const Selector& sigma, const Instantiation& items) {
  std::vector<double> out;
  out.reserve(items.size());
  switch (sigma.kind) {
    case SelectorKind::kId:
      for (const auto& wf : items) out.push_back(wf.weight.value());
      break;
    case SelectorKind::kThresh:
      for (const auto& wf : items) {
        out.push_back(std::max(wf.weight.value() - sigma.alpha, 0.0));
      }
      break;
    case SelectorKind::kRule:
      for (std::size_t i = 0; i < items.size(); ++i) {
        const auto* rule = std::get_if<Rule>(&items[i].formula);
        if (rule == nullptr) {
          out.push_back(items[i].weight.value());
          continue;
        }
        std::vector<Formula> others;
        others.reserve(items.size() - 1);
        for (std::size_t j = 0; j < items.size(); ++j) {
          if (j != i) others.push_back(items[j].formula);
        }
        const LiteralSet closure = derive_closure(others);
        bool usable = true;
        for (const auto& p : rule->premises) {
          if (!closure.contains(p)) {
            usable = false;
            break;
          }
        }
        out.push_back(usable ? items[i].weight.value() : 0.0);
      }
      break;
  }
  return out;
}

double strength(const ParametricSemantics& tps, const Instantiation& items) {
  if (delta(tps.delta, items) == 0) return 0.0;
  const auto slots = select(tps.sigma, items);
  return aggregate(tps.theta, slots);
}

DeltaFn delta_fn(Relation x) {
  return [x](const Instantiation& items) { return delta(x, items); };
}

SigmaFn sigma_fn(const Selector& s) {
  return [s](const Instantiation& items) { return select(s, items); };
}

ThetaFn theta_fn(const Aggregator& a) {
  return [a](std::span<const double> w) { return aggregate(a, w); };
}

bool AuditReport::all_passed() const {
  for (const auto& c : conditions) {
    if (!c.passed) return false;
  }
  return true;
}

const ConditionResult* AuditReport::find(const std::string& name) const {
  for (const auto& c : conditions) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

bool tau_novel(const Instantiation& base, const Formula& phi,
               const Timeline& timeline) {
  const auto formulae = tf(base);
  return !entails_formula(tau(formulae, timeline), tau(phi, timeline));
}

namespace {

bool near(double a, double b) { return std::abs(a - b) <= kTolerance; }

bool same_tuple(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!near(a[i], b[i])) return false;
  }
  return true;
}

std::string show(std::span<const double> t) {
  std::string out = "(";
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i > 0) out += ", ";
    out += FormatDecimal(t[i]);
  }
  return out + ")";
}

std::string show(const Instantiation& items, const Timeline& timeline) {
  std::string out = "{";
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i > 0) out += "; ";
    out += render(items[i].formula, timeline) + " : " +
           items[i].weight.ToString();
  }
  return out + "}";
}

class Tally {
 public:
  explicit Tally(std::string name) { r_.name = std::move(name); }
  void check(bool ok, const std::function<std::string()>& why) {
    ++r_.applicable;
    if (!ok && r_.passed) {
      r_.passed = false;
      r_.counterexample = why();
    }
  }
  ConditionResult result() const { return r_; }

 private:
  ConditionResult r_;
};

}  // namespace

AuditReport audit_well_behaved(const DeltaFn& delta_f, const SigmaFn& sigma_f,
                               const ThetaFn& theta_f, RelationKind con,
                               std::span<const AuditSample> samples,
                               const Timeline& timeline) {
  AuditReport report;
  if (delta_f) {
    Tally a("Delta-(a)");
    for (const auto& s : samples) {
      for (const Instantiation* st : {&s.base}) {
        if (!relation_holds(con, tf(*st))) continue;
        const int d = delta_f(*st);
        a.check(d == 1, [&] {
          return "Delta = " + std::to_string(d) + " on consistent " +
                 show(*st, timeline);
        });
      }
      Instantiation ext = s.base;
      ext.push_back(s.extension);
      if (relation_holds(con, tf(ext))) {
        const int d = delta_f(ext);
        a.check(d == 1, [&] {
          return "Delta = " + std::to_string(d) + " on consistent " +
                 show(ext, timeline);
        });
      }
    }
    report.conditions.push_back(a.result());
  }
  if (theta_f) {
    Tally a("Theta-(a)"), b("Theta-(b)"), c("Theta-(c)"), d("Theta-(d)"),
        e("Theta-(e)");
    for (const auto& s : samples) {
      const double empty = theta_f({});
      a.check(near(empty, 0.0),
              [&] { return "Theta() = " + FormatDecimal(empty); });
      for (double w : s.tuple) {
        const double one[] = {w};
        const double v = theta_f(one);
        b.check(near(v, w), [&] {
          return "Theta(" + FormatDecimal(w) + ") = " + FormatDecimal(v);
        });
      }
      std::vector<double> permuted;
      for (std::size_t i : s.permutation) permuted.push_back(s.tuple[i]);
      const double t0 = theta_f(s.tuple);
      const double tp = theta_f(permuted);
      c.check(near(t0, tp), [&] {
        return "Theta" + show(s.tuple) + " = " + FormatDecimal(t0) +
               " but Theta" + show(permuted) + " = " + FormatDecimal(tp);
      });
      std::vector<double> padded = s.tuple;
      padded.push_back(0.0);
      const double tz = theta_f(padded);
      d.check(near(t0, tz), [&] {
        return "Theta" + show(s.tuple) + " = " + FormatDecimal(t0) +
               " but Theta" + show(padded) + " = " + FormatDecimal(tz);
      });
      std::vector<double> with_y = s.tuple, with_z = s.tuple;
      with_y.push_back(std::min(s.y, s.z));
      with_z.push_back(std::max(s.y, s.z));
      const double ty = theta_f(with_y);
      const double tzz = theta_f(with_z);
      e.check(ty <= tzz + kTolerance, [&] {
        return "Theta" + show(with_y) + " = " + FormatDecimal(ty) +
               " > Theta" + show(with_z) + " = " + FormatDecimal(tzz);
      });
    }
    for (const Tally* t : {&a, &b, &c, &d, &e}) {
      report.conditions.push_back(t->result());
    }
  }
  if (sigma_f) {
    Tally a("sigma-(a)"), b("sigma-(b)"), c("sigma-(c)"), d("sigma-(d)"),
        e("sigma-(e)");
    const auto none = sigma_f({});
    a.check(none.empty(), [&] { return "sigma() = " + show(none); });
    for (const auto& s : samples) {
      const auto base = sigma_f(s.base);
      if (!s.base.empty()) {
        b.check(!base.empty(), [&] {
          return "sigma" + show(s.base, timeline) + " is empty";
        });
      }
      bool present = false;
      for (const auto& wf : s.base) present |= wf.formula == s.extension.formula;
      if (present || !tau_novel(s.base, s.extension.formula, timeline)) continue;

      Instantiation zero = s.base;
      zero.push_back({s.extension.formula, Weight::Zero()});
      auto expect = base;
      expect.push_back(0.0);
      const auto got = sigma_f(zero);
      c.check(same_tuple(got, expect), [&] {
        return "sigma" + show(zero, timeline) + " = " + show(got) +
               ", expected " + show(expect);
      });

      Instantiation ext = s.base;
      ext.push_back(s.extension);
      if (!is_ground(s.extension.formula) || !relation_holds(con, tf(ext))) {
        continue;
      }
      const auto grown = sigma_f(ext);
      bool prefix = grown.size() > base.size();
      for (std::size_t i = 0; prefix && i < base.size(); ++i) {
        prefix = near(base[i], grown[i]);
      }
      d.check(prefix, [&] {
        return "sigma" + show(s.base, timeline) + " = " + show(base) +
               " is not a prefix of sigma after adding " +
               render(s.extension.formula, timeline) + " : " +
               s.extension.weight.ToString() + ", which is " + show(grown);
      });
      if (theta_f) {
        const double before = theta_f(base);
        const double after = theta_f(grown);
        e.check(before <= after + kTolerance, [&] {
          return "Theta(sigma" + show(s.base, timeline) +
                 ") = " + FormatDecimal(before) + " drops to " +
                 FormatDecimal(after) + " after adding " +
                 render(s.extension.formula, timeline);
        });
      }
    }
    for (const Tally* t : {&a, &b, &c, &d, &e}) {
      report.conditions.push_back(t->result());
    }
  }
  return report;
}

}  // namespace tmln
