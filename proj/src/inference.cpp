#include "tmln/inference.hpp"

#include <omp.h>

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <map>

namespace tmln {

std::size_t exhaustive_bound() {
  if (const char* env = std::getenv("TMLN_EXHAUSTIVE_BOUND")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) {
      return std::min<std::size_t>(static_cast<std::size_t>(v), kMaxSearchSize);
    }
  }
  return kDefaultExhaustiveBound;
}

bool same_result(const MapResult& a, const MapResult& b) {
  if (std::abs(a.strength - b.strength) > kTolerance) return false;
  if (a.maps.size() != b.maps.size()) return false;
  for (std::size_t i = 0; i < a.maps.size(); ++i) {
    if (a.maps[i].formulae != b.maps[i].formulae) return false;
  }
  return true;
}

CompiledInstance::CompiledInstance(const Instantiation& items)
    : items_(items) {
  if (items.size() > kMaxSearchSize) {
    throw Error("state too large for bitmask search: " +
                std::to_string(items.size()) + " formulae");
  }
  std::map<Literal, int> ids;
  auto intern = [&](const Literal& lit) {
    auto [it, inserted] = ids.emplace(lit, static_cast<int>(ids.size()));
    return it->second;
  };
  for (const auto& wf : items) {
    Compiled c;
    c.weight = wf.weight.value();
    if (const auto* lit = std::get_if<Literal>(&wf.formula)) {
      c.literal = intern(*lit);
    } else {
      const Rule& r = std::get<Rule>(wf.formula);
      c.is_rule = true;
      for (const auto& p : r.premises) c.premises.push_back(intern(p));
      c.conclusion = intern(r.conclusion);
    }
    formulae_.push_back(std::move(c));
  }
  literal_count_ = ids.size();
  for (const auto& [pos, pid] : ids) {
    if (!pos.positive) continue;
    for (const auto& [neg, nid] : ids) {
      if (neg.positive || neg.predicate != pos.predicate || neg.args != pos.args) {
        continue;
      }
      const TimeInterval a(pos.lower_time(), pos.upper_time());
      const TimeInterval b(neg.lower_time(), neg.upper_time());
      pairs_.push_back({pid, nid, classify_pair(a, b)});
    }
  }
}

std::uint64_t CompiledInstance::full_mask() const {
  return size() == 64 ? ~0ULL : ((1ULL << size()) - 1);
}

void CompiledInstance::closure(std::uint64_t mask, std::vector<char>& out) const {
  out.assign(literal_count_, 0);
  for (std::uint64_t m = mask; m != 0; m &= m - 1) {
    const Compiled& c = formulae_[std::countr_zero(m)];
    if (!c.is_rule) out[c.literal] = 1;
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::uint64_t m = mask; m != 0; m &= m - 1) {
      const Compiled& c = formulae_[std::countr_zero(m)];
      if (!c.is_rule || out[c.conclusion]) continue;
      bool fire = true;
      for (int p : c.premises) {
        if (!out[p]) {
          fire = false;
          break;
        }
      }
      if (fire) {
        out[c.conclusion] = 1;
        changed = true;
      }
    }
  }
}

RelationProfile CompiledInstance::profile(const std::vector<char>& cl) const {
  RelationProfile prof;
  for (const Pair& p : pairs_) {
    if (!cl[p.positive] || !cl[p.negative]) continue;
    if (p.shape.nested) prof.p_con = false;
    if (p.shape.overlap) {
      prof.t_con = false;
      prof.p_inc = true;
    }
    if (p.shape.equal) prof.t_inc = true;
  }
  return prof;
}

int CompiledInstance::delta(Relation x, std::uint64_t mask, Scratch& s) const {
  closure(mask, s.closure);
  return tmln::delta(x, profile(s.closure));
}

void CompiledInstance::select(const Selector& sigma, std::uint64_t mask,
                              Scratch& s, bool closure_ready) const {
  s.slots.clear();
  if (sigma.kind == SelectorKind::kRule && !closure_ready) {
    closure(mask, s.closure);
  }
  for (std::uint64_t m = mask; m != 0; m &= m - 1) {
    const int i = std::countr_zero(m);
    const Compiled& c = formulae_[i];
    switch (sigma.kind) {
      case SelectorKind::kId:
        s.slots.push_back(c.weight);
        break;
      case SelectorKind::kThresh:
        s.slots.push_back(std::max(c.weight - sigma.alpha, 0.0));
        break;
      case SelectorKind::kRule: {
        if (!c.is_rule) {
          s.slots.push_back(c.weight);
          break;
        }
        // Closure is monotone: a premise missing from the full closure is
        // missing from the closure of the others too.
        bool usable = true;
        for (int p : c.premises) usable = usable && s.closure[p];
        if (usable) {
          closure(mask & ~(1ULL << i), s.other);
          for (int p : c.premises) usable = usable && s.other[p];
        }
        s.slots.push_back(usable ? c.weight : 0.0);
        break;
      }
    }
  }
}

double CompiledInstance::potential(const ParametricSemantics& tps,
                                   std::uint64_t mask, Scratch& s) const {
  select(tps.sigma, mask, s);
  return aggregate(tps.theta, s.slots);
}

double CompiledInstance::strength(const ParametricSemantics& tps,
                                  std::uint64_t mask, Scratch& s) const {
  closure(mask, s.closure);
  if (tmln::delta(tps.delta, profile(s.closure)) == 0) return 0.0;
  select(tps.sigma, mask, s, true);
  return aggregate(tps.theta, s.slots);
}

Instantiation CompiledInstance::subset(std::uint64_t mask) const {
  Instantiation out;
  for (std::uint64_t m = mask; m != 0; m &= m - 1) {
    out.push_back(items_[std::countr_zero(m)]);
  }
  return out;
}

namespace {

struct Candidate {
  std::uint64_t mask;
  double value;
};

// Keeps the candidates within tolerance of the running best.
class Frontier {
 public:
  void offer(std::uint64_t mask, double value) {
    if (value < best_ - kTolerance) return;
    if (value > best_) {
      best_ = value;
      std::erase_if(items_,
                    [&](const Candidate& c) { return c.value < best_ - kTolerance; });
    }
    items_.push_back({mask, value});
  }
  void merge(const Frontier& o) {
    for (const auto& c : o.items_) offer(c.mask, c.value);
  }
  double best() const { return best_; }
  const std::vector<Candidate>& items() const { return items_; }

 private:
  double best_ = -1.0;
  std::vector<Candidate> items_;
};

MapResult finish(const CompiledInstance& ci, const ParametricSemantics& tps,
                 const Frontier& frontier, std::uint64_t evaluated) {
  std::vector<std::uint64_t> masks;
  for (const auto& c : frontier.items()) {
    if (c.value >= frontier.best() - kTolerance) masks.push_back(c.mask);
  }
  std::sort(masks.begin(), masks.end(), [](std::uint64_t a, std::uint64_t b) {
    const int pa = std::popcount(a), pb = std::popcount(b);
    return pa != pb ? pa > pb : a < b;
  });
  masks.erase(std::unique(masks.begin(), masks.end()), masks.end());
  std::vector<std::uint64_t> kept;
  for (std::uint64_t m : masks) {
    bool dominated = false;
    for (std::uint64_t k : kept) {
      if ((m & k) == m && m != k) {
        dominated = true;
        break;
      }
    }
    if (!dominated) kept.push_back(m);
  }
  MapResult out;
  out.strength = std::max(frontier.best(), 0.0);
  out.evaluated = evaluated;
  CompiledInstance::Scratch s;
  for (std::uint64_t m : kept) {
    MapEntry e;
    e.formulae = ci.subset(m);
    ci.select(tps.sigma, m, s);
    e.contributions = s.slots;
    out.maps.push_back(std::move(e));
  }
  std::sort(out.maps.begin(), out.maps.end(),
            [](const MapEntry& a, const MapEntry& b) {
              return a.formulae < b.formulae;
            });
  return out;
}

void check_bound(const Instantiation& mi, std::size_t bound) {
  if (mi.size() > bound) {
    throw Error("maximal instantiation has " + std::to_string(mi.size()) +
                " formulae, above the exhaustive bound " +
                std::to_string(bound) + "; use the pruned search");
  }
  if (mi.size() > kMaxSearchSize) throw Error("state too large");
}

}  // namespace

MapResult map_exhaustive(const Instantiation& mi,
                         const ParametricSemantics& tps, std::size_t bound) {
  check_bound(mi, bound);
  const CompiledInstance ci(mi);
  const std::uint64_t total = ci.full_mask() + 1;
  std::vector<Frontier> partial(static_cast<std::size_t>(omp_get_max_threads()));
#pragma omp parallel
  {
    CompiledInstance::Scratch s;
    Frontier& local = partial[static_cast<std::size_t>(omp_get_thread_num())];
#pragma omp for schedule(dynamic, 1024)
    for (std::uint64_t mask = 0; mask < total; ++mask) {
      local.offer(mask, ci.strength(tps, mask, s));
    }
  }
  Frontier all;
  for (const auto& f : partial) all.merge(f);
  return finish(ci, tps, all, total);
}

MapResult map_exhaustive_serial(const Instantiation& mi,
                                const ParametricSemantics& tps,
                                std::size_t bound) {
  check_bound(mi, bound);
  const CompiledInstance ci(mi);
  const std::uint64_t total = ci.full_mask() + 1;
  CompiledInstance::Scratch s;
  Frontier all;
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    all.offer(mask, ci.strength(tps, mask, s));
  }
  return finish(ci, tps, all, total);
}

MapResult map_exhaustive(const Tmln& m, const ParametricSemantics& tps,
                         std::size_t bound) {
  return map_exhaustive(ground(m), tps, bound);
}

namespace {

class BranchAndBound {
 public:
  BranchAndBound(const CompiledInstance& ci, const ParametricSemantics& tps)
      : ci_(ci), tps_(tps) {}

  void run() { visit(0, 0); }
  const Frontier& frontier() const { return frontier_; }
  std::uint64_t evaluated() const { return evaluated_; }

 private:
  void visit(std::size_t i, std::uint64_t in) {
    const std::uint64_t rest = ci_.full_mask() & ~((1ULL << i) - 1);
    const double best = frontier_.best();
    if (best > kTolerance) {
      // The optimistic value takes every undecided formula.
      if (ci_.potential(tps_, in | rest, s_) < best - kTolerance) return;
      // A violated pair persists in every superset.
      if (ci_.delta(tps_.delta, in, s_) == 0) return;
    }
    if (i == ci_.size()) {
      ++evaluated_;
      frontier_.offer(in, ci_.strength(tps_, in, s_));
      return;
    }
    visit(i + 1, in | (1ULL << i));
    visit(i + 1, in);
  }

  const CompiledInstance& ci_;
  const ParametricSemantics& tps_;
  CompiledInstance::Scratch s_;
  Frontier frontier_;
  std::uint64_t evaluated_ = 0;
};

}  // namespace

MapResult map_pruned(const Instantiation& mi, const ParametricSemantics& tps) {
  check_bound(mi, kMaxSearchSize);
  const CompiledInstance ci(mi);
  BranchAndBound bb(ci, tps);
  bb.run();
  return finish(ci, tps, bb.frontier(), bb.evaluated());
}

MapResult map_pruned(const Tmln& m, const ParametricSemantics& tps) {
  return map_pruned(ground(m), tps);
}

bool LiteralPattern::matches(const Literal& lit) const {
  if (lit.predicate != predicate) return false;
  if (positive && *positive != lit.positive) return false;
  if (args.size() != lit.args.size() + 2) return false;
  for (std::size_t i = 0; i < lit.args.size(); ++i) {
    if (args[i] && *args[i] != lit.args[i]) return false;
  }
  const auto& lo = args[lit.args.size()];
  const auto& hi = args[lit.args.size() + 1];
  return (!lo || *lo == lit.lower) && (!hi || *hi == lit.upper);
}

LiteralPattern parse_pattern(const std::string& text, const Timeline& timeline) {
  auto fail = [&](const std::string& why) -> LiteralPattern {
    throw Error("malformed pattern '" + text + "': " + why);
  };
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  }
  LiteralPattern p;
  std::size_t pos = 0;
  if (pos < s.size() && (s[pos] == '!' || s[pos] == '+')) {
    p.positive = s[pos] == '+';
    ++pos;
  }
  const auto open = s.find('(', pos);
  if (open == std::string::npos || s.back() != ')') {
    return fail("expected Pred(...)");
  }
  p.predicate = s.substr(pos, open - pos);
  if (p.predicate.empty() ||
      !std::isupper(static_cast<unsigned char>(p.predicate[0]))) {
    return fail("predicate must start with an uppercase letter");
  }
  for (char c : p.predicate) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') {
      return fail("bad predicate name");
    }
  }
  const std::string inner = s.substr(open + 1, s.size() - open - 2);
  std::vector<std::string> toks;
  std::size_t start = 0;
  while (true) {
    const auto comma = inner.find(',', start);
    toks.push_back(inner.substr(start, comma - start));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (toks.size() < 3) return fail("needs at least three arguments");
  for (std::size_t i = 0; i < toks.size(); ++i) {
    const std::string& t = toks[i];
    const bool is_bound = i + 2 >= toks.size();
    if (t.empty()) return fail("empty argument");
    if (t == "*") {
      p.args.push_back(std::nullopt);
    } else if (t == "TMIN" || t == "TMAX") {
      if (!is_bound) return fail(t + " outside a temporal position");
      p.args.push_back(TimePoint{t == "TMIN" ? timeline.lower : timeline.upper});
    } else if (std::isdigit(static_cast<unsigned char>(t[0])) || t[0] == '-') {
      if (!is_bound) return fail("time point outside a temporal position");
      char* end = nullptr;
      const long long v = std::strtoll(t.c_str(), &end, 10);
      if (*end != '\0') return fail("bad time point " + t);
      p.args.push_back(TimePoint{v});
    } else if (std::isupper(static_cast<unsigned char>(t[0]))) {
      if (is_bound) return fail("constant in a temporal position");
      p.args.push_back(Constant{t});
    } else {
      return fail("unexpected token " + t);
    }
  }
  return p;
}

std::vector<std::pair<Literal, Weight>> conclusions(
    const Instantiation& items, const LiteralPattern& pattern) {
  std::vector<std::pair<Literal, Weight>> out;
  for (const auto& [lit, w] : support_weights(items)) {
    if (pattern.matches(lit)) out.emplace_back(lit, w);
  }
  return out;
}

}  // namespace tmln
