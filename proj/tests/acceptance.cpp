// Acceptance criteria 1-10. `tmln_acceptance --criterion N` runs one and
// exits 0 iff it passes; without arguments every criterion runs.

#include <chrono>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <iostream>
#include <set>

#include "support.hpp"
#include "tmln/properties.hpp"
#include "tmln/report.hpp"

using namespace tmln;

namespace {

constexpr std::uint64_t kSeed = 20240601;
constexpr double kStrengthTolerance = 1e-9;

constexpr double kGroundSeconds = 1.0;
constexpr double kSweepSeconds = 10.0;
constexpr double kLatticeSeconds = 30.0;
constexpr double kPrincipleSeconds = 300.0;

constexpr std::size_t kLatticeSets = 1000;
constexpr std::size_t kAuditSamples = 1000;
constexpr std::size_t kPrincipleKbs = 200;
constexpr std::size_t kPrincipleMaxMi = 12;
constexpr std::size_t kOracleKbs = 500;
constexpr std::size_t kOracleMaxMi = 14;
constexpr std::size_t kClassicalKbs = 200;
constexpr std::size_t kFormatKbs = 200;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += "\n    " + what;
    }
  }
};

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

void require_suites(Outcome& o, const std::vector<props::SuiteResult>& suites) {
  for (const auto& s : suites) {
    o.require(s.passed(), props::summary_line(s) + "\n      " + s.counterexample);
  }
}

std::string seconds_note(double s) { return " (" + FormatDecimal(std::round(s * 1000) / 1000) + " s)"; }

// 1. Ground rule weights of the Oresme KB, as printed by `ground`.
Outcome grounding() {
  Outcome o;
  const Stopwatch clock;
  const Tmln m = testing::oresme();
  const std::string text = report::ground_text(m, ground(m));
  const double t = clock.seconds();
  const std::string body =
      "Person(NO, 1320, 1382) & LivePeriod(NO, MA, 1320, 1382) & Studied(NO, CoN, ";
  const std::vector<std::string> want = {
      "rule { " + body + "1340, 1354) => PeasantFamily(NO, TMIN, TMAX) } : 0.4",
      "rule { " + body + "1355, 1360) => PeasantFamily(NO, TMIN, TMAX) } : 0.5",
      "rule { Philosopher(NO, 1320, 1382) & LivePeriod(NO, MA, 1320, 1382) => "
      "!PeasantFamily(NO, TMIN, TMAX) } : 0.8",
  };
  std::size_t rules = 0;
  for (std::size_t p = text.find("rule "); p != std::string::npos; p = text.find("rule ", p + 1)) ++rules;
  o.require(rules == 3, "expected 3 ground rules, got " + std::to_string(rules));
  for (const auto& line : want) o.require(text.find(line + "\n") != std::string::npos, "missing: " + line);
  o.require(t < kGroundSeconds, "took" + seconds_note(t));
  o.detail = "GR11 0.4, GR12 0.5, GR2 0.8" + seconds_note(t) + o.detail;
  return o;
}

struct TableRow {
  const char* config;
  std::vector<std::set<std::string>> maps;  // labels, F1-F3 and zero-contribution omitted
  const char* conclusion;
  const char* weight;
};

// The twelve rows of the TPS example table.
const std::vector<TableRow> kTable = {
    {"<tCon, id, sum>", {{"F6", "GR11", "GR12", "GR2"}}, "!PeasantFamily(NO, TMIN, TMAX)", "0.8"},
    {"<pCon, id, sum>", {{"F4", "F6", "GR12", "GR2"}}, "!PeasantFamily(NO, TMIN, TMAX)", "0.8"},
    {"<tInc, id, sum>", {{"F4", "F5", "F6", "GR11", "GR12"}}, "PeasantFamily(NO, TMIN, TMAX)", "0.5"},
    {"<tCon, id, sum_alpha:2>", {{"F6", "GR11", "GR12", "GR2"}}, "!PeasantFamily(NO, TMIN, TMAX)", "0.8"},
    {"<pCon, id, sum_alpha:2>", {{"F4", "F6", "GR12", "GR2"}}, "!PeasantFamily(NO, TMIN, TMAX)", "0.8"},
    {"<tInc, id, sum_alpha:2>",
     {{"F4", "F5", "F6", "GR2"}, {"F5", "F6", "GR11", "GR2"}},
     "!PeasantFamily(NO, TMIN, TMAX)",
     "0.8"},
    {"<tCon, rule, sum>", {{"F4", "F5", "GR11", "GR12"}}, "PeasantFamily(NO, TMIN, TMAX)", "0.5"},
    {"<pCon, rule, sum>", {{"F4", "F6", "GR2"}}, "!PeasantFamily(NO, TMIN, TMAX)", "0.8"},
    {"<tInc, rule, sum>", {{"F4", "F5", "F6", "GR11", "GR12"}}, "PeasantFamily(NO, TMIN, TMAX)", "0.5"},
    {"<tCon, rule, sum_alpha:2>", {{"F6", "GR2"}}, "!PeasantFamily(NO, TMIN, TMAX)", "0.8"},
    {"<pCon, rule, sum_alpha:2>", {{"F4", "F6", "GR2"}}, "!PeasantFamily(NO, TMIN, TMAX)", "0.8"},
    {"<tInc, rule, sum_alpha:2>", {{"F4", "F5", "F6", "GR2"}}, "!PeasantFamily(NO, TMIN, TMAX)", "0.8"},
};

std::string show(const std::vector<std::set<std::string>>& maps) {
  std::string out = "{";
  for (const auto& m : maps) {
    out += out.size() > 1 ? ", {" : "{";
    std::string sep;
    for (const auto& l : m) {
      out += sep + l;
      sep = ",";
    }
    out += "}";
  }
  return out + "}";
}

// 2. The bundled sweep against the golden file and the transcribed table.
Outcome table_reproduction() {
  Outcome o;
  const Stopwatch clock;
  const Tmln m = testing::oresme();
  const Instantiation mi = ground(m);
  const auto labels = testing::oresme_labels(m);
  std::map<WeightedFormula, std::string> label_of;
  for (const auto& [name, wf] : labels) label_of[wf] = name;

  const auto configs = report::parse_sweep(testing::read_text(testing::data_path("table3.sweep")));
  report::MapOptions opt;
  opt.query = parse_pattern("PeasantFamily(*,*,*)", m.timeline);

  std::string text;
  std::size_t matched = 0;
  o.require(configs.size() == kTable.size(), "sweep file does not list 12 configs");
  for (std::size_t i = 0; i < configs.size() && i < kTable.size(); ++i) {
    const MapResult r = map_exhaustive(mi, configs[i]);
    if (i > 0) text += "\n";
    text += report::map_text(m, configs[i], r, opt);

    const TableRow& row = kTable[i];
    std::vector<std::set<std::string>> got;
    bool conclusion_everywhere = !r.maps.empty();
    for (const auto& e : r.maps) {
      std::set<std::string> shown;
      for (std::size_t k = 0; k < e.formulae.size(); ++k) {
        if (report::shown(e, k)) shown.insert(label_of.at(e.formulae[k]));
      }
      got.push_back(shown);
      bool has = false;
      for (const auto& [lit, w] : conclusions(e.formulae, *opt.query)) {
        has = has || (render(lit, m.timeline) == row.conclusion && w.ToString() == row.weight);
      }
      conclusion_everywhere = conclusion_everywhere && has;
    }
    std::vector<std::set<std::string>> want = row.maps;
    std::sort(got.begin(), got.end());
    std::sort(want.begin(), want.end());
    const bool ok = configs[i].name() == row.config && got == want && conclusion_everywhere;
    matched += ok;
    o.require(ok, std::string("row ") + std::to_string(i + 1) + " " + row.config + ": table " +
                      show(want) + " (" + row.conclusion + ", " + row.weight + "), engine " +
                      show(got) + " strength " + FormatDecimal(r.strength));
  }
  const double t = clock.seconds();
  const std::string golden = testing::read_text(std::string(TMLN_GOLDEN_DIR) + "/table3_sweep.txt");
  o.require(text == golden, "sweep output differs from tests/golden/table3_sweep.txt");
  o.require(t < kSweepSeconds, "took" + seconds_note(t));
  o.detail = std::to_string(matched) + "/12 rows match the table, golden " +
             (text == golden ? "identical" : "differs") + seconds_note(t) + o.detail;
  return o;
}

// 3. CN(P(a) & P(b)) as two facts closes to exactly {P(a), P(b)}.
Outcome cn_examples() {
  Outcome o;
  const Literal pa = testing::lit("P", {"A"}, 0, 0), pb = testing::lit("P", {"B"}, 0, 0);
  const std::vector<Formula> both{pa, pb};
  o.require(derive_closure(both) == LiteralSet{pa, pb}, "closure of {P(a), P(b)}");
  const std::vector<Formula> one{pa};
  o.require(derive_closure(one) == LiteralSet{pa}, "closure of {P(a)}");
  o.require(entails(both, pa) && entails(both, pb), "each conjunct is entailed");
  o.require(!entails(one, pb), "P(b) not entailed by P(a)");
  o.detail = "CN{P(a),P(b)} = {P(a),P(b)}" + o.detail;
  return o;
}

// 4. Complementarity, subsumption, inclusion on random formula sets.
Outcome lattice() {
  Outcome o;
  const Stopwatch clock;
  gen::Rng rng(kSeed);
  const auto suites = props::relation_lattice(rng, kLatticeSets);
  require_suites(o, suites);
  const double t = clock.seconds();
  o.require(t < kLatticeSeconds, "took" + seconds_note(t));
  o.detail = std::to_string(kLatticeSets) + " sets x " + std::to_string(suites.size()) + " suites" +
             seconds_note(t) + o.detail;
  return o;
}

// 5. Every shipped component against the condition list, and the mutants.
Outcome well_behavedness() {
  Outcome o;
  gen::Rng rng(kSeed);
  const auto corpus = props::audit_corpus(rng, kAuditSamples);
  std::size_t checked = 0, failed = 0;
  std::set<std::string> reported;
  for (const auto& run : props::audit_shipped(corpus)) {
    for (const auto& c : run.report.conditions) {
      ++checked;
      if (c.passed) continue;
      ++failed;
      const std::string key = run.label + " " + c.name;
      if (reported.insert(c.name + c.counterexample).second) {
        o.require(false, key + ": " + c.counterexample);
      } else {
        o.require(false, key);
      }
    }
  }
  std::size_t detected = 0;
  const auto mutants = props::audit_mutants(corpus);
  for (const auto& m : mutants) {
    detected += m.detected;
    o.require(m.detected, "mutant not detected: " + m.mutant + " (" + m.condition + ")");
  }
  o.detail = std::to_string(corpus.samples.size()) + " samples, " + std::to_string(checked - failed) +
             "/" + std::to_string(checked) + " condition checks pass, " + std::to_string(detected) +
             "/" + std::to_string(mutants.size()) + " mutants detected" + o.detail;
  return o;
}

std::vector<props::SuiteResult> principle_run() {
  gen::Rng rng(kSeed);
  props::PrincipleOptions opt;
  opt.kbs = kPrincipleKbs;
  opt.max_mi = kPrincipleMaxMi;
  return props::principles(rng, opt, shipped_semantics());
}

bool is_principle(const props::SuiteResult& s) { return s.name.rfind("principle:", 0) == 0; }

// 6. Temporal Neutrality, Consistency Monotony, Invariant Consistent Facts.
Outcome principles() {
  Outcome o;
  const Stopwatch clock;
  const auto suites = principle_run();
  std::vector<props::SuiteResult> selected;
  for (const auto& s : suites) {
    if (is_principle(s)) selected.push_back(s);
  }
  require_suites(o, selected);
  const double t = clock.seconds();
  o.require(t < kPrincipleSeconds, "took" + seconds_note(t));
  o.detail = std::to_string(kPrincipleKbs) + " KBs x 36 configs" + seconds_note(t) + o.detail;
  return o;
}

// 7. Pointwise Delta order and the optimal-strength chain on the same KBs.
Outcome strength_ordering() {
  Outcome o;
  std::vector<props::SuiteResult> selected;
  for (const auto& s : principle_run()) {
    if (!is_principle(s)) selected.push_back(s);
  }
  require_suites(o, selected);
  o.require(selected.size() == 2, "expected the order and chain suites");
  std::size_t checks = 0;
  for (const auto& s : selected) checks += s.checked;
  o.detail = std::to_string(checks) + " checks" + o.detail;
  return o;
}

// 8. Pruned = exhaustive = serial = brute force, W = brute W, MI = brute MI.
Outcome oracle_equivalence() {
  Outcome o;
  gen::Rng rng(kSeed);
  const auto suites = props::oracle_equivalence(rng, kOracleKbs, kOracleMaxMi, shipped_semantics());
  require_suites(o, suites);
  std::string counts;
  for (const auto& s : suites) counts += (counts.empty() ? "" : ", ") + s.name + " " + std::to_string(s.checked);
  o.detail = std::to_string(kOracleKbs) + " KBs: " + counts + o.detail;
  return o;
}

// 9. With certain rules, <tInc, id, sum> equals the classical MAP.
Outcome classical() {
  Outcome o;
  gen::Rng rng(kSeed);
  const auto suites = props::classical_agreement(rng, kClassicalKbs, kOracleMaxMi);
  require_suites(o, {suites.at(0)});
  o.detail = std::to_string(suites[0].checked) + " KBs, strength tolerance " +
             FormatDecimal(kStrengthTolerance) + "; fact-only scoring differs on " +
             std::to_string(suites.at(1).failures) + o.detail;
  return o;
}

// 10. parse(serialize(M)) == M and in-document diagnostic spans.
Outcome format_roundtrip() {
  Outcome o;
  const Tmln m = testing::oresme();
  const ParseResult again = parse(serialize(m));
  o.require(again.ok() && *again.kb == m, "Oresme round trip");
  gen::Rng rng(kSeed);
  const auto suites = props::format_roundtrip(rng, kFormatKbs);
  require_suites(o, suites);
  o.detail = "Oresme + " + std::to_string(kFormatKbs) + " random KBs" + o.detail;
  return o;
}

struct Criterion {
  const char* name;
  std::function<Outcome()> run;
};

const std::vector<Criterion> kCriteria = {
    {"grounding fidelity", grounding},
    {"table reproduction", table_reproduction},
    {"CN examples", cn_examples},
    {"relation lattice", lattice},
    {"well-behavedness", well_behavedness},
    {"principles", principles},
    {"strength ordering", strength_ordering},
    {"oracle equivalence", oracle_equivalence},
    {"classical agreement", classical},
    {"format round-trip", format_roundtrip},
};

bool run(std::size_t n) {
  const Criterion& c = kCriteria.at(n - 1);
  Outcome o;
  try {
    o = c.run();
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail = std::string("exception: ") + e.what();
  }
  std::cout << "criterion " << n << " " << c.name << ": " << (o.pass ? "PASS" : "FAIL") << ": "
            << o.detail << std::endl;
  return o.pass;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc == 3 && std::strcmp(argv[1], "--criterion") == 0) {
    const long n = std::strtol(argv[2], nullptr, 10);
    if (n < 1 || n > static_cast<long>(kCriteria.size())) {
      std::cerr << "criterion must be 1.." << kCriteria.size() << "\n";
      return 2;
    }
    return run(static_cast<std::size_t>(n)) ? 0 : 1;
  }
  if (argc != 1) {
    std::cerr << "usage: tmln_acceptance [--criterion N]\n";
    return 2;
  }
  bool all = true;
  for (std::size_t n = 1; n <= kCriteria.size(); ++n) all = run(n) && all;
  return all ? 0 : 1;
}
