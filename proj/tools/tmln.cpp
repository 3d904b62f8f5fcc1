// tmln: validate, ground, map, sweep, check and oracle-compare.
//
// Exit status: 0 success, 1 domain error (bad KB, failed check, mismatch),
// 2 I/O or usage error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "tmln/kbformat.hpp"
#include "tmln/oracle.hpp"
#include "tmln/properties.hpp"
#include "tmln/report.hpp"

using namespace tmln;

namespace {

constexpr int kOk = 0;
constexpr int kDomain = 1;
constexpr int kUsage = 2;

struct Exit {
  int code;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "tmln: cannot read " << path << "\n";
    throw Exit{kUsage};
  }
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// Parses and validates; diagnostics go to stderr.
std::optional<Tmln> load(const std::string& path) {
  const ParseResult r = parse(read_file(path));
  for (const auto& d : r.diagnostics) std::cerr << format_diagnostic(d, path) << "\n";
  if (!r.ok()) return std::nullopt;
  const auto issues = validate(*r.kb);
  for (const auto& i : issues) {
    std::cerr << path << ": error: " << i.where << ": " << i.message << "\n";
  }
  if (!issues.empty()) return std::nullopt;
  return r.kb;
}

Tmln load_or_exit(const std::string& path) {
  auto m = load(path);
  if (!m) throw Exit{kDomain};
  return *m;
}

struct MapFlags {
  std::string delta = "tCon", sigma = "id", theta = "sum";
  bool json = false, full = false, pruned = false;
  std::string query;
  std::size_t bound = 0;  // 0: environment or default
};

void add_map_flags(CLI::App* cmd, MapFlags& f, bool with_config) {
  if (with_config) {
    cmd->add_option("--delta", f.delta, "validator: tCon, pCon, pInc, tInc")
        ->capture_default_str();
    cmd->add_option("--sigma", f.sigma, "selector: id, thresh:<a>, rule")
        ->capture_default_str();
    cmd->add_option("--theta", f.theta, "aggregator: sum, sum_alpha:<a>, psum")
        ->capture_default_str();
  }
  cmd->add_flag("--json", f.json, "machine-readable output");
  cmd->add_flag("--full", f.full, "show weight-1 facts and zero-contribution formulae");
  cmd->add_option("--query", f.query, "conclusions matching a pattern, e.g. 'P(*,*,*)'");
  cmd->add_flag("--pruned", f.pruned, "branch and bound instead of exhaustive search");
  cmd->add_option("--bound", f.bound,
                  "largest |MI| for exhaustive search (default TMLN_EXHAUSTIVE_BOUND or 20)");
}

MapResult run_map(const Instantiation& mi, const ParametricSemantics& tps,
                  const MapFlags& f) {
  if (f.pruned) return map_pruned(mi, tps);
  const std::size_t bound = f.bound > 0 ? f.bound : exhaustive_bound();
  if (mi.size() > bound) {
    throw Error("MI(M) has " + std::to_string(mi.size()) +
                " formulae, above the exhaustive bound " + std::to_string(bound) +
                "; use --pruned or raise --bound");
  }
  return map_exhaustive(mi, tps, bound);
}

report::MapOptions map_options(const Tmln& m, const MapFlags& f) {
  report::MapOptions opt;
  opt.full = f.full;
  if (!f.query.empty()) opt.query = parse_pattern(f.query, m.timeline);
  return opt;
}

int cmd_validate(const std::string& path) {
  const auto m = load(path);
  if (!m) return kDomain;
  std::cout << path << ": ok (" << m->facts.size() << " facts, " << m->rules.size()
            << " rules)\n";
  return kOk;
}

int cmd_ground(const std::string& path, bool json) {
  const Tmln m = load_or_exit(path);
  const Instantiation mi = ground(m);
  if (json) {
    std::cout << report::ground_json(m, mi).dump(2) << "\n";
  } else {
    std::cout << report::ground_text(m, mi);
  }
  return kOk;
}

int cmd_sweep(const std::string& path, const std::vector<ParametricSemantics>& configs,
              const MapFlags& f) {
  const Tmln m = load_or_exit(path);
  const Instantiation mi = ground(m);
  const auto opt = map_options(m, f);
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < configs.size(); ++i) {
    const MapResult r = run_map(mi, configs[i], f);
    if (f.json) {
      rows.push_back(report::map_json(m, configs[i], r, opt));
    } else {
      if (i > 0) std::cout << "\n";
      std::cout << report::map_text(m, configs[i], r, opt);
    }
  }
  if (f.json) {
    const nlohmann::json out =
        configs.size() == 1
            ? rows[0]
            : nlohmann::json{{"schema_version", report::kSchemaVersion}, {"rows", rows}};
    std::cout << out.dump(2) << "\n";
  }
  return kOk;
}

struct CheckFlags {
  std::string path;
  std::uint64_t seed = 1;
  std::size_t trials = 1000;
  std::string mutant;
};

int report_suites(const std::vector<props::SuiteResult>& suites) {
  bool ok = true;
  for (const auto& s : suites) {
    std::cout << props::summary_line(s) << "\n";
    if (!s.passed()) {
      ok = false;
      std::cout << "  counterexample: " << s.counterexample << "\n";
    }
  }
  return ok ? kOk : kDomain;
}

int print_audit(const std::string& label, const AuditReport& r) {
  static std::set<std::string> seen;  // the same witness recurs across configs
  int status = kOk;
  for (const auto& c : r.conditions) {
    std::cout << label << " " << c.name << ": " << (c.passed ? "pass" : "FAIL") << " ("
              << c.applicable << " applicable)\n";
    if (!c.passed) {
      status = kDomain;
      if (seen.insert(c.counterexample).second) {
        std::cout << "  counterexample: " << c.counterexample << "\n";
      }
    }
  }
  return status;
}

int cmd_check(const CheckFlags& f) {
  gen::Rng rng(f.seed);
  std::optional<Tmln> kb;
  if (!f.path.empty()) kb = load_or_exit(f.path);

  std::cout << "seed " << f.seed << ", " << f.trials << " trials\n";
  if (!f.mutant.empty()) {
    const auto corpus = props::audit_corpus(rng, f.trials);
    return print_audit("mutant " + f.mutant, props::audit_mutant(f.mutant, corpus));
  }

  int status = kOk;
  const auto merge = [&](int s) { status = std::max(status, s); };
  merge(report_suites(props::relation_lattice(rng, f.trials)));

  props::AuditCorpus corpus;
  if (kb) {
    corpus.timeline = kb->timeline;
    corpus.samples = gen::audit_samples(rng, *kb, f.trials);
  } else {
    corpus = props::audit_corpus(rng, f.trials);
  }
  for (const auto& run : props::audit_shipped(corpus)) merge(print_audit(run.label, run.report));
  for (const auto& mr : props::audit_mutants(corpus)) {
    std::cout << "mutant " << mr.mutant << " caught by " << mr.condition << ": "
              << (mr.detected ? "pass" : "FAIL") << "\n";
    if (!mr.detected) merge(kDomain);
  }

  props::PrincipleOptions po;
  po.kbs = kb ? std::max<std::size_t>(1, f.trials / 50) : std::max<std::size_t>(1, f.trials / 5);
  po.fixed = kb;
  merge(report_suites(props::principles(rng, po, shipped_semantics())));

  if (kb) {
    for (const auto& r : oracle::compare(*kb, shipped_semantics())) {
      if (!r.match) {
        std::cout << "oracle " << r.operation << ": FAIL\n  engine: " << r.engine_output
                  << "\n  oracle: " << r.oracle_output << "\n";
        merge(kDomain);
      }
    }
  } else {
    merge(report_suites(props::oracle_equivalence(rng, f.trials / 2, 14, shipped_semantics())));
    auto classical = props::classical_agreement(rng, f.trials / 5, 12);
    classical.resize(1);  // the fact-only count is informative only
    merge(report_suites(classical));
    merge(report_suites(props::format_roundtrip(rng, f.trials / 5)));
  }
  std::cout << (status == kOk ? "all suites pass\n" : "some suites FAIL\n");
  return status;
}

int cmd_oracle_compare(const std::string& path, const std::vector<ParametricSemantics>& configs) {
  const Tmln m = load_or_exit(path);
  int status = kOk;
  for (const auto& r : oracle::compare(m, configs)) {
    std::cout << (r.match ? "match    " : "MISMATCH ") << r.operation << " [" << r.inputs
              << "]\n";
    if (!r.match) {
      std::cout << "  engine: " << r.engine_output << "\n  oracle: " << r.oracle_output << "\n";
      status = kDomain;
    }
  }
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Temporal Markov logic networks: grounding, MAP inference and audits"};
  app.require_subcommand(1);

  std::string path;
  bool json = false;

  auto* validate_cmd = app.add_subcommand("validate", "parse and check a .tmln file");
  validate_cmd->add_option("kb", path, "knowledge base")->required();

  auto* ground_cmd = app.add_subcommand("ground", "list MI(M): facts, then ground rules");
  ground_cmd->add_option("kb", path, "knowledge base")->required();
  ground_cmd->add_flag("--json", json, "machine-readable output");

  MapFlags mf;
  auto* map_cmd = app.add_subcommand("map", "MAP inference under one semantics");
  map_cmd->add_option("kb", path, "knowledge base")->required();
  add_map_flags(map_cmd, mf, true);

  std::string sweep_path;
  auto* sweep_cmd = app.add_subcommand("sweep", "MAP inference for every config of a sweep file");
  sweep_cmd->add_option("kb", path, "knowledge base")->required();
  sweep_cmd->add_option("sweep", sweep_path, "one `delta=.. sigma=.. theta=..` per line")
      ->required();
  add_map_flags(sweep_cmd, mf, false);

  CheckFlags cf;
  auto* check_cmd = app.add_subcommand("check", "run the property suites");
  check_cmd->add_option("kb", cf.path, "draw extensions and audit samples from this KB");
  check_cmd->add_option("--seed", cf.seed, "random seed")->capture_default_str();
  check_cmd->add_option("--trials", cf.trials, "inputs per property")->capture_default_str();
  check_cmd->add_option("--mutant", cf.mutant,
                        "audit a planted fault: Delta-(a), Theta-(a)..(e), sigma-(a)..(e)");

  MapFlags of;
  bool all_configs = true;
  auto* oracle_cmd = app.add_subcommand("oracle-compare", "engine against the brute-force oracle");
  oracle_cmd->add_option("kb", path, "knowledge base")->required();
  auto* od = oracle_cmd->add_option("--delta", of.delta, "one validator instead of all 36 configs");
  auto* os = oracle_cmd->add_option("--sigma", of.sigma, "selector");
  auto* ot = oracle_cmd->add_option("--theta", of.theta, "aggregator");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*validate_cmd) return cmd_validate(path);
    if (*ground_cmd) return cmd_ground(path, json);
    if (*map_cmd) {
      return cmd_sweep(path, {report::parse_config(mf.delta, mf.sigma, mf.theta)}, mf);
    }
    if (*sweep_cmd) {
      const std::string text = read_file(sweep_path);
      std::vector<ParametricSemantics> configs;
      try {
        configs = report::parse_sweep(text);
      } catch (const Error& e) {
        std::cerr << sweep_path << ": " << e.what() << "\n";
        return kUsage;
      }
      return cmd_sweep(path, configs, mf);
    }
    if (*check_cmd) return cmd_check(cf);
    if (*oracle_cmd) {
      all_configs = od->count() + os->count() + ot->count() == 0;
      return cmd_oracle_compare(
          path, all_configs ? shipped_semantics()
                            : std::vector{report::parse_config(of.delta, of.sigma, of.theta)});
    }
  } catch (const Exit& e) {
    return e.code;
  } catch (const Error& e) {
    std::cerr << "tmln: " << e.what() << "\n";
    return kDomain;
  }
  return kUsage;
}
