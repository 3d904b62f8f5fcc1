#include "tmln/report.hpp"

#include <sstream>

namespace tmln::report {

namespace {

bool is_fact(const WeightedFormula& wf) {
  return std::holds_alternative<Literal>(wf.formula);
}

nlohmann::json formula_json(const WeightedFormula& wf, const Timeline& tl) {
  return {{"kind", is_fact(wf) ? "fact" : "rule"},
          {"formula", render(wf.formula, tl)},
          {"weight", wf.weight.ToString()}};
}

std::vector<std::string> split_ws(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  for (std::string tok; in >> tok;) out.push_back(tok);
  return out;
}

}  // namespace

std::string ground_text(const Tmln& m, const Instantiation& mi) {
  std::string out;
  for (const bool facts : {true, false}) {
    for (const auto& wf : mi) {
      if (is_fact(wf) != facts) continue;
      out += (facts ? "fact " : "rule ") + render(wf.formula, m.timeline) +
             " : " + wf.weight.ToString() + "\n";
    }
  }
  return out;
}

nlohmann::json ground_json(const Tmln& m, const Instantiation& mi) {
  nlohmann::json facts = nlohmann::json::array(), rules = nlohmann::json::array();
  for (const auto& wf : mi) {
    (is_fact(wf) ? facts : rules).push_back(formula_json(wf, m.timeline));
  }
  return {{"schema_version", kSchemaVersion}, {"facts", facts}, {"rules", rules}};
}

bool shown(const MapEntry& entry, std::size_t i) {
  const auto& wf = entry.formulae[i];
  if (is_fact(wf) && wf.weight == Weight::One()) return false;
  return entry.contributions[i] != 0.0;
}

std::string map_text(const Tmln& m, const ParametricSemantics& tps,
                     const MapResult& r, const MapOptions& opt) {
  std::string out = "config " + tps.name() + "\n";
  out += "strength " + FormatDecimal(r.strength) + "\n";
  std::size_t hidden = 0;
  for (std::size_t k = 0; k < r.maps.size(); ++k) {
    const MapEntry& e = r.maps[k];
    out += "map " + std::to_string(k + 1) + "\n";
    for (std::size_t i = 0; i < e.formulae.size(); ++i) {
      if (!opt.full && !shown(e, i)) {
        ++hidden;
        continue;
      }
      out += "  " + render(e.formulae[i].formula, m.timeline) + " : " +
             e.formulae[i].weight.ToString() + "\n";
    }
    if (opt.query) {
      for (const auto& [lit, w] : conclusions(e.formulae, *opt.query)) {
        out += "  => " + render(lit, m.timeline) + " : " + w.ToString() + "\n";
      }
    }
  }
  if (hidden > 0) {
    out += "(" + std::to_string(hidden) +
           " weight-1 facts or zero-contribution formulae hidden; --full shows them)\n";
  }
  return out;
}

nlohmann::json map_json(const Tmln& m, const ParametricSemantics& tps,
                        const MapResult& r, const MapOptions& opt) {
  nlohmann::json maps = nlohmann::json::array();
  for (const MapEntry& e : r.maps) {
    nlohmann::json formulae = nlohmann::json::array();
    for (std::size_t i = 0; i < e.formulae.size(); ++i) {
      if (!opt.full && !shown(e, i)) continue;
      auto f = formula_json(e.formulae[i], m.timeline);
      f["contribution"] = FormatDecimal(e.contributions[i]);
      formulae.push_back(f);
    }
    nlohmann::json concl = nlohmann::json::array();
    if (opt.query) {
      for (const auto& [lit, w] : conclusions(e.formulae, *opt.query)) {
        concl.push_back({{"literal", render(lit, m.timeline)}, {"weight", w.ToString()}});
      }
    }
    maps.push_back({{"formulae", formulae},
                    {"strength", FormatDecimal(r.strength)},
                    {"conclusions", concl}});
  }
  return {{"schema_version", kSchemaVersion},
          {"config",
           {{"delta", relation_name(tps.delta)},
            {"sigma", tps.sigma.name()},
            {"theta", tps.theta.name()}}},
          {"full", opt.full},
          {"maps", maps}};
}

ParametricSemantics parse_config(const std::string& delta, const std::string& sigma,
                                 const std::string& theta) {
  ParametricSemantics tps;
  std::string error;
  if (!parse_validator(delta, tps.delta)) {
    throw Error("unknown validator '" + delta + "' (expected tCon, pCon, pInc or tInc)");
  }
  if (!parse_selector(sigma, tps.sigma, error)) throw Error(error);
  if (!parse_aggregator(theta, tps.theta, error)) throw Error(error);
  return tps;
}

std::vector<ParametricSemantics> parse_sweep(const std::string& text) {
  std::vector<ParametricSemantics> out;
  std::istringstream in(text);
  std::size_t number = 0;
  for (std::string line; std::getline(in, line);) {
    ++number;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto tokens = split_ws(line);
    if (tokens.empty()) continue;
    std::string d, s, t;
    try {
      for (const auto& tok : tokens) {
        const auto eq = tok.find('=');
        if (eq == std::string::npos) throw Error("expected key=value, got '" + tok + "'");
        const std::string key = tok.substr(0, eq), value = tok.substr(eq + 1);
        std::string* slot = key == "delta"   ? &d
                            : key == "sigma" ? &s
                            : key == "theta" ? &t
                                             : nullptr;
        if (slot == nullptr) throw Error("unknown key '" + key + "'");
        if (!slot->empty()) throw Error("duplicate key '" + key + "'");
        *slot = value;
      }
      if (d.empty() || s.empty() || t.empty()) {
        throw Error("each line needs delta, sigma and theta");
      }
      out.push_back(parse_config(d, s, t));
    } catch (const Error& e) {
      throw Error("line " + std::to_string(number) + ": " + e.what());
    }
  }
  if (out.empty()) throw Error("sweep file lists no configs");
  return out;
}

}  // namespace tmln::report
