#ifndef TMLN_TESTS_SUPPORT_HPP_
#define TMLN_TESTS_SUPPORT_HPP_

#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>

#include "tmln/kbformat.hpp"
#include "tmln/network.hpp"

namespace tmln::testing {

inline std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline Tmln kb(std::string_view text) {
  ParseResult r = parse(text);
  if (!r.ok()) {
    std::string msg;
    for (const auto& d : r.diagnostics) msg += format_diagnostic(d, "<test>") + "\n";
    throw std::runtime_error(msg);
  }
  return *r.kb;
}

inline std::string data_path(const std::string& name) {
  return std::string(TMLN_DATA_DIR) + "/" + name;
}

inline Tmln oresme() { return kb(read_text(data_path("oresme.tmln"))); }

inline Literal lit(const std::string& pred, std::vector<std::string> consts,
                   std::int64_t lo, std::int64_t hi, bool positive = true) {
  Literal l;
  l.predicate = pred;
  for (auto& c : consts) l.args.push_back(Constant{c});
  l.positive = positive;
  l.lower = TimePoint{lo};
  l.upper = TimePoint{hi};
  return l;
}

// F1..F6, GR11, GR12 and GR2 of the Oresme KB, keyed by label.
inline std::map<std::string, WeightedFormula> oresme_labels(const Tmln& m) {
  std::map<std::string, WeightedFormula> out;
  const std::map<std::string, std::string> by_text = {
      {"Person(NO, 1320, 1382)", "F1"},
      {"Philosopher(NO, 1320, 1382)", "F2"},
      {"LivePeriod(NO, MA, 1320, 1382)", "F3"},
      {"Studied(NO, CoN, 1340, 1354)", "F4"},
      {"Studied(NO, CoN, 1355, 1360)", "F5"},
      {"!Studied(NO, CoN, 1353, 1370)", "F6"},
  };
  for (const auto& wf : ground(m)) {
    const std::string text = render(wf.formula, m.timeline);
    if (auto it = by_text.find(text); it != by_text.end()) {
      out[it->second] = wf;
    } else if (text.find("1340, 1354) =>") != std::string::npos) {
      out["GR11"] = wf;
    } else if (text.find("1355, 1360) =>") != std::string::npos) {
      out["GR12"] = wf;
    } else if (text.find("!PeasantFamily") != std::string::npos) {
      out["GR2"] = wf;
    }
  }
  return out;
}

inline Instantiation pick(const std::map<std::string, WeightedFormula>& labels,
                          std::initializer_list<const char*> names) {
  std::vector<WeightedFormula> out;
  for (const char* n : names) out.push_back(labels.at(n));
  return make_instantiation(std::move(out));
}

}  // namespace tmln::testing

#endif  // TMLN_TESTS_SUPPORT_HPP_
