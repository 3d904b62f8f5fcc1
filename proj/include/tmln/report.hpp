#ifndef TMLN_REPORT_HPP_
#define TMLN_REPORT_HPP_

// Text and JSON renderings shared by the command-line tool and the tests.

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "tmln/inference.hpp"
#include "tmln/network.hpp"
#include "tmln/semantics.hpp"

namespace tmln::report {

inline constexpr int kSchemaVersion = 1;

struct MapOptions {
  bool full = false;  // show weight-1 facts and zero-contribution formulae
  std::optional<LiteralPattern> query;
};

// Facts first, then ground rules, one `formula : weight` per line.
std::string ground_text(const Tmln& m, const Instantiation& mi);
nlohmann::json ground_json(const Tmln& m, const Instantiation& mi);

// Members of a MAP that the default display keeps.
bool shown(const MapEntry& entry, std::size_t i);

std::string map_text(const Tmln& m, const ParametricSemantics& tps,
                     const MapResult& r, const MapOptions& opt);
nlohmann::json map_json(const Tmln& m, const ParametricSemantics& tps,
                        const MapResult& r, const MapOptions& opt);

// `delta=<x> sigma=<name>[:a] theta=<name>[:a]`, one per line. Blank lines
// and `#` comments are skipped. Throws Error naming the offending line.
std::vector<ParametricSemantics> parse_sweep(const std::string& text);
ParametricSemantics parse_config(const std::string& delta, const std::string& sigma,
                                 const std::string& theta);

}  // namespace tmln::report

#endif  // TMLN_REPORT_HPP_
