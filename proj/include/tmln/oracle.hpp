#ifndef TMLN_ORACLE_HPP_
#define TMLN_ORACLE_HPP_

// Naive reference implementations. They share the domain types with the
// engine and nothing else.

#include <string>
#include <vector>

#include "tmln/inference.hpp"
#include "tmln/network.hpp"
#include "tmln/semantics.hpp"

namespace tmln::oracle {

inline constexpr std::size_t kClosureBound = 12;
inline constexpr std::size_t kWeightBound = 10;
inline constexpr std::size_t kMapBound = 14;

// Rule firing to fixpoint over a flat literal list. At most 12 formulae.
std::vector<Literal> brute_closure(const std::vector<Formula>& formulae);

// All 2^n subsets, minimal entailing ones kept, max of their minima.
// At most 10 formulae. Throws Error when the target is underivable.
Weight brute_weight(const Literal& target, const Instantiation& items);
// Same over a TMLN, whose rules may be non-ground. At most 10 entries.
Weight brute_weight(const Literal& target, const Tmln& m);

// MI(M) by pairing every premise with every derivable literal.
Instantiation brute_ground(const Tmln& m);

// Transcription of the map definition over every subset, with relations
// evaluated on materialized point sets. At most 14 formulae.
MapResult brute_map(const Instantiation& mi, const ParametricSemantics& tps);

// Relations of the closure of `formulae`, from materialized point sets.
RelationProfile brute_profile(const std::vector<Formula>& formulae);

// Classical MAP: subsets with no atom derived in both polarities, scored
// by their total weight. Maximal optimal subsets. At most 14 formulae.
MapResult classical_map(const Instantiation& mi);
// Best score of the same subsets counting fact weights only.
double classical_fact_optimum(const Instantiation& mi);

struct OracleReport {
  std::string operation;
  std::string inputs;  // digest of the inputs
  std::string oracle_output;
  std::string engine_output;
  bool match = false;
};

// Closure, W of every derivable literal and MAP under `configs`, engine
// against oracle.
std::vector<OracleReport> compare(const Tmln& m,
                                  const std::vector<ParametricSemantics>& configs);

}  // namespace tmln::oracle

#endif  // TMLN_ORACLE_HPP_
