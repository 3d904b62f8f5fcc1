#ifndef TMLN_INFERENCE_HPP_
#define TMLN_INFERENCE_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tmln/network.hpp"
#include "tmln/semantics.hpp"

namespace tmln {

inline constexpr std::size_t kDefaultExhaustiveBound = 20;
inline constexpr std::size_t kMaxSearchSize = 62;

// TMLN_EXHAUSTIVE_BOUND when set to a positive integer, else 20.
std::size_t exhaustive_bound();

struct MapEntry {
  Instantiation formulae;
  // sigma slot of each formula, aligned with `formulae`.
  std::vector<double> contributions;
};

struct MapResult {
  double strength = 0.0;
  std::vector<MapEntry> maps;  // sorted by formulae
  std::uint64_t evaluated = 0;  // subsets scored
};

// Same strength within tolerance and the same set of optimal states.
bool same_result(const MapResult& a, const MapResult& b);

// A state compiled to bitmask form: literal ids, rule premise lists and the
// complementary pairs that the relations scan.
class CompiledInstance {
 public:
  explicit CompiledInstance(const Instantiation& items);

  std::size_t size() const { return formulae_.size(); }
  std::uint64_t full_mask() const;
  const Instantiation& items() const { return items_; }

  struct Scratch {
    std::vector<char> closure;
    std::vector<char> other;
    std::vector<double> slots;
  };

  // Closure of the formulae in `mask`, as literal-id flags.
  void closure(std::uint64_t mask, std::vector<char>& out) const;
  RelationProfile profile(const std::vector<char>& closure) const;
  int delta(Relation x, std::uint64_t mask, Scratch& s) const;
  // sigma slots of the members of `mask`, in index order.
  void select(const Selector& sigma, std::uint64_t mask, Scratch& s,
              bool closure_ready = false) const;
  // Theta(sigma(mask)), ignoring Delta.
  double potential(const ParametricSemantics& tps, std::uint64_t mask,
                   Scratch& s) const;
  double strength(const ParametricSemantics& tps, std::uint64_t mask,
                  Scratch& s) const;

  Instantiation subset(std::uint64_t mask) const;

 private:
  struct Compiled {
    bool is_rule = false;
    int literal = -1;
    std::vector<int> premises;
    int conclusion = -1;
    double weight = 0.0;
  };
  struct Pair {
    int positive;
    int negative;
    PairShape shape;
  };

  Instantiation items_;
  std::vector<Compiled> formulae_;
  std::vector<Pair> pairs_;
  std::size_t literal_count_ = 0;
};

// Scores every subset of `mi`; OpenMP-parallel over the subset range.
// Throws Error when |mi| exceeds `bound`.
MapResult map_exhaustive(const Instantiation& mi,
                         const ParametricSemantics& tps,
                         std::size_t bound = exhaustive_bound());
MapResult map_exhaustive(const Tmln& m, const ParametricSemantics& tps,
                         std::size_t bound = exhaustive_bound());

// Single-threaded reference for map_exhaustive.
MapResult map_exhaustive_serial(const Instantiation& mi,
                                const ParametricSemantics& tps,
                                std::size_t bound = exhaustive_bound());

// Branch and bound over inclusion order.
MapResult map_pruned(const Instantiation& mi, const ParametricSemantics& tps);
MapResult map_pruned(const Tmln& m, const ParametricSemantics& tps);

// `[!|+]Pred(tok, ..., tok)` where tok is `*`, a constant, an integer, TMIN
// or TMAX. Without a sign both polarities match.
struct LiteralPattern {
  std::string predicate;
  std::optional<bool> positive;
  std::vector<std::optional<Term>> args;  // including the two bounds

  bool matches(const Literal& lit) const;
};

// Throws Error on a malformed pattern.
LiteralPattern parse_pattern(const std::string& text, const Timeline& timeline);

// Derivable literals of `items` matching `pattern`, each with W restricted
// to `items`. Sorted by literal.
std::vector<std::pair<Literal, Weight>> conclusions(
    const Instantiation& items, const LiteralPattern& pattern);

}  // namespace tmln

#endif  // TMLN_INFERENCE_HPP_
