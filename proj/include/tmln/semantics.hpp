#ifndef TMLN_SEMANTICS_HPP_
#define TMLN_SEMANTICS_HPP_

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "tmln/network.hpp"
#include "tmln/temporal.hpp"

namespace tmln {

inline constexpr double kTolerance = 1e-9;

enum class SelectorKind { kId, kThresh, kRule };
enum class AggregatorKind { kSum, kSumAlpha, kPsum };

struct Selector {
  SelectorKind kind = SelectorKind::kId;
  double alpha = 0.0;  // thresh only, in [0,1)

  static Selector Id() { return {}; }
  static Selector Thresh(double alpha);
  static Selector Rule() { return {SelectorKind::kRule, 0.0}; }
  std::string name() const;
  friend bool operator==(const Selector&, const Selector&) = default;
};

struct Aggregator {
  AggregatorKind kind = AggregatorKind::kSum;
  double alpha = 1.0;  // sum_alpha only, >= 1

  static Aggregator Sum() { return {}; }
  static Aggregator SumAlpha(double alpha);
  static Aggregator Psum() { return {AggregatorKind::kPsum, 1.0}; }
  std::string name() const;
  friend bool operator==(const Aggregator&, const Aggregator&) = default;
};

struct ParametricSemantics {
  Relation delta = Relation::kTCon;
  Selector sigma;
  Aggregator theta;

  std::string name() const;
  friend bool operator==(const ParametricSemantics&,
                         const ParametricSemantics&) = default;
};

// "id", "thresh:0.3", "rule" / "sum", "sum_alpha:2", "psum". Returns false
// and fills `error` on unknown names or out-of-range parameters.
bool parse_selector(const std::string& text, Selector& out, std::string& error);
bool parse_aggregator(const std::string& text, Aggregator& out,
                      std::string& error);
bool parse_validator(const std::string& text, Relation& out);

// The consistency relation a validator enforces: tCon, pCon, !pInc, !tInc.
RelationKind con_of(Relation delta);

// The 4 x 3 x 3 shipped combinations: thresh at 0.3, sum_alpha at 2.
std::vector<ParametricSemantics> shipped_semantics();

int delta(Relation x, const RelationProfile& profile);
int delta(Relation x, const Instantiation& items);

// Throws Error on a weight outside [0,1] or alpha < 1.
double aggregate(const Aggregator& theta, std::span<const double> weights);

// One slot per item, in input order.
std::vector<double> select(const Selector& sigma, const Instantiation& items);

double strength(const ParametricSemantics& tps, const Instantiation& items);

// Component functions for the audit. Selector output slots follow the
// input order, so that extension conditions can compare prefixes.
using DeltaFn = std::function<int(const Instantiation&)>;
using SigmaFn = std::function<std::vector<double>(const Instantiation&)>;
using ThetaFn = std::function<double(std::span<const double>)>;

DeltaFn delta_fn(Relation x);
SigmaFn sigma_fn(const Selector& s);
ThetaFn theta_fn(const Aggregator& a);

// One audit case: a base state and a candidate extension of it.
struct AuditSample {
  Instantiation base;
  WeightedFormula extension;
  // Weight tuple and bump pair for the aggregator conditions.
  std::vector<double> tuple;
  double y = 0.0;
  double z = 0.0;
  std::vector<std::size_t> permutation;
};

struct ConditionResult {
  std::string name;  // "Delta-(a)", "Theta-(c)", "sigma-(d)", ...
  bool passed = true;
  std::size_t applicable = 0;  // samples meeting the precondition
  std::string counterexample;
};

struct AuditReport {
  std::vector<ConditionResult> conditions;
  bool all_passed() const;
  const ConditionResult* find(const std::string& name) const;
};

// Checks the well-behavedness conditions on every sample. Null components skip
// their conditions. `con` is the consistency relation of Delta-(a),
// sigma-(d) and sigma-(e).
AuditReport audit_well_behaved(const DeltaFn& delta, const SigmaFn& sigma,
                               const ThetaFn& theta, RelationKind con,
                               std::span<const AuditSample> samples,
                               const Timeline& timeline);

// tau(TF(base)) does not entail tau(phi).
bool tau_novel(const Instantiation& base, const Formula& phi,
               const Timeline& timeline);

}  // namespace tmln

#endif  // TMLN_SEMANTICS_HPP_
