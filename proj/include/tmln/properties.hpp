#ifndef TMLN_PROPERTIES_HPP_
#define TMLN_PROPERTIES_HPP_

// Randomized property suites shared by the check command, the unit tests
// and the acceptance binary.

#include <optional>
#include <string>
#include <vector>

#include "tmln/generate.hpp"
#include "tmln/inference.hpp"
#include "tmln/semantics.hpp"

namespace tmln::props {

struct SuiteResult {
  std::string name;
  std::size_t trials = 0;   // inputs drawn
  std::size_t checked = 0;  // inputs meeting the precondition
  std::size_t failures = 0;
  std::string counterexample;  // smallest failing input seen
  std::vector<std::string> failing_labels;  // configs or conditions that failed

  bool passed() const { return failures == 0; }
};

std::string summary_line(const SuiteResult& r);

// Complementarity, subsumption and inclusion of the four relations, plus
// agreement of the range-based relations with a point-set evaluation.
std::vector<SuiteResult> relation_lattice(gen::Rng& rng, std::size_t sets);

struct PrincipleOptions {
  std::size_t kbs = 200;
  std::size_t max_mi = 12;
  // Extensions whose MI(M') outgrows this are drawn but not checked.
  std::size_t max_extended_mi = 24;
  gen::KbShape shape;
  std::optional<Tmln> fixed;  // use this KB on every round instead of drawing
};

// Temporal Neutrality, Consistency Monotony and Invariant Consistent Facts,
// each split by extension kind (fresh predicate, then existing predicate),
// the pointwise Delta order and the optimal-strength chain, over random
// KBs and every entry of `configs`.
std::vector<SuiteResult> principles(gen::Rng& rng, const PrincipleOptions& opt,
                                    const std::vector<ParametricSemantics>& configs);

// Pruned, exhaustive and brute-force MAP on one config per KB (cycling
// through `configs`), W against brute_weight, MI against brute_ground.
std::vector<SuiteResult> oracle_equivalence(
    gen::Rng& rng, std::size_t kbs, std::size_t max_mi,
    const std::vector<ParametricSemantics>& configs);

// KBs whose rules all weigh 1: <tInc, id, sum> against the classical MAP.
// The second result counts KBs where the fact-only classical score
// differs; it is informative and expected to have failures.
std::vector<SuiteResult> classical_agreement(gen::Rng& rng, std::size_t kbs,
                                             std::size_t max_mi);

// parse(serialize(M)) == M on random KBs, and in-document spans for the
// diagnostics of damaged copies.
std::vector<SuiteResult> format_roundtrip(gen::Rng& rng, std::size_t kbs);

struct AuditRun {
  std::string label;
  AuditReport report;
};

struct AuditCorpus {
  Timeline timeline;
  std::vector<AuditSample> samples;
};

AuditCorpus audit_corpus(gen::Rng& rng, std::size_t samples);

// Delta-(a) per validator, then every sigma x Theta pair under each
// validator's consistency relation.
std::vector<AuditRun> audit_shipped(const AuditCorpus& corpus);

struct MutantRun {
  std::string condition;  // the condition the mutant violates
  std::string mutant;
  bool detected = false;
};

std::vector<std::string> mutant_names();  // "Theta-(b)", ...
// Audit with the planted mutant for `condition` in place of its component.
// Throws Error on an unknown name.
AuditReport audit_mutant(const std::string& condition, const AuditCorpus& corpus);
std::vector<MutantRun> audit_mutants(const AuditCorpus& corpus);

}  // namespace tmln::props

#endif  // TMLN_PROPERTIES_HPP_
