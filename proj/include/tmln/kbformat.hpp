#ifndef TMLN_KBFORMAT_HPP_
#define TMLN_KBFORMAT_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tmln/network.hpp"

namespace tmln {

struct SourceSpan {
  std::size_t line = 1;    // 1-based
  std::size_t column = 1;  // 1-based, in bytes
  std::size_t begin = 0;   // byte offsets into the document, end exclusive
  std::size_t end = 0;
  friend bool operator==(const SourceSpan&, const SourceSpan&) = default;
};

enum class Severity { kError, kWarning };

struct ParseDiagnostic {
  Severity severity = Severity::kError;
  SourceSpan span;
  std::string message;
  std::string expected;  // hint, may be empty
};

struct ParseResult {
  std::optional<Tmln> kb;  // set iff there is no error diagnostic
  std::vector<ParseDiagnostic> diagnostics;

  bool ok() const { return kb.has_value(); }
};

// Line-oriented format:
//   sort <Name>
//   timeline <int> <int>
//   const <Name> : <Sort>
//   pred <Name>(<Sort>, ...)
//   fact [!]<Pred>(<args>, <t1>, <t2>) : <weight>
//   rule <id> : <weight> { <lit> & ... => <lit> }
// Lowercase identifiers are variables, TMIN/TMAX the timeline ends, `#`
// starts a comment. The result is canonicalized.
ParseResult parse(std::string_view text);

// Canonical text: sorts, timeline, constants, predicates, facts, rules,
// each in lexicographic order, LF line ends.
std::string serialize(const Tmln& m);

// "file:line:col: error: message" lines.
std::string format_diagnostic(const ParseDiagnostic& d,
                              const std::string& source_name);

// Sorts the signature, facts and rules so that structurally equal KBs
// compare equal.
void canonicalize_all(Tmln& m);

}  // namespace tmln

#endif  // TMLN_KBFORMAT_HPP_
