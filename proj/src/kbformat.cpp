#include "tmln/kbformat.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <set>
#include <sstream>

namespace tmln {

void canonicalize_all(Tmln& m) {
  std::sort(m.signature.sorts.begin(), m.signature.sorts.end());
  std::sort(m.signature.constants.begin(), m.signature.constants.end());
  std::sort(m.signature.predicates.begin(), m.signature.predicates.end());
  m.canonicalize();
}

namespace {

enum class Tok { kIdent, kNumber, kPunct, kEnd };

struct Token {
  Tok kind = Tok::kEnd;
  std::string text;
  SourceSpan span;
};

bool is_ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}
bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}
bool is_upper_ident(const std::string& s) {
  return !s.empty() && std::isupper(static_cast<unsigned char>(s[0]));
}

struct RawTerm {
  Token tok;
};

struct RawLiteral {
  bool negated = false;
  Token pred;
  std::vector<RawTerm> args;
  SourceSpan span;
};

struct RawFact {
  RawLiteral lit;
  Token weight;
};

struct RawRule {
  Token id;
  Token weight;
  std::vector<RawLiteral> premises;
  RawLiteral conclusion;
};

struct RawDoc {
  std::vector<Token> sorts;
  std::vector<std::pair<Token, Token>> timelines;
  std::vector<std::pair<Token, Token>> constants;  // name, sort
  std::vector<std::pair<Token, std::vector<Token>>> predicates;
  std::vector<RawFact> facts;
  std::vector<RawRule> rules;
};

class LineParser {
 public:
  LineParser(std::string_view line, std::size_t line_no, std::size_t offset,
             std::vector<ParseDiagnostic>& diags)
      : diags_(diags) {
    lex(line, line_no, offset);
  }

  // Parses one statement into `doc`. On a syntax error, records it and
  // abandons the rest of the line.
  void statement(RawDoc& doc) {
    if (peek().kind == Tok::kEnd) return;
    try {
      const Token head = next();
      if (head.kind != Tok::kIdent) fail(head, "expected a directive", "sort, timeline, const, pred, fact or rule");
      if (head.text == "sort") {
        doc.sorts.push_back(ident("sort name"));
      } else if (head.text == "timeline") {
        Token a = integer("lower time bound");
        Token b = integer("upper time bound");
        doc.timelines.emplace_back(a, b);
      } else if (head.text == "const") {
        Token name = ident("constant name");
        punct(":");
        Token sort = ident("sort name");
        doc.constants.emplace_back(name, sort);
      } else if (head.text == "pred") {
        Token name = ident("predicate name");
        punct("(");
        std::vector<Token> sorts;
        if (!try_punct(")")) {
          sorts.push_back(ident("sort name"));
          while (try_punct(",")) sorts.push_back(ident("sort name"));
          punct(")");
        }
        doc.predicates.emplace_back(name, std::move(sorts));
      } else if (head.text == "fact") {
        RawFact f;
        f.lit = literal();
        punct(":");
        f.weight = number("weight");
        doc.facts.push_back(std::move(f));
      } else if (head.text == "rule") {
        RawRule r;
        r.id = ident("rule id");
        punct(":");
        r.weight = number("weight");
        punct("{");
        r.premises.push_back(literal());
        while (try_punct("&")) r.premises.push_back(literal());
        punct("=>");
        r.conclusion = literal();
        punct("}");
        doc.rules.push_back(std::move(r));
      } else {
        fail(head, "unknown directive '" + head.text + "'",
             "sort, timeline, const, pred, fact or rule");
      }
      if (peek().kind != Tok::kEnd) {
        fail(peek(), "unexpected '" + peek().text + "'", "end of line");
      }
    } catch (const Abandon&) {
    }
  }

 private:
  struct Abandon {};

  void lex(std::string_view line, std::size_t line_no, std::size_t offset) {
    std::size_t i = 0;
    auto span = [&](std::size_t b, std::size_t e) {
      return SourceSpan{line_no, b + 1, offset + b, offset + e};
    };
    while (i < line.size()) {
      const char c = line[i];
      if (c == '#') break;
      if (c == ' ' || c == '\t' || c == '\r') {
        ++i;
        continue;
      }
      const std::size_t b = i;
      if (is_ident_start(c)) {
        while (i < line.size() && is_ident_char(line[i])) ++i;
        toks_.push_back({Tok::kIdent, std::string(line.substr(b, i - b)), span(b, i)});
      } else if (std::isdigit(static_cast<unsigned char>(c)) ||
                 (c == '-' && i + 1 < line.size() &&
                  std::isdigit(static_cast<unsigned char>(line[i + 1])))) {
        ++i;
        while (i < line.size() &&
               (std::isdigit(static_cast<unsigned char>(line[i])) || line[i] == '.')) {
          ++i;
        }
        toks_.push_back({Tok::kNumber, std::string(line.substr(b, i - b)), span(b, i)});
      } else if (c == '=' && i + 1 < line.size() && line[i + 1] == '>') {
        i += 2;
        toks_.push_back({Tok::kPunct, "=>", span(b, i)});
      } else if (std::string_view("(),:{}&!").find(c) != std::string_view::npos) {
        ++i;
        toks_.push_back({Tok::kPunct, std::string(1, c), span(b, i)});
      } else {
        // Swallow a whole UTF-8 sequence so the span covers one character.
        ++i;
        while (i < line.size() && (static_cast<unsigned char>(line[i]) & 0xC0) == 0x80) ++i;
        diags_.push_back({Severity::kError, span(b, i), "unexpected character", ""});
      }
    }
    end_.span = span(line.size(), line.size());
    end_.text = "end of line";
  }

  const Token& peek() const { return pos_ < toks_.size() ? toks_[pos_] : end_; }
  Token next() {
    Token t = peek();
    if (pos_ < toks_.size()) ++pos_;
    return t;
  }

  [[noreturn]] void fail(const Token& at, const std::string& msg,
                         const std::string& expected) {
    diags_.push_back({Severity::kError, at.span, msg, expected});
    throw Abandon{};
  }

  Token ident(const std::string& what) {
    Token t = next();
    if (t.kind != Tok::kIdent) fail(t, "expected " + what + ", found '" + t.text + "'", what);
    return t;
  }
  Token number(const std::string& what) {
    Token t = next();
    if (t.kind != Tok::kNumber) fail(t, "expected " + what + ", found '" + t.text + "'", what);
    return t;
  }
  Token integer(const std::string& what) {
    Token t = number(what);
    if (t.text.find('.') != std::string::npos) fail(t, "expected an integer " + what, what);
    return t;
  }
  void punct(const std::string& p) {
    Token t = next();
    if (t.kind != Tok::kPunct || t.text != p) {
      fail(t, "expected '" + p + "', found '" + t.text + "'", p);
    }
  }
  bool try_punct(const std::string& p) {
    if (peek().kind == Tok::kPunct && peek().text == p) {
      ++pos_;
      return true;
    }
    return false;
  }

  RawLiteral literal() {
    RawLiteral lit;
    const SourceSpan start = peek().span;
    lit.negated = try_punct("!");
    lit.pred = ident("predicate name");
    punct("(");
    if (!try_punct(")")) {
      lit.args.push_back(term());
      while (try_punct(",")) lit.args.push_back(term());
      punct(")");
    }
    const SourceSpan last = toks_[pos_ - 1].span;
    lit.span = {start.line, start.column, start.begin, last.end};
    return lit;
  }

  RawTerm term() {
    Token t = next();
    if (t.kind != Tok::kIdent && t.kind != Tok::kNumber) {
      fail(t, "expected a term, found '" + t.text + "'", "constant, variable or time point");
    }
    return {t};
  }

  std::vector<Token> toks_;
  Token end_;
  std::size_t pos_ = 0;
  std::vector<ParseDiagnostic>& diags_;
};

class Resolver {
 public:
  Resolver(Tmln& m, std::vector<ParseDiagnostic>& diags) : m_(m), diags_(diags) {}

  void error(const SourceSpan& s, std::string msg, std::string expected = "") {
    diags_.push_back({Severity::kError, s, std::move(msg), std::move(expected)});
  }

  std::optional<std::int64_t> to_int(const Token& t) {
    std::int64_t v = 0;
    auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    if (ec != std::errc() || p != t.text.data() + t.text.size()) {
      error(t.span, "malformed integer '" + t.text + "'");
      return std::nullopt;
    }
    return v;
  }

  std::optional<Weight> weight(const Token& t) {
    auto w = Weight::Parse(t.text);
    if (!w) {
      error(t.span, "malformed weight '" + t.text + "'",
            "decimal with at most 9 fractional digits");
      return std::nullopt;
    }
    if (!w->in_unit_interval()) {
      error(t.span, "weight outside [0,1]");
      return std::nullopt;
    }
    return w;
  }

  // `vars` is null for facts; for rules it accumulates variable sorts.
  std::optional<Literal> literal(const RawLiteral& raw,
                                 std::map<std::string, std::string>* vars) {
    const PredicateDecl* decl = m_.signature.find_predicate(raw.pred.text);
    if (decl == nullptr) {
      error(raw.pred.span, "unknown predicate " + raw.pred.text);
      return std::nullopt;
    }
    if (raw.args.size() != decl->effective_arity()) {
      error(raw.span,
            raw.pred.text + " expects " + std::to_string(decl->effective_arity()) +
                " arguments, found " + std::to_string(raw.args.size()));
      return std::nullopt;
    }
    Literal lit;
    lit.predicate = raw.pred.text;
    lit.positive = !raw.negated;
    bool ok = true;
    const std::size_t k = decl->arg_sorts.size();
    for (std::size_t i = 0; i < raw.args.size(); ++i) {
      const Token& t = raw.args[i].tok;
      const bool temporal = i >= k;
      const std::string want = temporal ? kTimeSort : decl->arg_sorts[i];
      std::optional<Term> term;
      if (t.kind == Tok::kIdent && !is_upper_ident(t.text)) {
        if (vars == nullptr) {
          error(t.span, "variable " + t.text + " in a fact");
        } else {
          auto [it, inserted] = vars->emplace(t.text, want);
          if (!inserted && it->second != want) {
            error(t.span, "variable " + t.text + " used at sorts " + it->second +
                              " and " + want);
          } else {
            term = Variable{t.text, want};
          }
        }
      } else if (temporal) {
        if (t.kind == Tok::kIdent && (t.text == "TMIN" || t.text == "TMAX")) {
          term = TimePoint{t.text == "TMIN" ? m_.timeline.lower : m_.timeline.upper};
        } else if (t.kind == Tok::kNumber && t.text.find('.') == std::string::npos) {
          if (auto v = to_int(t)) {
            if (!m_.timeline.contains(*v)) {
              error(t.span, "time point " + t.text + " outside the timeline");
            } else {
              term = TimePoint{*v};
            }
          }
        } else {
          error(t.span, "expected a time point, found '" + t.text + "'",
                "integer, TMIN, TMAX or variable");
        }
      } else if (t.kind == Tok::kNumber) {
        error(t.span, "time point in a non-temporal position", want);
      } else if (t.text == "TMIN" || t.text == "TMAX") {
        error(t.span, t.text + " in a non-temporal position", want);
      } else {
        const ConstantDecl* c = m_.signature.find_constant(t.text);
        if (c == nullptr) {
          error(t.span, "unknown constant " + t.text);
        } else if (c->sort != want) {
          error(t.span, "sort mismatch: " + t.text + " is " + c->sort +
                            ", expected " + want);
        } else {
          term = Constant{t.text};
        }
      }
      if (!term) {
        ok = false;
        continue;
      }
      if (i < k) {
        lit.args.push_back(*term);
      } else if (i == k) {
        lit.lower = *term;
      } else {
        lit.upper = *term;
      }
    }
    if (!ok) return std::nullopt;
    const auto* lo = std::get_if<TimePoint>(&lit.lower);
    const auto* hi = std::get_if<TimePoint>(&lit.upper);
    if (lo && hi && lo->value > hi->value) {
      error(raw.span, "inverted bounds");
      return std::nullopt;
    }
    return lit;
  }

  void run(const RawDoc& doc) {
    // Timeline first, since TMIN/TMAX resolve against it.
    if (doc.timelines.empty()) {
      error(SourceSpan{1, 1, 0, 0}, "missing timeline directive", "timeline <int> <int>");
    }
    for (std::size_t i = 0; i < doc.timelines.size(); ++i) {
      const auto& [a, b] = doc.timelines[i];
      if (i > 0) {
        error(a.span, "duplicate timeline directive");
        continue;
      }
      auto lo = to_int(a), hi = to_int(b);
      if (lo && hi) {
        if (*lo > *hi) error(b.span, "inverted timeline bounds");
        m_.timeline = {*lo, *hi};
      }
    }
    std::set<std::string> seen;
    for (const auto& s : doc.sorts) {
      if (s.text == kTimeSort) {
        error(s.span, "reserved sort name Time");
      } else if (!seen.insert(s.text).second) {
        error(s.span, "duplicate sort " + s.text);
      } else {
        m_.signature.sorts.push_back(s.text);
      }
    }
    seen.clear();
    for (const auto& [name, sort] : doc.constants) {
      bool ok = true;
      if (!is_upper_ident(name.text) || name.text == "TMIN" || name.text == "TMAX") {
        error(name.span, "constant names start with an uppercase letter and may not be TMIN/TMAX");
        ok = false;
      }
      if (!seen.insert(name.text).second) {
        error(name.span, "duplicate constant " + name.text);
        ok = false;
      }
      if (!m_.signature.has_sort(sort.text)) {
        error(sort.span, "unknown sort " + sort.text);
        ok = false;
      }
      if (ok) m_.signature.constants.push_back({name.text, sort.text});
    }
    seen.clear();
    for (const auto& [name, sorts] : doc.predicates) {
      bool ok = true;
      if (!is_upper_ident(name.text)) {
        error(name.span, "predicate names start with an uppercase letter");
        ok = false;
      }
      if (!seen.insert(name.text).second) {
        error(name.span, "duplicate predicate " + name.text);
        ok = false;
      }
      if (sorts.empty()) {
        error(name.span, "arity < 3: " + name.text + " needs a non-temporal argument");
        ok = false;
      }
      PredicateDecl decl{name.text, {}};
      for (const auto& s : sorts) {
        if (!m_.signature.has_sort(s.text)) {
          error(s.span, "unknown sort " + s.text);
          ok = false;
        }
        decl.arg_sorts.push_back(s.text);
      }
      if (ok) m_.signature.predicates.push_back(std::move(decl));
    }

    std::map<Literal, std::pair<Weight, SourceSpan>> facts;
    for (const auto& f : doc.facts) {
      auto lit = literal(f.lit, nullptr);
      auto w = weight(f.weight);
      if (!lit || !w) continue;
      auto [it, inserted] = facts.emplace(*lit, std::make_pair(*w, f.weight.span));
      if (!inserted) {
        if (it->second.first != *w) {
          error(f.weight.span, "fact listed with two weights (line " +
                                   std::to_string(it->second.second.line) + ")");
        } else {
          diags_.push_back({Severity::kWarning, f.lit.span, "duplicate fact", ""});
        }
        continue;
      }
      m_.facts.push_back({*lit, *w});
    }

    seen.clear();
    for (const auto& r : doc.rules) {
      bool ok = true;
      if (!seen.insert(r.id.text).second) {
        error(r.id.span, "duplicate rule id " + r.id.text);
        ok = false;
      }
      auto w = weight(r.weight);
      ok = ok && w.has_value();
      std::map<std::string, std::string> vars;
      Rule rule;
      for (const auto& p : r.premises) {
        auto lit = literal(p, &vars);
        if (lit) {
          rule.premises.push_back(*lit);
        } else {
          ok = false;
        }
      }
      const std::set<std::string> premise_vars = [&] {
        std::set<std::string> out;
        for (const auto& [name, sort] : vars) out.insert(name);
        return out;
      }();
      auto concl = literal(r.conclusion, &vars);
      if (!concl) {
        ok = false;
      } else {
        for (const auto& t : r.conclusion.args) {
          if (t.tok.kind == Tok::kIdent && !is_upper_ident(t.tok.text) &&
              !premise_vars.contains(t.tok.text)) {
            error(t.tok.span, "conclusion variable " + t.tok.text +
                                  " does not occur in any premise");
            ok = false;
          }
        }
        rule.conclusion = *concl;
      }
      if (ok && vars.empty()) {
        error(r.id.span, "rule " + r.id.text + " has no variable");
        ok = false;
      }
      if (ok) m_.rules.push_back({r.id.text, std::move(rule), *w});
    }
  }

 private:
  Tmln& m_;
  std::vector<ParseDiagnostic>& diags_;
};

}  // namespace

ParseResult parse(std::string_view text) {
  ParseResult result;
  RawDoc doc;
  std::size_t offset = 0;
  std::size_t line_no = 1;
  while (offset <= text.size()) {
    std::size_t nl = text.find('\n', offset);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(offset, nl - offset);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    LineParser(line, line_no, offset, result.diagnostics).statement(doc);
    offset = nl + 1;
    ++line_no;
  }
  Tmln m;
  Resolver(m, result.diagnostics).run(doc);
  const bool failed = std::any_of(
      result.diagnostics.begin(), result.diagnostics.end(),
      [](const ParseDiagnostic& d) { return d.severity == Severity::kError; });
  std::stable_sort(result.diagnostics.begin(), result.diagnostics.end(),
                   [](const ParseDiagnostic& a, const ParseDiagnostic& b) {
                     return a.span.begin < b.span.begin;
                   });
  if (!failed) {
    canonicalize_all(m);
    result.kb = std::move(m);
  }
  return result;
}

std::string serialize(const Tmln& input) {
  Tmln m = input;
  canonicalize_all(m);
  std::ostringstream out;
  for (const auto& s : m.signature.sorts) out << "sort " << s << '\n';
  out << "timeline " << m.timeline.lower << ' ' << m.timeline.upper << '\n';
  for (const auto& c : m.signature.constants) {
    out << "const " << c.name << " : " << c.sort << '\n';
  }
  for (const auto& p : m.signature.predicates) {
    out << "pred " << p.name << '(';
    for (std::size_t i = 0; i < p.arg_sorts.size(); ++i) {
      out << (i ? ", " : "") << p.arg_sorts[i];
    }
    out << ")\n";
  }
  for (const auto& f : m.facts) {
    out << "fact " << render(f.literal, m.timeline) << " : "
        << f.weight.ToString() << '\n';
  }
  for (const auto& r : m.rules) {
    out << "rule " << r.id << " : " << r.weight.ToString() << ' '
        << render(Formula(r.rule), m.timeline) << '\n';
  }
  return out.str();
}

std::string format_diagnostic(const ParseDiagnostic& d,
                              const std::string& source_name) {
  std::string out = source_name + ":" + std::to_string(d.span.line) + ":" +
                    std::to_string(d.span.column) + ": " +
                    (d.severity == Severity::kError ? "error" : "warning") +
                    ": " + d.message;
  if (!d.expected.empty()) out += " (expected " + d.expected + ")";
  return out;
}

}  // namespace tmln
