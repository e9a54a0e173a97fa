// Nominal contexts, nominal equations, presentations, the theory file
// format, and the built-in lambda-calculus theory.

#pragma once

#include <cctype>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "nomeq/terms.hpp"

namespace nomeq {

struct NominalContext {
  AtomTuple atoms;  // pairwise distinct
  VariableContext vars;
  bool operator==(const NominalContext&) const = default;
};

struct NominalEquation {
  std::string name;
  NominalContext context;
  Term lhs, rhs;
  bool operator==(const NominalEquation&) const = default;
};

struct Presentation {
  std::string name;
  std::vector<OperatorFamily> signature;
  std::vector<NominalEquation> equations;

  const OperatorFamily* find_op(const std::string& n) const {
    for (const auto& f : signature)
      if (f.name == n) return &f;
    return nullptr;
  }
  const NominalEquation* find_eq(const std::string& n) const {
    for (const auto& e : equations)
      if (e.name == n) return &e;
    return nullptr;
  }
  std::set<std::string> op_names() const {
    std::set<std::string> s;
    for (const auto& f : signature) s.insert(f.name);
    return s;
  }
  bool operator==(const Presentation&) const = default;
};

// ---------------------------------------------------------------------------
// Term parsing: x(a,b), A(t1,t2), L[a](t); x() may be abbreviated as x.

class TermParser {
 public:
  TermParser(std::string_view text, const std::set<std::string>& ops, int line = 1,
             std::size_t base_col = 1)
      : text_(text), ops_(ops), line_(line), base_col_(base_col) {}

  Term parse() {
    Term t = term();
    skip_ws();
    if (pos_ != text_.size()) fail("trailing input after term");
    return t;
  }

  Term term() {
    skip_ws();
    std::string name = ident();
    bool is_op = ops_.count(name) > 0;
    std::vector<Atom> params;
    skip_ws();
    if (peek() == '[') {
      if (!is_op) throw Error(ErrorKind::UnknownOperator, "'" + name + "' " + at());
      params = atom_list('[', ']');
      skip_ws();
    }
    if (is_op) {
      std::vector<Term> kids;
      if (peek() == '(') {
        expect('(');
        skip_ws();
        if (peek() != ')') {
          kids.push_back(term());
          skip_ws();
          while (peek() == ',') {
            ++pos_;
            kids.push_back(term());
            skip_ws();
          }
        }
        expect(')');
      }
      return Term::op(name, std::move(params), std::move(kids));
    }
    AtomTuple args;
    if (peek() == '(') args = atom_list('(', ')');
    if (!pairwise_distinct(args))
      throw Error(ErrorKind::ScopeError, "arguments of '" + name + "' not distinct " + at());
    return Term::var(name, std::move(args));
  }

  std::vector<Atom> atom_list(char open, char close) {
    std::vector<Atom> out;
    expect(open);
    skip_ws();
    while (peek() != close) {
      out.push_back(parse_atom(ident()));
      skip_ws();
      if (peek() == ',') {
        ++pos_;
        skip_ws();
      }
    }
    expect(close);
    return out;
  }

  std::size_t pos() const { return pos_; }
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  bool done() {
    skip_ws();
    return pos_ == text_.size();
  }

  std::string ident() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    if (start == pos_) fail("expected identifier");
    return std::string(text_.substr(start, pos_ - start));
  }

  void expect(char c) {
    skip_ws();
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  [[noreturn]] void fail(const std::string& msg) {
    throw Error(ErrorKind::SyntaxError, msg + " " + at());
  }
  std::string at() const {
    return "(line " + std::to_string(line_) + ", col " + std::to_string(base_col_ + pos_) + ")";
  }

 private:
  std::string_view text_;
  const std::set<std::string>& ops_;
  int line_;
  std::size_t base_col_;
  std::size_t pos_ = 0;
};

inline Term parse_term(const std::string& text, const std::set<std::string>& ops) {
  return TermParser(text, ops).parse();
}

// ---------------------------------------------------------------------------
// Validation.

struct ValidationEntry {
  std::string equation;  // empty for signature-level findings
  bool ok = true;
  std::string message;
};

struct ValidationReport {
  std::vector<ValidationEntry> entries;
  bool valid = true;

  void add(const std::string& eq, bool ok, std::string msg, ErrorKind kind = ErrorKind::ScopeError) {
    entries.push_back({eq, ok, std::move(msg)});
    if (!ok) {
      valid = false;
      if (!first_kind_set_) {
        first_kind_ = kind;
        first_kind_set_ = true;
      }
    }
  }
  ErrorKind first_kind() const { return first_kind_; }

 private:
  ErrorKind first_kind_ = ErrorKind::ScopeError;
  bool first_kind_set_ = false;
};

inline bool check_term_signature(const Term& t, const Presentation& p, std::string* why) {
  if (!t.is_var()) {
    const OperatorFamily* f = p.find_op(t.head);
    if (!f) {
      *why = "operator '" + t.head + "' is not declared";
      return false;
    }
    if (std::size_t(f->atom_params) != t.atoms.size()) {
      *why = "operator '" + t.head + "' takes " + std::to_string(f->atom_params) + " atoms";
      return false;
    }
    if (std::size_t(f->arity) != t.children.size()) {
      *why = "operator '" + t.head + "' has arity " + std::to_string(f->arity);
      return false;
    }
    for (const Term& c : t.children)
      if (!check_term_signature(c, p, why)) return false;
  }
  return true;
}

inline ValidationReport validate(const Presentation& p) {
  ValidationReport report;
  std::set<std::string> seen_ops, seen_eqs;
  for (const auto& f : p.signature) {
    if (!seen_ops.insert(f.name).second)
      report.add("", false, "duplicate operator '" + f.name + "'", ErrorKind::SyntaxError);
  }
  for (const auto& e : p.equations) {
    if (!seen_eqs.insert(e.name).second) {
      report.add(e.name, false, "duplicate equation name", ErrorKind::SyntaxError);
      continue;
    }
    if (!pairwise_distinct(e.context.atoms)) {
      report.add(e.name, false, "atom context not pairwise distinct", ErrorKind::ScopeError);
      continue;
    }
    std::string why;
    bool ok = true;
    for (const Term* side : {&e.lhs, &e.rhs}) {
      const char* tag = side == &e.lhs ? "lhs" : "rhs";
      if (!check_term_signature(*side, p, &why)) {
        report.add(e.name, false, std::string(tag) + ": " + why, ErrorKind::UnknownOperator);
        ok = false;
        break;
      }
      if (!well_scoped(*side, e.context.atoms, e.context.vars, &why)) {
        report.add(e.name, false, std::string(tag) + ": " + why, ErrorKind::ScopeError);
        ok = false;
        break;
      }
    }
    if (ok) report.add(e.name, true, "ok");
  }
  return report;
}

// ---------------------------------------------------------------------------
// Theory file format.
//
//   theory <id>
//   op <id> : <p> atoms, <k> args      (the "<p> atoms," part may be omitted)
//   eq <id> [a b] (x:1, y:0) : <term> = <term>
//   # comment

inline Presentation parse_presentation_raw(const std::string& text) {
  Presentation p;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  bool have_theory = false;
  std::set<std::string> ops;
  while (std::getline(in, raw)) {
    ++lineno;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    std::string line = raw;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    TermParser lp(line, ops, lineno);
    if (lp.done()) continue;
    std::string kw = lp.ident();
    if (kw == "theory") {
      p.name = lp.ident();
      have_theory = true;
    } else if (kw == "op") {
      if (!have_theory) lp.fail("'theory' header expected first");
      OperatorFamily f;
      f.name = lp.ident();
      lp.expect(':');
      std::string n1 = lp.ident();
      std::string u1 = lp.ident();
      if (u1 == "atoms") {
        f.atom_params = std::stoi(n1);
        lp.expect(',');
        n1 = lp.ident();
        u1 = lp.ident();
      }
      if (u1 != "args") lp.fail("expected 'args'");
      f.arity = std::stoi(n1);
      if (!lp.done()) lp.fail("trailing input");
      p.signature.push_back(std::move(f));
      ops.insert(p.signature.back().name);
    } else if (kw == "eq") {
      if (!have_theory) lp.fail("'theory' header expected first");
      NominalEquation e;
      e.name = lp.ident();
      e.context.atoms = lp.atom_list('[', ']');
      lp.expect('(');
      lp.skip_ws();
      while (lp.peek() != ')') {
        std::string x = lp.ident();
        lp.expect(':');
        e.context.vars.entries.emplace_back(x, std::stoi(lp.ident()));
        lp.skip_ws();
        if (lp.peek() == ',') {
          lp.expect(',');
          lp.skip_ws();
        }
      }
      lp.expect(')');
      lp.expect(':');
      e.lhs = lp.term();
      lp.expect('=');
      e.rhs = lp.term();
      if (!lp.done()) lp.fail("trailing input");
      p.equations.push_back(std::move(e));
    } else {
      lp.fail("unknown directive '" + kw + "'");
    }
  }
  return p;
}

inline Presentation parse_presentation(const std::string& text) {
  Presentation p = parse_presentation_raw(text);
  ValidationReport r = validate(p);
  if (!r.valid) {
    for (const auto& e : r.entries)
      if (!e.ok)
        throw Error(r.first_kind(),
                    (e.equation.empty() ? "" : "equation '" + e.equation + "': ") + e.message);
  }
  return p;
}

inline std::string serialize_context(const NominalContext& ctx) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < ctx.atoms.size(); ++i) {
    if (i) os << ' ';
    os << ctx.atoms[i].display();
  }
  os << "] (";
  for (std::size_t i = 0; i < ctx.vars.entries.size(); ++i) {
    if (i) os << ", ";
    os << ctx.vars.entries[i].first << ':' << ctx.vars.entries[i].second;
  }
  os << ')';
  return os.str();
}

inline std::string serialize_presentation(const Presentation& p) {
  std::ostringstream os;
  os << "theory " << p.name << "\n";
  for (const auto& f : p.signature) {
    os << "op " << f.name << " : ";
    if (f.atom_params > 0) os << f.atom_params << " atoms, ";
    os << f.arity << " args\n";
  }
  for (const auto& e : p.equations) {
    os << "eq " << e.name << " " << serialize_context(e.context) << " : " << to_string(e.lhs)
       << " = " << to_string(e.rhs) << "\n";
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// The lambda-calculus theory for alpha-beta-eta equivalence.

inline Presentation builtin_lambda() {
  const Atom a{0}, b{1};
  auto V = [](Atom x) { return Term::op("V", {x}, {}); };
  auto L = [](Atom x, Term t) { return Term::op("L", {x}, {std::move(t)}); };
  auto A = [](Term s, Term t) { return Term::op("A", {}, {std::move(s), std::move(t)}); };
  auto X = [](std::string x, AtomTuple args) { return Term::var(std::move(x), std::move(args)); };

  Presentation p;
  p.name = "lambda";
  p.signature = {{"V", 1, 0}, {"L", 1, 1}, {"A", 0, 2}};
  p.equations = {
      {"alpha", {{a, b}, {{{"x", 1}}}}, L(a, X("x", {a})), L(b, X("x", {b}))},
      {"beta_k", {{a}, {{{"x", 0}, {"y", 1}}}}, A(L(a, X("x", {})), X("y", {a})), X("x", {})},
      {"beta_V", {{a}, {{{"x", 1}}}}, A(L(a, V(a)), X("x", {a})), X("x", {a})},
      {"beta_L",
       {{a, b}, {{{"x", 2}, {"y", 1}}}},
       A(L(a, L(b, X("x", {a, b}))), X("y", {a})),
       L(b, A(L(a, X("x", {a, b})), X("y", {a})))},
      {"beta_A",
       {{a}, {{{"x", 1}, {"y", 1}, {"z", 1}}}},
       A(L(a, A(X("x", {a}), X("y", {a}))), X("z", {a})),
       A(A(L(a, X("x", {a})), X("z", {a})), A(L(a, X("y", {a})), X("z", {a})))},
      {"beta_eps", {{a, b}, {{{"x", 1}}}}, A(L(a, X("x", {a})), V(b)), X("x", {b})},
      {"eta", {{a}, {{{"x", 0}}}}, L(a, A(X("x", {}), V(a))), X("x", {})},
  };
  return p;
}

}  // namespace nomeq
