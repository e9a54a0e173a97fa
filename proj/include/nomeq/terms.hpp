// Nominal signatures, nominal terms, permutation action, support,
// scoped-term checking, and the substitution operation.

#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "nomeq/atoms.hpp"

namespace nomeq {

// An atom-parameterized family of operators: each instance carries
// `atom_params` atoms and takes `arity` children.
struct OperatorFamily {
  std::string name;
  int atom_params = 0;
  int arity = 0;
  bool operator==(const OperatorFamily&) const = default;
};

// pi . o[p1..pk] = o[pi.p1 .. pi.pk]; support is the parameter set.
struct OperatorInstance {
  std::string family;
  std::vector<Atom> params;  // not required distinct
  auto operator<=>(const OperatorInstance&) const = default;
};

// A nominal term: variable leaf x(b~) with pairwise-distinct atom
// arguments, or operator node o[p~](t1..tk).
struct Term {
  enum class Kind { Var, Op };
  Kind kind = Kind::Var;
  std::string head;           // variable id or operator family name
  std::vector<Atom> atoms;    // Var: argument tuple; Op: parameters
  std::vector<Term> children; // Op only

  static Term var(std::string x, AtomTuple args = {}) {
    if (!pairwise_distinct(args))
      throw Error(ErrorKind::ScopeError, "variable arguments must be pairwise distinct");
    return Term{Kind::Var, std::move(x), std::move(args), {}};
  }
  static Term op(std::string o, std::vector<Atom> params, std::vector<Term> kids) {
    return Term{Kind::Op, std::move(o), std::move(params), std::move(kids)};
  }
  bool is_var() const { return kind == Kind::Var; }

  bool operator==(const Term&) const = default;
  // Lexicographic on (kind, head, atoms, children); spelled out because a
  // defaulted <=> cannot recurse through vector<Term>.
  bool operator<(const Term& o) const {
    if (kind != o.kind) return kind < o.kind;
    if (head != o.head) return head < o.head;
    if (atoms != o.atoms) return atoms < o.atoms;
    return std::lexicographical_compare(children.begin(), children.end(), o.children.begin(),
                                        o.children.end());
  }
};

inline Term act(const Permutation& p, const Term& t) {
  Term out;
  out.kind = t.kind;
  out.head = t.head;
  out.atoms.reserve(t.atoms.size());
  for (const Atom& a : t.atoms) out.atoms.push_back(p(a));
  out.children.reserve(t.children.size());
  for (const Term& c : t.children) out.children.push_back(act(p, c));
  return out;
}

inline void collect_support(const Term& t, AtomSet& s) {
  for (const Atom& a : t.atoms) s.insert(a);
  for (const Term& c : t.children) collect_support(c, s);
}

inline AtomSet support_of(const Term& t) {
  AtomSet s;
  collect_support(t, s);
  return s;
}

inline void collect_variables(const Term& t, std::map<std::string, std::size_t>& vars) {
  if (t.is_var()) vars.emplace(t.head, t.atoms.size());
  for (const Term& c : t.children) collect_variables(c, vars);
}

// ---------------------------------------------------------------------------
// Variable contexts and scoping.

struct VariableContext {
  std::vector<std::pair<std::string, int>> entries;  // ids unique

  std::optional<int> valence(const std::string& x) const {
    for (const auto& [id, v] : entries)
      if (id == x) return v;
    return std::nullopt;
  }
  bool has(const std::string& x) const { return valence(x).has_value(); }

  // V+m: every valence raised by m.
  VariableContext extended(int m) const {
    VariableContext out = *this;
    for (auto& [id, v] : out.entries) v += m;
    return out;
  }

  bool operator==(const VariableContext&) const = default;
};

// Membership in the scoped-term grammar (T_Sigma[V])_{a~}: leaves x(b~)
// need x in V with matching valence and {b~} <= {a~}; nodes need their
// parameters inside {a~}.
inline bool well_scoped(const Term& t, const AtomTuple& scope, const VariableContext& vars,
                        std::string* why = nullptr) {
  AtomSet in = to_set(scope);
  if (t.is_var()) {
    auto v = vars.valence(t.head);
    if (!v) {
      if (why) *why = "variable '" + t.head + "' not in context";
      return false;
    }
    if (std::size_t(*v) != t.atoms.size()) {
      if (why)
        *why = "variable '" + t.head + "' used with " + std::to_string(t.atoms.size()) +
               " atoms, valence is " + std::to_string(*v);
      return false;
    }
    for (const Atom& a : t.atoms)
      if (!in.count(a)) {
        if (why) *why = "atom " + a.display() + " out of scope in '" + t.head + "'";
        return false;
      }
    return true;
  }
  for (const Atom& a : t.atoms)
    if (!in.count(a)) {
      if (why) *why = "atom " + a.display() + " out of scope in operator '" + t.head + "'";
      return false;
    }
  for (const Term& c : t.children)
    if (!well_scoped(c, scope, vars, why)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Substitution.
//
// theta maps each variable x to an abstraction <c~_x>s_x of binder length
// equal to x's valence; the leaf clause is x(a~){..} = (c~_x a~).s_x and
// the node clause distributes over children.

using SubstitutionFamily = std::map<std::string, Abstraction<Term>>;

inline SubstitutionFamily act(const Permutation& p, const SubstitutionFamily& theta) {
  SubstitutionFamily out;
  for (const auto& [x, abs] : theta) out.emplace(x, act(p, abs));
  return out;
}

// `diagnostics`, when given, records leaf uses x(a~) where a~ is not fresh
// for the abstraction <c~_x>s_x; such uses cannot arise from the deduction
// rules and the defining clause is computed literally.
inline Term substitute(const Term& t, const SubstitutionFamily& theta,
                       std::vector<std::string>* diagnostics = nullptr) {
  if (t.is_var()) {
    auto it = theta.find(t.head);
    if (it == theta.end()) throw Error(ErrorKind::MissingVariable, "no entry for '" + t.head + "'");
    const Abstraction<Term>& abs = it->second;
    if (abs.binder.size() != t.atoms.size())
      throw Error(ErrorKind::ValenceMismatch,
                  "'" + t.head + "' used with " + std::to_string(t.atoms.size()) +
                      " atoms, binder has " + std::to_string(abs.binder.size()));
    if (diagnostics && !disjoint(to_set(t.atoms), support_of(abs))) {
      diagnostics->push_back("argument tuple of '" + t.head +
                             "' is not fresh for its substituted abstraction");
    }
    return act(multi_transposition(abs.binder, t.atoms), abs.body);
  }
  Term out;
  out.kind = Term::Kind::Op;
  out.head = t.head;
  out.atoms = t.atoms;
  out.children.reserve(t.children.size());
  for (const Term& c : t.children) out.children.push_back(substitute(c, theta, diagnostics));
  return out;
}

// ---------------------------------------------------------------------------
// Rendering: x(a,b), A(t1,t2), L[a](t); x() abbreviated as x.

inline void render(const Term& t, std::ostream& os) {
  os << t.head;
  if (t.kind == Term::Kind::Op && !t.atoms.empty()) {
    os << '[';
    for (std::size_t i = 0; i < t.atoms.size(); ++i) {
      if (i) os << ',';
      os << t.atoms[i].display();
    }
    os << ']';
  }
  if (t.is_var()) {
    if (!t.atoms.empty()) {
      os << '(';
      for (std::size_t i = 0; i < t.atoms.size(); ++i) {
        if (i) os << ',';
        os << t.atoms[i].display();
      }
      os << ')';
    }
  } else if (!t.children.empty()) {
    os << '(';
    for (std::size_t i = 0; i < t.children.size(); ++i) {
      if (i) os << ',';
      render(t.children[i], os);
    }
    os << ')';
  }
}

inline std::string to_string(const Term& t) {
  std::ostringstream os;
  render(t, os);
  return os.str();
}

}  // namespace nomeq
