// Interpretation of scoped terms in the free term model and sampled
// satisfaction checking via the bounded equality oracle.

#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "nomeq/rewrite.hpp"

namespace nomeq {

// An environment for a context <a~ | V>: one abstraction per variable
// (binder length = valence) and a tuple d~ interpreting the context atoms.
// Separation requires d~ pairwise distinct and fresh for every entry.
struct Environment {
  std::map<std::string, Abstraction<Term>> entries;
  AtomTuple d;
};

inline void validate_environment(const NominalContext& ctx, const Environment& env) {
  if (env.d.size() != ctx.atoms.size())
    throw Error(ErrorKind::LengthMismatch, "environment tuple length differs from the atom context");
  if (!pairwise_distinct(env.d))
    throw Error(ErrorKind::SeparationViolated, "environment tuple not pairwise distinct");
  for (const auto& [x, v] : ctx.vars.entries) {
    auto it = env.entries.find(x);
    if (it == env.entries.end())
      throw Error(ErrorKind::MissingAssignment, "no environment entry for '" + x + "'");
    if (it->second.binder.size() != std::size_t(v))
      throw Error(ErrorKind::ValenceMismatch, "entry for '" + x + "' does not match its valence");
    if (!disjoint(to_set(env.d), support_of(it->second)))
      throw Error(ErrorKind::SeparationViolated,
                  "environment tuple is not fresh for the entry of '" + x + "'");
  }
}

namespace detail {

inline Term interpret_rec(const Term& t, const Permutation& pi, const Environment& env) {
  if (t.is_var()) {
    const Abstraction<Term>& abs = env.entries.at(t.head);
    AtomTuple c;
    for (const Atom& a : t.atoms) c.push_back(pi(a));
    return act(multi_transposition(abs.binder, c), abs.body);
  }
  Term out;
  out.kind = Term::Kind::Op;
  out.head = t.head;
  for (const Atom& a : t.atoms) out.atoms.push_back(pi(a));
  for (const Term& ch : t.children) out.children.push_back(interpret_rec(ch, pi, env));
  return out;
}

}  // namespace detail

// [[t]] in the free term model: context atoms go to d~ via (a~ d~), leaf
// x(b~) becomes (c~_x c~).m_x with c~ the images of b~.
inline Term interpret(const NominalContext& ctx, const Term& t, const Environment& env) {
  std::string why;
  if (!well_scoped(t, ctx.atoms, ctx.vars, &why))
    throw Error(ErrorKind::ScopeError, "term is not in scope: " + why);
  validate_environment(ctx, env);
  Permutation pi = multi_transposition(ctx.atoms, env.d);
  return detail::interpret_rec(t, pi, env);
}

// ---------------------------------------------------------------------------
// Sampled satisfaction: random environments, verdicts via equal_bounded.

struct SatisfactionBounds {
  int max_depth = 6;
  std::size_t node_budget = 20000;
  int atom_window = 8;   // random atoms are drawn from indices [0, window)
  int term_depth = 3;
  PoolPolicy policy;
};

struct SampleResult {
  std::uint64_t seed = 0;       // per-sample derived seed
  std::string env_digest;
  bool confirmed = false;       // Unknown counts as unconfirmed, never refuted
  std::size_t path_length = 0;
  SearchStats stats;
};

struct SatisfactionReport {
  std::string equation;
  std::vector<SampleResult> samples;
  bool all_confirmed() const {
    for (const SampleResult& s : samples)
      if (!s.confirmed) return false;
    return true;
  }
  std::string render() const {
    std::ostringstream os;
    for (const SampleResult& s : samples)
      os << "seed=" << s.seed << " env={" << s.env_digest << "} verdict="
         << (s.confirmed ? "Confirmed" : "Unknown") << " path_length=" << s.path_length << "\n";
    return os.str();
  }
};

namespace detail {

inline Atom random_atom(std::mt19937_64& rng, int window) {
  return Atom{std::uint32_t(std::uniform_int_distribution<int>(0, window - 1)(rng))};
}

inline AtomTuple random_distinct_atoms(std::mt19937_64& rng, std::size_t n, int window) {
  AtomSet used;
  AtomTuple out;
  while (out.size() < n) {
    Atom a = random_atom(rng, window);
    if (used.insert(a).second) out.push_back(a);
  }
  return out;
}

// Random scoped term over the signature plus generator variables u:0, w:1.
inline Term random_term(std::mt19937_64& rng, const Presentation& th, int depth, int window) {
  int options = 2 + (depth > 0 ? int(th.signature.size()) : 0);
  int pick = std::uniform_int_distribution<int>(0, options - 1)(rng);
  if (pick == 0) return Term::var("u");
  if (pick == 1) return Term::var("w", {random_atom(rng, window)});
  const OperatorFamily& f = th.signature[std::size_t(pick - 2)];
  std::vector<Atom> params;
  for (int i = 0; i < f.atom_params; ++i) params.push_back(random_atom(rng, window));
  std::vector<Term> kids;
  for (int i = 0; i < f.arity; ++i) kids.push_back(random_term(rng, th, depth - 1, window));
  return Term::op(f.name, params, kids);
}

inline Environment random_environment(std::mt19937_64& rng, const Presentation& th,
                                      const NominalContext& ctx, const SatisfactionBounds& b) {
  Environment env;
  AtomSet supports;
  for (const auto& [x, v] : ctx.vars.entries) {
    AtomTuple binder = random_distinct_atoms(rng, std::size_t(v), b.atom_window);
    Term body = random_term(rng, th, b.term_depth, b.atom_window);
    for (const Atom& a : support_of(body)) supports.insert(a);
    for (const Atom& a : binder) supports.insert(a);
    env.entries.emplace(x, Abstraction<Term>{binder, body});
  }
  // Draw d~, then repair any separation violations with fresh atoms.
  env.d = random_distinct_atoms(rng, ctx.atoms.size(), b.atom_window);
  AtomSet avoid = supports;
  for (const Atom& a : env.d) avoid.insert(a);
  for (Atom& a : env.d)
    if (supports.count(a)) {
      a = fresh(1, avoid)[0];
      avoid.insert(a);
    }
  return env;
}

inline std::string digest(const Environment& env) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [x, abs] : env.entries) {
    if (!first) os << ", ";
    first = false;
    os << x << "=<";
    for (std::size_t i = 0; i < abs.binder.size(); ++i) {
      if (i) os << ",";
      os << abs.binder[i].display();
    }
    os << ">" << to_string(abs.body);
  }
  os << "; d=[";
  for (std::size_t i = 0; i < env.d.size(); ++i) {
    if (i) os << ",";
    os << env.d[i].display();
  }
  os << "]";
  return os.str();
}

}  // namespace detail

// Checks `samples` random environments for one equation.  The verdict per
// sample is Confirmed when equal_bounded finds a path between the two
// interpretations, Unknown otherwise; sampling never refutes an axiom.
inline SatisfactionReport check_satisfaction_sampled(const Presentation& th,
                                                     const NominalEquation& eq, int samples,
                                                     std::uint64_t seed,
                                                     const SatisfactionBounds& bounds = {}) {
  SatisfactionReport report;
  report.equation = eq.name;
  std::mt19937_64 master(seed);
  for (int i = 0; i < samples; ++i) {
    SampleResult res;
    res.seed = master();
    std::mt19937_64 rng(res.seed);
    Environment env = detail::random_environment(rng, th, eq.context, bounds);
    res.env_digest = detail::digest(env);
    Term li = interpret(eq.context, eq.lhs, env);
    Term ri = interpret(eq.context, eq.rhs, env);
    EqualVerdict v =
        equal_bounded(li, ri, th, bounds.max_depth, bounds.node_budget, bounds.policy);
    res.confirmed = v.equal;
    res.path_length = v.path.steps.size();
    res.stats = v.stats;
    report.samples.push_back(std::move(res));
  }
  return report;
}

}  // namespace nomeq
