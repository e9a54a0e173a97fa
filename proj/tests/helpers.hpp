// Shared fixtures: the monoid theory, the running lambda example terms,
// and seeded random generators used by the property suites.

#pragma once

#include <random>
#include <string>

#include "nomeq/birkhoff.hpp"
#include "nomeq/presentation.hpp"

namespace fixtures {

inline const char* kMonoidText =
    "theory monoid\n"
    "op m : 2 args\n"
    "op e : 0 args\n"
    "eq assoc [] (x:0, y:0, z:0) : m(m(x,y),z) = m(x,m(y,z))\n"
    "eq unitl [] (x:0) : m(e,x) = x\n"
    "eq unitr [] (x:0) : m(x,e) = x\n";

inline nomeq::Presentation monoid() { return nomeq::parse_presentation(kMonoidText); }

// A(L[a](L[a](x(a))), y) and L[a](x(a)): the running rewrite example.
inline nomeq::Term lam_start() {
  using nomeq::Term;
  const nomeq::Atom a{0};
  return Term::op("A", {},
                  {Term::op("L", {a}, {Term::op("L", {a}, {Term::var("x", {a})})}),
                   Term::var("y")});
}
inline nomeq::Term lam_end() {
  using nomeq::Term;
  const nomeq::Atom a{0};
  return Term::op("L", {a}, {Term::var("x", {a})});
}

// ---------------------------------------------------------------------------
// Random generators.  All draws come from the caller's engine so suites are
// reproducible from a single seed.

inline nomeq::Atom random_atom(std::mt19937_64& g, int window = 8) {
  return nomeq::Atom{std::uint32_t(std::uniform_int_distribution<int>(0, window - 1)(g))};
}

inline nomeq::AtomTuple random_distinct(std::mt19937_64& g, std::size_t n, int window = 8) {
  nomeq::AtomSet used;
  nomeq::AtomTuple out;
  while (out.size() < n) {
    nomeq::Atom a = random_atom(g, window);
    if (used.insert(a).second) out.push_back(a);
  }
  return out;
}

// Uniform permutation of the atoms [0, window), returned as a finite map.
inline nomeq::Permutation random_permutation(std::mt19937_64& g, int window = 8) {
  std::vector<std::uint32_t> img(static_cast<std::size_t>(window), 0);
  for (int i = 0; i < window; ++i) img[std::size_t(i)] = std::uint32_t(i);
  std::shuffle(img.begin(), img.end(), g);
  std::map<nomeq::Atom, nomeq::Atom> m;
  for (int i = 0; i < window; ++i) m[nomeq::Atom{std::uint32_t(i)}] = nomeq::Atom{img[std::size_t(i)]};
  return nomeq::Permutation::from_map(std::move(m));
}

// Random lambda-signature term over variables x:1, y:0 with atoms from the
// window; always well-scoped w.r.t. a scope containing the window.
inline nomeq::Term random_lambda_term(std::mt19937_64& g, int depth, int window = 8) {
  using nomeq::Term;
  int pick = std::uniform_int_distribution<int>(0, depth > 0 ? 4 : 2)(g);
  switch (pick) {
    case 0: return Term::var("x", {random_atom(g, window)});
    case 1: return Term::var("y");
    case 2: return Term::op("V", {random_atom(g, window)}, {});
    case 3:
      return Term::op("L", {random_atom(g, window)}, {random_lambda_term(g, depth - 1, window)});
    default:
      return Term::op("A", {},
                      {random_lambda_term(g, depth - 1, window),
                       random_lambda_term(g, depth - 1, window)});
  }
}

// Random monoid term over variables p, q (valence 0).
inline nomeq::Term random_monoid_term(std::mt19937_64& g, int depth) {
  using nomeq::Term;
  int pick = std::uniform_int_distribution<int>(0, depth > 0 ? 3 : 2)(g);
  switch (pick) {
    case 0: return Term::var("p");
    case 1: return Term::var("q");
    case 2: return Term::op("e", {}, {});
    default:
      return Term::op("m", {},
                      {random_monoid_term(g, depth - 1), random_monoid_term(g, depth - 1)});
  }
}

}  // namespace fixtures
