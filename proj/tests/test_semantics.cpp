#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "nomeq/semantics.hpp"

using namespace nomeq;

namespace {
const Atom a{0}, b{1}, c{2};
}

TEST_CASE("interpret leaf clause") {
  // <a|x:1> |- x(a), env x |-> <c>V[c], d = (b)  =>  V[b]
  NominalContext ctx{{a}, {{{"x", 1}}}};
  Environment env;
  env.entries.emplace("x", Abstraction<Term>{{c}, Term::op("V", {c}, {})});
  env.d = {b};
  CHECK(to_string(interpret(ctx, Term::var("x", {a}), env)) == "V[b]");
}

TEST_CASE("interpret node clause") {
  // <a|> |- V[a], empty env, d = (b)  =>  V[b]
  NominalContext ctx{{a}, {}};
  Environment env;
  env.d = {b};
  CHECK(to_string(interpret(ctx, Term::op("V", {a}, {}), env)) == "V[b]");
}

TEST_CASE("interpret validates scope and separation") {
  NominalContext ctx{{a}, {{{"x", 1}}}};
  Environment env;
  env.entries.emplace("x", Abstraction<Term>{{c}, Term::op("V", {c}, {})});
  env.d = {b};
  CHECK_THROWS_AS(interpret(ctx, Term::var("x", {b}), env), Error);  // b out of scope
  Environment short_env = env;
  short_env.d = {};
  CHECK_THROWS_AS(interpret(ctx, Term::var("x", {a}), short_env), Error);
  Environment tainted = env;
  tainted.entries.at("x") = Abstraction<Term>{{c}, Term::op("V", {b}, {})};  // b in support
  try {
    interpret(ctx, Term::var("x", {a}), tainted);
    FAIL("expected separation violation");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SeparationViolated);
  }
  Environment missing;
  missing.d = {b};
  CHECK_THROWS_AS(interpret(ctx, Term::var("x", {a}), missing), Error);
}

TEST_CASE("identity environment is the identity") {
  std::mt19937_64 g(41);
  NominalContext ctx{{Atom{0}, Atom{1}, Atom{2}, Atom{3}, Atom{4}, Atom{5}, Atom{6}, Atom{7}},
                     {{{"x", 1}, {"y", 0}}}};
  Environment env;
  env.entries.emplace("x", Abstraction<Term>{{Atom{30}}, Term::var("x", {Atom{30}})});
  env.entries.emplace("y", Abstraction<Term>{{}, Term::var("y")});
  env.d = ctx.atoms;
  for (int i = 0; i < 100; ++i) {
    Term t = fixtures::random_lambda_term(g, 3);
    CHECK(interpret(ctx, t, env) == t);
  }
}

TEST_CASE("interpretation is equivariant") {
  std::mt19937_64 g(43);
  NominalContext ctx{{a, b}, {{{"x", 1}, {"y", 0}}}};
  for (int i = 0; i < 50; ++i) {
    Environment env;
    AtomTuple binder = fixtures::random_distinct(g, 1, 8);
    Term bx = fixtures::random_lambda_term(g, 2);
    Term by = fixtures::random_lambda_term(g, 2);
    env.entries.emplace("x", Abstraction<Term>{binder, bx});
    env.entries.emplace("y", Abstraction<Term>{{}, by});
    AtomSet supp;
    for (const auto& [k, abs] : env.entries)
      for (const Atom& x : support_of(abs)) supp.insert(x);
    env.d = fresh(2, supp);
    Term t = Term::op("A", {}, {Term::var("x", {a}), Term::op("L", {b}, {Term::var("y")})});
    Permutation p = fixtures::random_permutation(g, 12);
    Environment penv;
    for (const auto& [k, abs] : env.entries) penv.entries.emplace(k, act(p, abs));
    penv.d = act(p, env.d);
    CHECK(act(p, interpret(ctx, t, env)) == interpret(ctx, t, penv));
  }
}

TEST_CASE("interpretation only depends on alpha-classes of entries") {
  std::mt19937_64 g(47);
  NominalContext ctx{{a}, {{{"x", 1}}}};
  for (int i = 0; i < 50; ++i) {
    Term body = fixtures::random_lambda_term(g, 2);
    AtomTuple binder = fixtures::random_distinct(g, 1, 8);
    Environment env;
    env.entries.emplace("x", Abstraction<Term>{binder, body});
    AtomSet supp = support_of(env.entries.at("x"));
    env.d = fresh(1, supp);
    // alpha-variant: rename the binder to something fresh
    AtomSet avoid = support_of(body);
    avoid.insert(binder[0]);
    avoid.insert(env.d[0]);
    AtomTuple nb = fresh(1, avoid);
    Environment env2 = env;
    env2.entries.at("x") = act(multi_transposition(binder, nb), env.entries.at("x"));
    REQUIRE(alpha_eq(env.entries.at("x"), env2.entries.at("x")));
    Term t = Term::op("L", {a}, {Term::var("x", {a})});
    CHECK(interpret(ctx, t, env) == interpret(ctx, t, env2));
  }
}

TEST_CASE("sampled satisfaction of the lambda axioms") {
  Presentation th = builtin_lambda();
  SatisfactionBounds bounds;
  bounds.max_depth = 6;
  bounds.node_budget = 50000;
  for (const char* name : {"alpha", "eta"}) {
    SatisfactionReport rep = check_satisfaction_sampled(th, *th.find_eq(name), 5, 1234, bounds);
    INFO(rep.render());
    CHECK(rep.all_confirmed());
  }
}

TEST_CASE("sampled reports are reproducible and well-formed") {
  Presentation th = builtin_lambda();
  SatisfactionBounds bounds;
  bounds.max_depth = 4;
  bounds.node_budget = 20000;
  SatisfactionReport r1 = check_satisfaction_sampled(th, *th.find_eq("eta"), 3, 99, bounds);
  SatisfactionReport r2 = check_satisfaction_sampled(th, *th.find_eq("eta"), 3, 99, bounds);
  CHECK(r1.render() == r2.render());
  for (const SampleResult& s : r1.samples) {
    CHECK(s.env_digest.find("x=") != std::string::npos);
    CHECK(s.env_digest.find("d=[") != std::string::npos);
  }
}

TEST_CASE("reflexive equation confirmed at depth 0") {
  Presentation empty;
  empty.name = "nil";
  empty.signature = builtin_lambda().signature;
  NominalEquation refl{"refl", {{a}, {{{"x", 1}}}}, Term::var("x", {a}), Term::var("x", {a})};
  empty.equations.push_back(refl);
  Presentation no_axioms = empty;
  no_axioms.equations.clear();
  SatisfactionBounds bounds;
  bounds.max_depth = 0;
  SatisfactionReport rep = check_satisfaction_sampled(no_axioms, refl, 5, 7, bounds);
  CHECK(rep.all_confirmed());
  for (const SampleResult& s : rep.samples) CHECK(s.path_length == 0);
}
