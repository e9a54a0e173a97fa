#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "nomeq/rewrite.hpp"

using namespace nomeq;

namespace {
const Atom a{0}, b{1}, c{2};
Term V(Atom x) { return Term::op("V", {x}, {}); }
Term L(Atom x, Term t) { return Term::op("L", {x}, {std::move(t)}); }
Term A(Term s, Term t) { return Term::op("A", {}, {std::move(s), std::move(t)}); }
}  // namespace

TEST_CASE("instantiate beta_k") {
  Presentation th = builtin_lambda();
  SubstitutionFamily theta;
  theta.emplace("x", Abstraction<Term>{{}, V(c)});
  theta.emplace("y", Abstraction<Term>{{a}, V(a)});
  auto [l, r] = instantiate(*th.find_eq("beta_k"), {a}, theta);
  CHECK(to_string(l) == "A(L[a](V[c]),V[a])");
  CHECK(to_string(r) == "V[c]");
}

TEST_CASE("instantiate alpha with the identity abstraction") {
  Presentation th = builtin_lambda();
  SubstitutionFamily theta;
  theta.emplace("x", Abstraction<Term>{{c}, Term::var("x", {c})});
  auto [l, r] = instantiate(*th.find_eq("alpha"), {a, b}, theta);
  CHECK(to_string(l) == "L[a](x(a))");
  CHECK(to_string(r) == "L[b](x(b))");
}

TEST_CASE("instantiate with b = a and identity theta is verbatim") {
  Presentation th = fixtures::monoid();
  SubstitutionFamily theta;
  for (const char* v : {"x", "y", "z"}) theta.emplace(v, Abstraction<Term>{{}, Term::var(v)});
  const NominalEquation& eq = *th.find_eq("assoc");
  auto [l, r] = instantiate(eq, {}, theta);
  CHECK(l == eq.lhs);
  CHECK(r == eq.rhs);
}

TEST_CASE("instantiate preconditions") {
  Presentation th = builtin_lambda();
  SubstitutionFamily theta;
  theta.emplace("x", Abstraction<Term>{{c}, Term::var("x", {c})});
  CHECK_THROWS_AS(instantiate(*th.find_eq("alpha"), {a}, theta), Error);          // length
  CHECK_THROWS_AS(instantiate(*th.find_eq("alpha"), {a, a}, theta), Error);       // distinct
  CHECK_THROWS_AS(instantiate(*th.find_eq("beta_k"), {a}, theta), Error);         // missing y
  SubstitutionFamily bad;
  bad.emplace("x", Abstraction<Term>{{}, V(a)});  // supp contains a
  bad.emplace("y", Abstraction<Term>{{c}, V(c)});
  try {
    instantiate(*th.find_eq("beta_k"), {a}, bad);
    FAIL("expected freshness violation");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::FreshnessViolated);
  }
}

TEST_CASE("match inverts instantiate") {
  Presentation th = builtin_lambda();
  Term subject = A(L(a, V(c)), V(a));
  AtomTuple pool{a, b, c, Atom{3}};
  auto cands = match(*th.find_eq("beta_k"), Direction::LR, subject, pool);
  REQUIRE_FALSE(cands.empty());
  bool found = false;
  for (const auto& cand : cands) {
    auto [l, r] = instantiate(*th.find_eq("beta_k"), cand.b, cand.theta);
    CHECK(l == subject);
    if (cand.b == AtomTuple{a} && r == V(c)) found = true;
  }
  CHECK(found);
  CHECK(match(*th.find_eq("beta_k"), Direction::LR, V(c), pool).empty());
}

TEST_CASE("match enumerates the pool for unconstrained atoms") {
  Presentation th = builtin_lambda();
  Term subject = L(a, Term::var("x", {a}));
  AtomTuple pool{a, b, c};
  auto cands = match(*th.find_eq("alpha"), Direction::LR, subject, pool);
  // b ranges over the pool atoms distinct from a
  REQUIRE(cands.size() == 2);
  for (const auto& cand : cands) {
    CHECK(cand.b[0] == a);
    auto [l, r] = instantiate(*th.find_eq("alpha"), cand.b, cand.theta);
    CHECK(l == subject);
  }
}

TEST_CASE("successors are canonical and cover the running-example first step") {
  Presentation th = builtin_lambda();
  Term start = fixtures::lam_start();
  auto succ = successors(start, th);
  Term expected = A(L(a, L(b, Term::var("x", {b}))), Term::var("y"));
  bool found = false;
  for (const auto& st : succ)
    if (st.result == expected && st.instance.equation == "alpha") found = true;
  CHECK(found);
  // determinism
  auto succ2 = successors(start, th);
  REQUIRE(succ.size() == succ2.size());
  for (std::size_t i = 0; i < succ.size(); ++i) CHECK(succ[i].result == succ2[i].result);
  // empty theory
  Presentation empty;
  CHECK(successors(start, empty).empty());
}

TEST_CASE("rewriting is equivariant") {
  Presentation th = builtin_lambda();
  std::mt19937_64 g(21);
  for (int i = 0; i < 30; ++i) {
    Term t = fixtures::random_lambda_term(g, 2);
    Permutation p = fixtures::random_permutation(g);
    std::set<Term> results, mapped;
    for (const auto& st : successors(t, th)) mapped.insert(act(p, st.result));
    for (const auto& st : successors(act(p, t), th)) results.insert(st.result);
    // Transported results are reachable from the transported term.  (The
    // pool depends on the support, so the permuted side may see more.)
    for (const Term& r : mapped) {
      AtomSet supp = support_of(r);
      AtomSet base = support_of(act(p, t));
      bool in_pool = true;
      AtomTuple pool = default_pool(act(p, t), {});
      AtomSet pset = to_set(pool);
      for (const Atom& x : supp)
        if (!pset.count(x)) in_pool = false;
      if (in_pool) CHECK(results.count(r));
    }
  }
}

TEST_CASE("running-example rewrite replay") {
  Presentation th = builtin_lambda();
  EqualVerdict v = equal_bounded(fixtures::lam_start(), fixtures::lam_end(), th, 4, 100000);
  REQUIRE(v.equal);
  REQUIRE(v.path.steps.size() == 3);
  CHECK(v.path.steps[0].instance.equation == "alpha");
  CHECK(v.path.steps[1].instance.equation == "beta_k");
  CHECK(v.path.steps[2].instance.equation == "alpha");
  // replay the path
  Term cur = v.path.start;
  for (const auto& st : v.path.steps) {
    const NominalEquation& eq = *th.find_eq(st.instance.equation);
    auto [l, r] = instantiate(eq, st.instance.b, st.instance.theta);
    const Term& from = st.instance.direction == Direction::LR ? l : r;
    const Term& to = st.instance.direction == Direction::LR ? r : l;
    CHECK(detail::at_path(cur, st.instance.position) == from);
    cur = replace_at(cur, st.instance.position, to);
    CHECK(cur == st.result);
  }
  CHECK(cur == fixtures::lam_end());
}

TEST_CASE("equal_bounded basics") {
  Presentation th = builtin_lambda();
  Term t = fixtures::lam_start();
  EqualVerdict same = equal_bounded(t, t, th, 0, 10);
  CHECK(same.equal);
  CHECK(same.path.steps.empty());
  // V[a] and V[b] are never related: full exhaustion at small depth
  EqualVerdict diff = equal_bounded(V(a), V(b), th, 3, 100000);
  CHECK_FALSE(diff.equal);
  CHECK_FALSE(diff.stats.budget_exhausted);
}

TEST_CASE("equal_bounded is symmetric and monotone") {
  Presentation th = builtin_lambda();
  std::mt19937_64 g(23);
  for (int i = 0; i < 10; ++i) {
    Term s = fixtures::random_lambda_term(g, 2);
    Term t = s;
    for (int k = 0; k < 2; ++k) {
      auto succ = successors(t, th);
      if (succ.empty()) break;
      t = succ[std::uniform_int_distribution<std::size_t>(0, succ.size() - 1)(g)].result;
    }
    EqualVerdict fwd = equal_bounded(s, t, th, 4, 50000);
    EqualVerdict bwd = equal_bounded(t, s, th, 4, 50000);
    CHECK(fwd.equal == bwd.equal);
    if (fwd.equal) CHECK(equal_bounded(s, t, th, 6, 100000).equal);
  }
}

TEST_CASE("verdicts are completion independent") {
  Presentation th = builtin_lambda();
  std::mt19937_64 g(25);
  for (int i = 0; i < 10; ++i) {
    Term s = fixtures::random_lambda_term(g, 2);
    Term t = fixtures::random_lambda_term(g, 2);
    bool base = equal_bounded(s, t, th, 3, 20000).equal;
    MtCompletionOverride ovr(MtCompletion::ReverseSorted);
    CHECK(equal_bounded(s, t, th, 3, 20000).equal == base);
  }
}

TEST_CASE("layered congruence") {
  Presentation th = builtin_lambda();
  // chain terms of the running example
  Term t0 = fixtures::lam_start();
  Term t1 = A(L(a, L(b, Term::var("x", {b}))), Term::var("y"));
  Term t2 = L(b, Term::var("x", {b}));
  Term t3 = fixtures::lam_end();
  std::vector<Term> universe = subterm_closure({t0, t1, t2, t3});
  CongruenceLayers layers = layered_congruence(universe, th, 3);
  REQUIRE(layers.layers.size() == 3);
  CHECK(layers.related(2, t0, t3));
  // monotone: classes only merge
  for (std::size_t i = 0; i < universe.size(); ++i)
    for (std::size_t j = 0; j < universe.size(); ++j)
      if (layers.layers[0][i] == layers.layers[0][j])
        CHECK(layers.layers[2][i] == layers.layers[2][j]);
  // each layer is an equivalence relation by construction (class ids)
  // degenerate: no axioms
  Presentation empty;
  empty.signature = th.signature;
  CongruenceLayers none = layered_congruence(universe, empty, 2);
  std::set<int> distinct(none.layers[0].begin(), none.layers[0].end());
  CHECK(distinct.size() == universe.size());
  // universe must be subterm-closed
  CHECK_THROWS_AS(layered_congruence({t0}, th, 1), Error);
}

TEST_CASE("trace format") {
  Presentation th = builtin_lambda();
  EqualVerdict v = equal_bounded(fixtures::lam_start(), fixtures::lam_end(), th, 4, 100000);
  REQUIRE(v.equal);
  std::string trace = to_string(v.path);
  CHECK(trace.find("1: A(L[a](L[a](x(a))),y) --(alpha, ") != std::string::npos);
  CHECK(trace.find("--> L[a](x(a))\n") != std::string::npos);
}
