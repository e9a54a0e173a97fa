#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "nomeq/presentation.hpp"

using namespace nomeq;

TEST_CASE("builtin lambda theory") {
  Presentation p = builtin_lambda();
  REQUIRE(p.equations.size() == 7);
  CHECK(p.find_op("V")->atom_params == 1);
  CHECK(p.find_op("V")->arity == 0);
  CHECK(p.find_op("L")->atom_params == 1);
  CHECK(p.find_op("L")->arity == 1);
  CHECK(p.find_op("A")->atom_params == 0);
  CHECK(p.find_op("A")->arity == 2);

  const NominalEquation* alpha = p.find_eq("alpha");
  REQUIRE(alpha);
  CHECK(serialize_context(alpha->context) == "[a b] (x:1)");
  CHECK(to_string(alpha->lhs) == "L[a](x(a))");
  CHECK(to_string(alpha->rhs) == "L[b](x(b))");

  const NominalEquation* eta = p.find_eq("eta");
  REQUIRE(eta);
  CHECK(serialize_context(eta->context) == "[a] (x:0)");
  CHECK(to_string(eta->lhs) == "L[a](A(x,V[a]))");
  CHECK(to_string(eta->rhs) == "x");

  CHECK(validate(p).valid);
}

TEST_CASE("serialize-parse round trip") {
  Presentation p = builtin_lambda();
  CHECK(parse_presentation(serialize_presentation(p)) == p);
  Presentation m = fixtures::monoid();
  CHECK(parse_presentation(serialize_presentation(m)) == m);
  Presentation empty;
  empty.name = "nil";
  CHECK(parse_presentation(serialize_presentation(empty)) == empty);
}

TEST_CASE("term parser") {
  std::set<std::string> ops{"A", "L", "V"};
  CHECK(to_string(parse_term("A( L[a]( x(a) ), y )", ops)) == "A(L[a](x(a)),y)");
  CHECK(parse_term("x", ops) == Term::var("x"));
  CHECK(parse_term("x()", ops) == Term::var("x"));
  CHECK_THROWS_AS(parse_term("x(a,a)", ops), Error);
  CHECK_THROWS_AS(parse_term("A(x", ops), Error);
  try {
    parse_term("A(x,,)", ops);
    FAIL("expected a syntax error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SyntaxError);
    CHECK(std::string(e.what()).find("line 1") != std::string::npos);
  }
}

TEST_CASE("theory parsing failures") {
  // undeclared head with atom params
  try {
    parse_presentation("theory t\neq bad [a] (x:0) : f[a](x) = x\n");
    FAIL("expected rejection");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::UnknownOperator);
  }
  // declared operator used at the wrong arity
  try {
    parse_presentation("theory t\nop f : 1 args\neq bad [] (x:0) : f(x,x) = x\n");
    FAIL("expected rejection");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::UnknownOperator);
  }
  // undeclared head without params is read as a variable, hence out of scope
  try {
    parse_presentation("theory t\neq bad [] (x:0) : f(x) = x\n");
    FAIL("expected rejection");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ScopeError);
  }
  // out-of-scope atom
  try {
    parse_presentation("theory t\nop V : 1 atoms, 0 args\neq bad [a] (x:0) : V[b] = x\n");
    FAIL("expected rejection");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ScopeError);
  }
  // malformed directive
  CHECK_THROWS_AS(parse_presentation("nonsense\n"), Error);
}

TEST_CASE("validate reports per equation") {
  Presentation p = parse_presentation_raw(
      "theory t\nop V : 1 atoms, 0 args\n"
      "eq good [a] (x:0) : V[a] = x\n"
      "eq bad [a] (x:1) : x(b) = x(a)\n");
  ValidationReport r = validate(p);
  CHECK_FALSE(r.valid);
  REQUIRE(r.entries.size() == 2);
  CHECK(r.entries[0].ok);
  CHECK_FALSE(r.entries[1].ok);
  CHECK(r.entries[1].equation == "bad");
}

TEST_CASE("comments and CRLF are tolerated") {
  Presentation p = parse_presentation("theory t # header\r\n# nothing\r\nop f : 1 args\r\n");
  CHECK(p.name == "t");
  REQUIRE(p.signature.size() == 1);
  CHECK(p.signature[0].arity == 1);
}
