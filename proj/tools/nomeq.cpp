// Command-line driver: check | prove | rewrite | eq | models | interp.
//
// Exit codes: 0 success, 1 negative-but-well-formed outcome (invalid theory,
// rejected proof, Unknown verdict, audit violations), 2 I/O or syntax error.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "nomeq/birkhoff.hpp"
#include "nomeq/proof.hpp"
#include "nomeq/rewrite.hpp"
#include "nomeq/semantics.hpp"

using nlohmann::json;
using namespace nomeq;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::SyntaxError, "cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Presentation load_theory(const std::string& path) { return parse_presentation(slurp(path)); }

Term parse_cli_term(const std::string& text, const Presentation& th) {
  return parse_term(text, th.op_names());
}

// `[a b] (x:1, y:0)` as in theory files.
NominalContext parse_context_text(const std::string& text) {
  std::set<std::string> no_ops;
  TermParser lp(text, no_ops);
  NominalContext ctx;
  ctx.atoms = lp.atom_list('[', ']');
  lp.expect('(');
  lp.skip_ws();
  while (lp.peek() != ')') {
    std::string x = lp.ident();
    lp.expect(':');
    ctx.vars.entries.emplace_back(x, std::stoi(lp.ident()));
    lp.skip_ws();
    if (lp.peek() == ',') lp.expect(',');
    lp.skip_ws();
  }
  lp.expect(')');
  if (!lp.done()) lp.fail("trailing input after context");
  return ctx;
}

// Environment files: `d = [b c]` once, `x = <c d> term` per variable.
Environment parse_environment(const std::string& text, const Presentation& th) {
  Environment env;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::set<std::string> ops = th.op_names();
    TermParser lp(raw, ops, lineno);
    if (lp.done()) continue;
    std::string name = lp.ident();
    lp.expect('=');
    if (name == "d") {
      env.d = lp.atom_list('[', ']');
    } else {
      AtomTuple binder;
      lp.skip_ws();
      if (lp.peek() == '<') binder = lp.atom_list('<', '>');
      Term body = lp.term();
      env.entries.emplace(name, Abstraction<Term>{binder, body});
    }
    if (!lp.done()) lp.fail("trailing input");
  }
  return env;
}

// `(x, y) : term = term`, all variables of valence 0.
SelJudgement parse_judgement_line(const std::string& line, const Presentation& th) {
  std::set<std::string> ops = th.op_names();
  TermParser lp(line, ops);
  SelJudgement j;
  lp.expect('(');
  lp.skip_ws();
  while (lp.peek() != ')') {
    j.vars.push_back(lp.ident());
    lp.skip_ws();
    if (lp.peek() == ',') lp.expect(',');
    lp.skip_ws();
  }
  lp.expect(')');
  lp.expect(':');
  j.lhs = lp.term();
  lp.expect('=');
  j.rhs = lp.term();
  if (!lp.done()) lp.fail("trailing input");
  return j;
}

json context_json(const NominalContext& ctx) {
  json atoms = json::array();
  for (const Atom& a : ctx.atoms) atoms.push_back(a.display());
  json vars = json::array();
  for (const auto& [x, v] : ctx.vars.entries) vars.push_back({{"id", x}, {"valence", v}});
  return {{"atoms", atoms}, {"vars", vars}};
}

json path_json(const RewritePath& path) {
  json steps = json::array();
  Term cur = path.start;
  for (const RewriteStep& st : path.steps) {
    json b = json::array();
    for (const Atom& a : st.instance.b) b.push_back(a.display());
    steps.push_back({{"from", to_string(cur)},
                     {"equation", st.instance.equation},
                     {"direction", to_string(st.instance.direction)},
                     {"position", to_string(st.instance.position)},
                     {"b", b},
                     {"to", to_string(st.result)}});
    cur = st.result;
  }
  return {{"start", to_string(path.start)}, {"steps", steps}};
}

struct Options {
  int depth = 6;
  std::size_t budget = 100000;
  int pool = 2;
  int max_size = 2;
  int samples = 20;
  std::uint64_t seed = 0;
  int jobs = 1;  // accepted for interface stability; execution is sequential
  bool as_json = false;
};

int cmd_check(const std::string& theory, const Options& opt) {
  Presentation p = parse_presentation_raw(slurp(theory));
  ValidationReport r = validate(p);
  if (opt.as_json) {
    json entries = json::array();
    for (const auto& e : r.entries)
      entries.push_back({{"equation", e.equation}, {"ok", e.ok}, {"message", e.message}});
    std::cout << json{{"theory", p.name}, {"valid", r.valid}, {"entries", entries}}.dump()
              << "\n";
  } else {
    for (const auto& e : r.entries)
      std::cout << (e.equation.empty() ? std::string("signature") : e.equation) << ": "
                << (e.ok ? "ok" : e.message) << "\n";
    std::cout << (r.valid ? "valid" : "invalid") << "\n";
  }
  return r.valid ? 0 : 1;
}

int cmd_prove(const std::string& theory, const std::string& proof, const Options& opt) {
  Presentation th = load_theory(theory);
  ProofNode p = parse_proof(slurp(proof), th);
  Judgement j = check(p, th);
  if (opt.as_json)
    std::cout << json{{"context", context_json(j.context)},
                      {"lhs", to_string(j.lhs)},
                      {"rhs", to_string(j.rhs)}}
                     .dump()
              << "\n";
  else
    std::cout << to_string(j) << "\n";
  return 0;
}

int cmd_eq(const std::string& theory, const std::string& from, const std::string& to,
           const Options& opt, bool print_trace) {
  Presentation th = load_theory(theory);
  Term s = parse_cli_term(from, th);
  Term t = parse_cli_term(to, th);
  PoolPolicy policy{opt.pool};
  EqualVerdict v = equal_bounded(s, t, th, opt.depth, opt.budget, policy);
  if (opt.as_json) {
    json out = {{"equal", v.equal},
                {"expanded", v.stats.expanded},
                {"discovered", v.stats.discovered},
                {"budget_exhausted", v.stats.budget_exhausted}};
    if (v.equal) out["path"] = path_json(v.path);
    std::cout << out.dump() << "\n";
  } else if (v.equal) {
    if (print_trace)
      std::cout << to_string(v.path);
    std::cout << "EQUAL (" << v.path.steps.size() << " steps)\n";
  } else {
    std::cout << "UNKNOWN (expanded " << v.stats.expanded << ", discovered " << v.stats.discovered
              << (v.stats.budget_exhausted ? ", budget exhausted" : "") << ")\n";
  }
  return v.equal ? 0 : 1;
}

int cmd_models(const std::string& theory, const std::string& audit_path, const Options& opt) {
  ClassicTheory th(load_theory(theory));
  std::vector<FiniteAlgebra> models = enumerate_models(th, opt.max_size);
  std::vector<SelJudgement> judgements;
  if (!audit_path.empty()) {
    std::istringstream in(slurp(audit_path));
    std::string line;
    while (std::getline(in, line)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      judgements.push_back(parse_judgement_line(line, th.presentation()));
    }
  }
  std::vector<SoundnessViolation> violations = soundness_audit(th, judgements, opt.max_size);
  if (opt.as_json) {
    json ms = json::array();
    for (const FiniteAlgebra& m : models) ms.push_back(json::parse(to_json(m)));
    json vs = json::array();
    for (const SoundnessViolation& v : violations)
      vs.push_back({{"model", v.model_index},
                    {"lhs", to_string(v.judgement.lhs)},
                    {"rhs", to_string(v.judgement.rhs)}});
    std::cout << json{{"count", models.size()}, {"models", ms}, {"violations", vs}}.dump()
              << "\n";
  } else {
    std::cout << models.size() << " models\n";
    for (const FiniteAlgebra& m : models) std::cout << to_json(m) << "\n";
    if (!judgements.empty())
      std::cout << "audit: " << violations.size() << " violations over " << judgements.size()
                << " judgements\n";
  }
  return violations.empty() ? 0 : 1;
}

int cmd_interp(const std::string& theory, const std::string& context, const std::string& term,
               const std::string& env_path, const std::string& sample_eq, const Options& opt) {
  Presentation th = load_theory(theory);
  if (!sample_eq.empty()) {
    const NominalEquation* eq = th.find_eq(sample_eq);
    if (!eq) throw Error(ErrorKind::UnknownAxiom, "no equation named '" + sample_eq + "'");
    SatisfactionBounds bounds;
    bounds.max_depth = opt.depth;
    bounds.node_budget = opt.budget;
    bounds.policy = PoolPolicy{opt.pool};
    SatisfactionReport rep = check_satisfaction_sampled(th, *eq, opt.samples, opt.seed, bounds);
    if (opt.as_json) {
      json samples = json::array();
      for (const SampleResult& s : rep.samples)
        samples.push_back({{"seed", s.seed},
                           {"env", s.env_digest},
                           {"verdict", s.confirmed ? "Confirmed" : "Unknown"},
                           {"path_length", s.path_length}});
      std::cout << json{{"equation", rep.equation}, {"samples", samples}}.dump() << "\n";
    } else {
      std::cout << rep.render();
    }
    return rep.all_confirmed() ? 0 : 1;
  }
  NominalContext ctx = parse_context_text(context);
  Term t = parse_cli_term(term, th);
  Environment env = parse_environment(slurp(env_path), th);
  Term result = interpret(ctx, t, env);
  if (opt.as_json)
    std::cout << json{{"result", to_string(result)}}.dump() << "\n";
  else
    std::cout << to_string(result) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"equational reasoning over algebraic structure with name binding"};
  app.require_subcommand(1);
  Options opt;
  app.add_flag("--json", opt.as_json, "machine-readable output");
  app.add_option("--jobs", opt.jobs, "worker bound (output is canonical regardless)");

  std::string theory, proof, from, to, context, term, env_path, audit_path, sample_eq;

  CLI::App* c_check = app.add_subcommand("check", "parse and validate a theory file");
  c_check->add_option("theory", theory)->required();

  CLI::App* c_prove = app.add_subcommand("prove", "check a proof script");
  c_prove->add_option("theory", theory)->required();
  c_prove->add_option("proof", proof)->required();

  CLI::App* c_rewrite = app.add_subcommand("rewrite", "search for a rewrite path and print it");
  CLI::App* c_eq = app.add_subcommand("eq", "bounded equality verdict");
  for (CLI::App* c : {c_rewrite, c_eq}) {
    c->add_option("theory", theory)->required();
    c->add_option("from", from)->required();
    c->add_option("to", to)->required();
    c->add_option("--depth", opt.depth, "total depth bound (default 6)");
    c->add_option("--budget", opt.budget, "node expansion budget (default 100000)");
    c->add_option("--pool", opt.pool, "extra fresh atoms in the match pool (default 2)");
  }

  CLI::App* c_models = app.add_subcommand("models", "enumerate finite models; optional audit");
  c_models->add_option("theory", theory)->required();
  c_models->add_option("--max-size", opt.max_size, "largest carrier size (default 2)");
  c_models->add_option("--audit", audit_path, "file of judgements `(x, y) : t = u` to audit");

  CLI::App* c_interp = app.add_subcommand("interp", "interpret a term, or sample an equation");
  c_interp->add_option("theory", theory)->required();
  c_interp->add_option("--context", context, "nominal context `[a b] (x:1, y:0)`");
  c_interp->add_option("--term", term, "term to interpret");
  c_interp->add_option("--env", env_path, "environment file (`d = [..]`, `x = <..> t`)");
  c_interp->add_option("--sample", sample_eq, "equation name for sampled satisfaction");
  c_interp->add_option("--samples", opt.samples, "sample count (default 20)");
  c_interp->add_option("--seed", opt.seed, "RNG seed (default 0)");
  c_interp->add_option("--depth", opt.depth, "equality depth bound (default 6)");
  c_interp->add_option("--budget", opt.budget, "equality node budget (default 100000)");
  c_interp->add_option("--pool", opt.pool, "extra fresh atoms (default 2)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (c_check->parsed()) return cmd_check(theory, opt);
    if (c_prove->parsed()) return cmd_prove(theory, proof, opt);
    if (c_rewrite->parsed()) return cmd_eq(theory, from, to, opt, true);
    if (c_eq->parsed()) return cmd_eq(theory, from, to, opt, false);
    if (c_models->parsed()) return cmd_models(theory, audit_path, opt);
    if (c_interp->parsed()) return cmd_interp(theory, context, term, env_path, sample_eq, opt);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.kind() == ErrorKind::SyntaxError ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
