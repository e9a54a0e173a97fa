// Proof objects and LCF-style checker for synthetic nominal equational
// logic, including elaboration of the derived rules.

#pragma once

#include <map>
#include <string>
#include <vector>

#include "nomeq/presentation.hpp"

namespace nomeq {

struct Judgement {
  NominalContext context;
  Term lhs, rhs;
  bool operator==(const Judgement&) const = default;
};

inline std::string to_string(const Judgement& j) {
  std::ostringstream os;
  os << "<";
  for (std::size_t i = 0; i < j.context.atoms.size(); ++i) {
    if (i) os << ",";
    os << j.context.atoms[i].display();
  }
  os << " | ";
  for (std::size_t i = 0; i < j.context.vars.entries.size(); ++i) {
    if (i) os << ",";
    os << j.context.vars.entries[i].first << ":" << j.context.vars.entries[i].second;
  }
  os << "> |- " << to_string(j.lhs) << " == " << to_string(j.rhs);
  return os.str();
}

// A proof tree with all witnesses stored at the nodes; the checker
// recomputes every conclusion rather than trusting stored judgements.
struct ProofNode {
  enum class Rule { Eqvar, Ref, Sym, Trans, Axiom, Elim, Intro, SubstCoprod, IntroSubst, Inc };
  Rule rule = Rule::Ref;

  AtomTuple tuple;             // Eqvar target / Elim dropped / Intro, IntroSubst, Inc extension
  int intro_m = 0;             // Intro only
  NominalContext ref_context;  // Ref only
  Term ref_term;               // Ref only
  std::string axiom;           // Axiom only

  // Head proof first for SubstCoprod/IntroSubst; per-variable proofs follow,
  // aligned with subst_binders.
  std::vector<ProofNode> children;
  std::vector<std::pair<std::string, AtomTuple>> subst_binders;
};

inline const char* rule_name(ProofNode::Rule r) {
  switch (r) {
    case ProofNode::Rule::Eqvar: return "Eqvar";
    case ProofNode::Rule::Ref: return "Ref";
    case ProofNode::Rule::Sym: return "Sym";
    case ProofNode::Rule::Trans: return "Trans";
    case ProofNode::Rule::Axiom: return "Axiom";
    case ProofNode::Rule::Elim: return "Elim";
    case ProofNode::Rule::Intro: return "Intro";
    case ProofNode::Rule::SubstCoprod: return "Subst";
    case ProofNode::Rule::IntroSubst: return "IntroSubst";
    case ProofNode::Rule::Inc: return "Inc";
  }
  return "?";
}

namespace detail {

[[noreturn]] inline void side_condition(ProofNode::Rule r, const std::string& detail) {
  throw Error(ErrorKind::SideConditionViolated, std::string(rule_name(r)) + ": " + detail);
}

inline void require_children(const ProofNode& p, std::size_t n) {
  if (p.children.size() != n)
    throw Error(ErrorKind::ChildMismatch, std::string(rule_name(p.rule)) + ": expected " +
                                              std::to_string(n) + " children, found " +
                                              std::to_string(p.children.size()));
}

// Per-variable premises of a Subst-like rule: collects theta/theta' and
// the shared target variable context U.
struct SubstPremises {
  SubstitutionFamily theta, theta_prime;
  VariableContext target;
};

inline SubstPremises subst_premises(const ProofNode& p, const VariableContext& head_vars,
                                    const std::vector<Judgement>& kids, const AtomTuple& ext) {
  if (p.subst_binders.size() != kids.size() || kids.size() != head_vars.entries.size())
    throw Error(ErrorKind::ChildMismatch,
                std::string(rule_name(p.rule)) + ": one premise per head variable required");
  SubstPremises out;
  bool first = true;
  for (std::size_t i = 0; i < kids.size(); ++i) {
    const auto& [x, binder] = p.subst_binders[i];
    auto v = head_vars.valence(x);
    if (!v) throw Error(ErrorKind::ChildMismatch, "premise for unknown variable '" + x + "'");
    if (out.theta.count(x)) throw Error(ErrorKind::ChildMismatch, "duplicate premise for '" + x + "'");
    if (binder.size() != std::size_t(*v))
      throw Error(ErrorKind::ValenceMismatch, "binder for '" + x + "' has length " +
                                                  std::to_string(binder.size()) + ", valence is " +
                                                  std::to_string(*v));
    AtomTuple expected = binder;
    expected.insert(expected.end(), ext.begin(), ext.end());
    if (kids[i].context.atoms != expected)
      throw Error(ErrorKind::ChildMismatch,
                  "premise for '" + x + "' must have atom context equal to its binder tuple");
    if (first) {
      out.target = kids[i].context.vars;
      first = false;
    } else if (!(kids[i].context.vars == out.target)) {
      throw Error(ErrorKind::ChildMismatch, "premises disagree on the target variable context");
    }
    out.theta.emplace(x, Abstraction<Term>{binder, kids[i].lhs});
    out.theta_prime.emplace(x, Abstraction<Term>{binder, kids[i].rhs});
  }
  return out;
}

}  // namespace detail

// Checks the proof against the presentation and returns the unique
// judgement it derives.
inline Judgement check(const ProofNode& p, const Presentation& th) {
  using Rule = ProofNode::Rule;
  auto conclude = [&](NominalContext ctx, Term l, Term r) {
    std::string why;
    if (!pairwise_distinct(ctx.atoms))
      throw Error(ErrorKind::ScopeError, "conclusion atom context not pairwise distinct");
    if (!well_scoped(l, ctx.atoms, ctx.vars, &why) || !well_scoped(r, ctx.atoms, ctx.vars, &why))
      throw Error(ErrorKind::ScopeError, "conclusion is not well-scoped: " + why);
    return Judgement{std::move(ctx), std::move(l), std::move(r)};
  };

  switch (p.rule) {
    case Rule::Axiom: {
      detail::require_children(p, 0);
      const NominalEquation* eq = th.find_eq(p.axiom);
      if (!eq) throw Error(ErrorKind::UnknownAxiom, "no equation named '" + p.axiom + "'");
      return conclude(eq->context, eq->lhs, eq->rhs);
    }
    case Rule::Ref: {
      detail::require_children(p, 0);
      return conclude(p.ref_context, p.ref_term, p.ref_term);
    }
    case Rule::Sym: {
      detail::require_children(p, 1);
      Judgement j = check(p.children[0], th);
      return conclude(j.context, j.rhs, j.lhs);
    }
    case Rule::Trans: {
      detail::require_children(p, 2);
      Judgement j1 = check(p.children[0], th);
      Judgement j2 = check(p.children[1], th);
      if (!(j1.context == j2.context))
        throw Error(ErrorKind::ChildMismatch, "Trans: premises in different contexts");
      if (!(j1.rhs == j2.lhs))
        throw Error(ErrorKind::ChildMismatch, "Trans: middle terms differ: " + to_string(j1.rhs) +
                                                  " vs " + to_string(j2.lhs));
      return conclude(j1.context, j1.lhs, j2.rhs);
    }
    case Rule::Eqvar: {
      detail::require_children(p, 1);
      Judgement j = check(p.children[0], th);
      if (p.tuple.size() != j.context.atoms.size())
        detail::side_condition(p.rule, "target tuple length differs from the atom context");
      if (!pairwise_distinct(p.tuple))
        detail::side_condition(p.rule, "target tuple not pairwise distinct");
      Permutation mt = multi_transposition(j.context.atoms, p.tuple);
      return conclude({p.tuple, j.context.vars}, act(mt, j.lhs), act(mt, j.rhs));
    }
    case Rule::Elim: {
      detail::require_children(p, 1);
      Judgement j = check(p.children[0], th);
      const AtomTuple& ctx = j.context.atoms;
      if (p.tuple.size() > ctx.size() ||
          !std::equal(p.tuple.begin(), p.tuple.end(), ctx.end() - p.tuple.size()))
        detail::side_condition(p.rule, "dropped tuple is not a suffix of the atom context");
      AtomSet dropped = to_set(p.tuple);
      if (!disjoint(dropped, support_of(j.lhs)) || !disjoint(dropped, support_of(j.rhs)))
        detail::side_condition(p.rule, "b # a, t, t' fails: dropped atoms occur in the terms");
      AtomTuple rest(ctx.begin(), ctx.end() - p.tuple.size());
      return conclude({rest, j.context.vars}, j.lhs, j.rhs);
    }
    case Rule::Intro: {
      detail::require_children(p, 1);
      Judgement j = check(p.children[0], th);
      const AtomTuple& b = p.tuple;
      if (p.intro_m != int(b.size()))
        detail::side_condition(p.rule, "m differs from the length of the introduced tuple");
      if (!pairwise_distinct(b)) detail::side_condition(p.rule, "introduced tuple not distinct");
      if (!disjoint(to_set(b), to_set(j.context.atoms)))
        detail::side_condition(p.rule, "b # a fails: introduced atoms occur in the context");
      // b # b_x for every leaf tuple is immediate from scoping, checked anyway.
      AtomSet supp = support_of(j.lhs);
      for (const Atom& a : support_of(j.rhs)) supp.insert(a);
      if (!disjoint(to_set(b), supp))
        detail::side_condition(p.rule, "b # b_x fails for a leaf tuple");
      SubstitutionFamily theta;
      for (const auto& [x, v] : j.context.vars.entries) {
        AtomTuple c = fresh(std::size_t(v), to_set(b));
        AtomTuple args = c;
        args.insert(args.end(), b.begin(), b.end());
        theta.emplace(x, Abstraction<Term>{c, Term::var(x, args)});
      }
      AtomTuple ctx = j.context.atoms;
      ctx.insert(ctx.end(), b.begin(), b.end());
      return conclude({ctx, j.context.vars.extended(int(b.size()))}, substitute(j.lhs, theta),
                      substitute(j.rhs, theta));
    }
    case Rule::SubstCoprod: {
      if (p.children.empty()) detail::require_children(p, 1);
      Judgement head = check(p.children[0], th);
      std::vector<Judgement> kids;
      for (std::size_t i = 1; i < p.children.size(); ++i) kids.push_back(check(p.children[i], th));
      auto prem = detail::subst_premises(p, head.context.vars, kids, {});
      return conclude({head.context.atoms, prem.target}, substitute(head.lhs, prem.theta),
                      substitute(head.rhs, prem.theta_prime));
    }
    case Rule::IntroSubst: {
      if (p.children.empty()) detail::require_children(p, 1);
      Judgement head = check(p.children[0], th);
      const AtomTuple& b = p.tuple;
      if (!pairwise_distinct(b)) detail::side_condition(p.rule, "introduced tuple not distinct");
      if (!disjoint(to_set(b), to_set(head.context.atoms)))
        detail::side_condition(p.rule, "b # a fails: introduced atoms occur in the context");
      std::vector<Judgement> kids;
      for (std::size_t i = 1; i < p.children.size(); ++i) kids.push_back(check(p.children[i], th));
      auto prem = detail::subst_premises(p, head.context.vars, kids, b);
      AtomTuple ctx = head.context.atoms;
      ctx.insert(ctx.end(), b.begin(), b.end());
      return conclude({ctx, prem.target}, substitute(head.lhs, prem.theta),
                      substitute(head.rhs, prem.theta_prime));
    }
    case Rule::Inc: {
      detail::require_children(p, 1);
      Judgement j = check(p.children[0], th);
      if (!pairwise_distinct(p.tuple)) detail::side_condition(p.rule, "extension tuple not distinct");
      if (!disjoint(to_set(p.tuple), to_set(j.context.atoms)))
        detail::side_condition(p.rule, "b # a fails: extension atoms occur in the context");
      AtomTuple ctx = j.context.atoms;
      ctx.insert(ctx.end(), p.tuple.begin(), p.tuple.end());
      return conclude({ctx, j.context.vars}, j.lhs, j.rhs);
    }
  }
  throw Error(ErrorKind::ChildMismatch, "malformed proof node");
}

// Rewrites the derived rules IntroSubst and Inc into the primitive ones;
// the result derives the same judgement.
inline ProofNode elaborate(const ProofNode& p, const Presentation& th) {
  ProofNode out = p;
  out.children.clear();
  for (const ProofNode& c : p.children) out.children.push_back(elaborate(c, th));

  if (out.rule == ProofNode::Rule::Inc) {
    // Inc = IntroSubst with identity premises x(b_x) == x(b_x).
    Judgement j = check(out.children[0], th);
    ProofNode is;
    is.rule = ProofNode::Rule::IntroSubst;
    is.tuple = out.tuple;
    is.children.push_back(out.children[0]);
    for (const auto& [x, v] : j.context.vars.entries) {
      AtomTuple bx = fresh(std::size_t(v), to_set(out.tuple));
      ProofNode ref;
      ref.rule = ProofNode::Rule::Ref;
      AtomTuple ctx = bx;
      ctx.insert(ctx.end(), out.tuple.begin(), out.tuple.end());
      ref.ref_context = {ctx, j.context.vars};
      ref.ref_term = Term::var(x, bx);
      is.children.push_back(std::move(ref));
      is.subst_binders.emplace_back(x, bx);
    }
    out = std::move(is);
  }
  if (out.rule == ProofNode::Rule::IntroSubst) {
    // IntroSubst = Intro on the head followed by Subst with the premises,
    // their binders extended by the introduced tuple.
    ProofNode intro;
    intro.rule = ProofNode::Rule::Intro;
    intro.tuple = out.tuple;
    intro.intro_m = int(out.tuple.size());
    intro.children.push_back(out.children[0]);
    ProofNode subst;
    subst.rule = ProofNode::Rule::SubstCoprod;
    subst.children.push_back(std::move(intro));
    for (std::size_t i = 1; i < out.children.size(); ++i) {
      subst.children.push_back(out.children[i]);
      AtomTuple binder = out.subst_binders[i - 1].second;
      binder.insert(binder.end(), out.tuple.begin(), out.tuple.end());
      subst.subst_binders.emplace_back(out.subst_binders[i - 1].first, binder);
    }
    return subst;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Proof scripts: s-expressions (rule arg... child...), with (let name P body)
// for shared lemmas.

namespace detail {

class ProofParser {
 public:
  ProofParser(const std::string& text, const std::set<std::string>& ops)
      : lex_(text, ops), ops_(ops) {}

  ProofNode parse() {
    ProofNode p = proof();
    if (!lex_.done()) lex_.fail("trailing input after proof");
    return p;
  }

 private:
  TermParser lex_;
  const std::set<std::string>& ops_;
  std::map<std::string, ProofNode> lets_;

  ProofNode proof() {
    lex_.skip_ws();
    if (lex_.peek() != '(') {
      std::string name = lex_.ident();
      auto it = lets_.find(name);
      if (it == lets_.end()) lex_.fail("unknown proof reference '" + name + "'");
      return it->second;
    }
    lex_.expect('(');
    std::string head = lex_.ident();
    ProofNode p;
    if (head == "axiom") {
      p.rule = ProofNode::Rule::Axiom;
      p.axiom = lex_.ident();
    } else if (head == "ref") {
      p.rule = ProofNode::Rule::Ref;
      p.ref_context.atoms = lex_.atom_list('[', ']');
      lex_.expect('(');
      lex_.skip_ws();
      while (lex_.peek() != ')') {
        std::string x = lex_.ident();
        lex_.expect(':');
        p.ref_context.vars.entries.emplace_back(x, std::stoi(lex_.ident()));
        lex_.skip_ws();
        if (lex_.peek() == ',') {
          lex_.expect(',');
          lex_.skip_ws();
        }
      }
      lex_.expect(')');
      p.ref_term = lex_.term();
    } else if (head == "sym") {
      p.rule = ProofNode::Rule::Sym;
      p.children.push_back(proof());
    } else if (head == "trans") {
      p.rule = ProofNode::Rule::Trans;
      p.children.push_back(proof());
      p.children.push_back(proof());
    } else if (head == "eqvar") {
      p.rule = ProofNode::Rule::Eqvar;
      p.tuple = lex_.atom_list('[', ']');
      p.children.push_back(proof());
    } else if (head == "elim") {
      p.rule = ProofNode::Rule::Elim;
      p.tuple = lex_.atom_list('[', ']');
      p.children.push_back(proof());
    } else if (head == "intro") {
      p.rule = ProofNode::Rule::Intro;
      p.tuple = lex_.atom_list('[', ']');
      p.intro_m = std::stoi(lex_.ident());
      p.children.push_back(proof());
    } else if (head == "inc") {
      p.rule = ProofNode::Rule::Inc;
      p.tuple = lex_.atom_list('[', ']');
      p.children.push_back(proof());
    } else if (head == "subst" || head == "introsubst") {
      p.rule = head == "subst" ? ProofNode::Rule::SubstCoprod : ProofNode::Rule::IntroSubst;
      if (head == "introsubst") p.tuple = lex_.atom_list('[', ']');
      p.children.push_back(proof());
      lex_.skip_ws();
      while (lex_.peek() == '(') {
        lex_.expect('(');
        std::string x = lex_.ident();
        AtomTuple bx = lex_.atom_list('[', ']');
        p.subst_binders.emplace_back(x, bx);
        p.children.push_back(proof());
        lex_.expect(')');
        lex_.skip_ws();
      }
    } else if (head == "let") {
      std::string name = lex_.ident();
      ProofNode bound = proof();
      lets_[name] = std::move(bound);
      p = proof();
      lets_.erase(name);
    } else {
      lex_.fail("unknown proof rule '" + head + "'");
    }
    lex_.expect(')');
    return p;
  }
};

}  // namespace detail

inline ProofNode parse_proof(const std::string& text, const Presentation& th) {
  std::set<std::string> ops = th.op_names();
  return detail::ProofParser(text, ops).parse();
}

}  // namespace nomeq
