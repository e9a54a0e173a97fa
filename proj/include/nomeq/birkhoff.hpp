// The classical fragment: SEL proof checking, finite algebras with
// brute-force model enumeration, and the soundness audit.

#pragma once

#include <map>
#include <string>
#include <vector>

#include "nomeq/proof.hpp"
#include "nomeq/rewrite.hpp"

namespace nomeq {

// A presentation where every family has 0 atom parameters, every valence
// is 0, and every atom context is empty; checked on construction.
class ClassicTheory {
 public:
  explicit ClassicTheory(Presentation p) : presentation_(std::move(p)) {
    for (const auto& f : presentation_.signature)
      if (f.atom_params != 0)
        throw Error(ErrorKind::ScopeError, "operator '" + f.name + "' carries atom parameters");
    for (const auto& e : presentation_.equations) {
      if (!e.context.atoms.empty())
        throw Error(ErrorKind::ScopeError, "equation '" + e.name + "' has a nonempty atom context");
      for (const auto& [x, v] : e.context.vars.entries)
        if (v != 0)
          throw Error(ErrorKind::ValenceMismatch,
                      "variable '" + x + "' in '" + e.name + "' has nonzero valence");
    }
  }
  const Presentation& presentation() const { return presentation_; }

 private:
  Presentation presentation_;
};

// ---------------------------------------------------------------------------
// SEL proofs.  The checker routes through the nominal kernel: SEL is its
// atom-free instance (Subst = Subst_coprod with empty binders).

struct SelProof {
  enum class Rule { Ref, Sym, Trans, Axiom, Subst };
  Rule rule = Rule::Ref;
  std::vector<std::string> ref_vars;  // Ref
  Term ref_term;                      // Ref
  std::string axiom;                  // Axiom
  std::vector<SelProof> children;     // head first for Subst
  std::vector<std::string> subst_vars;
};

struct SelJudgement {
  std::vector<std::string> vars;
  Term lhs, rhs;
  bool operator==(const SelJudgement&) const = default;
};

namespace detail {

inline VariableContext zero_valences(const std::vector<std::string>& vars) {
  VariableContext out;
  for (const std::string& v : vars) out.entries.emplace_back(v, 0);
  return out;
}

inline ProofNode to_nominal(const SelProof& p) {
  ProofNode out;
  switch (p.rule) {
    case SelProof::Rule::Ref:
      out.rule = ProofNode::Rule::Ref;
      out.ref_context = {{}, zero_valences(p.ref_vars)};
      out.ref_term = p.ref_term;
      break;
    case SelProof::Rule::Sym:
      out.rule = ProofNode::Rule::Sym;
      break;
    case SelProof::Rule::Trans:
      out.rule = ProofNode::Rule::Trans;
      break;
    case SelProof::Rule::Axiom:
      out.rule = ProofNode::Rule::Axiom;
      out.axiom = p.axiom;
      break;
    case SelProof::Rule::Subst:
      out.rule = ProofNode::Rule::SubstCoprod;
      for (const std::string& x : p.subst_vars) out.subst_binders.emplace_back(x, AtomTuple{});
      break;
  }
  for (const SelProof& c : p.children) out.children.push_back(to_nominal(c));
  return out;
}

}  // namespace detail

inline SelJudgement sel_check(const SelProof& p, const ClassicTheory& th) {
  Judgement j = check(detail::to_nominal(p), th.presentation());
  SelJudgement out;
  for (const auto& [x, v] : j.context.vars.entries) out.vars.push_back(x);
  out.lhs = j.lhs;
  out.rhs = j.rhs;
  return out;
}

// ---------------------------------------------------------------------------
// Finite algebras.

struct FiniteAlgebra {
  int size = 1;
  std::map<std::string, std::vector<int>> tables;  // row-major, m^k entries
  bool operator==(const FiniteAlgebra&) const = default;
};

// {"size": m, "tables": {"op": [..], ...}}
inline std::string to_json(const FiniteAlgebra& alg) {
  std::ostringstream os;
  os << "{\"size\": " << alg.size << ", \"tables\": {";
  bool first = true;
  for (const auto& [op, table] : alg.tables) {
    if (!first) os << ", ";
    first = false;
    os << '"' << op << "\": [";
    for (std::size_t i = 0; i < table.size(); ++i) {
      if (i) os << ", ";
      os << table[i];
    }
    os << ']';
  }
  os << "}}";
  return os.str();
}

using Assignment = std::map<std::string, int>;

inline int eval(const Term& t, const FiniteAlgebra& alg, const Assignment& assignment) {
  if (t.is_var()) {
    auto it = assignment.find(t.head);
    if (it == assignment.end())
      throw Error(ErrorKind::MissingAssignment, "no value for '" + t.head + "'");
    return it->second;
  }
  auto table = alg.tables.find(t.head);
  if (table == alg.tables.end())
    throw Error(ErrorKind::UnknownOperator, "no table for '" + t.head + "'");
  int idx = 0;
  for (const Term& c : t.children) idx = idx * alg.size + eval(c, alg, assignment);
  return table->second.at(std::size_t(idx));
}

// Quantifies over all size^|vars| assignments.
inline bool satisfies(const FiniteAlgebra& alg, const std::vector<std::string>& vars,
                      const Term& lhs, const Term& rhs) {
  std::size_t count = 1;
  for (std::size_t i = 0; i < vars.size(); ++i) count *= std::size_t(alg.size);
  for (std::size_t code = 0; code < count; ++code) {
    Assignment a;
    std::size_t c = code;
    for (const std::string& v : vars) {
      a[v] = int(c % std::size_t(alg.size));
      c /= std::size_t(alg.size);
    }
    if (eval(lhs, alg, a) != eval(rhs, alg, a)) return false;
  }
  return true;
}

inline bool satisfies(const FiniteAlgebra& alg, const NominalEquation& eq) {
  std::vector<std::string> vars;
  for (const auto& [x, v] : eq.context.vars.entries) vars.push_back(x);
  return satisfies(alg, vars, eq.lhs, eq.rhs);
}

// Brute force over all operation tables of carrier sizes 1..max_size;
// cost is size^(size^arity) per operator, so keep max_size small.
inline std::vector<FiniteAlgebra> enumerate_models(const ClassicTheory& th, int max_size) {
  std::vector<FiniteAlgebra> out;
  const Presentation& p = th.presentation();
  for (int m = 1; m <= max_size; ++m) {
    std::vector<std::pair<std::string, std::size_t>> slots;  // op -> table length
    for (const auto& f : p.signature) {
      std::size_t len = 1;
      for (int i = 0; i < f.arity; ++i) len *= std::size_t(m);
      slots.emplace_back(f.name, len);
    }
    std::size_t total = 0;
    for (const auto& [op, len] : slots) total += len;
    std::vector<int> odo(total, 0);
    while (true) {
      FiniteAlgebra alg;
      alg.size = m;
      std::size_t off = 0;
      for (const auto& [op, len] : slots) {
        alg.tables[op] = std::vector<int>(odo.begin() + long(off), odo.begin() + long(off + len));
        off += len;
      }
      bool ok = true;
      for (const auto& e : p.equations)
        if (!satisfies(alg, e)) {
          ok = false;
          break;
        }
      if (ok) out.push_back(std::move(alg));
      // advance odometer
      std::size_t i = 0;
      for (; i < total; ++i) {
        if (++odo[i] < m) break;
        odo[i] = 0;
      }
      if (i == total) break;
      if (total == 0) break;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Soundness audit: every supplied judgement must hold in every enumerated
// model.  A nonempty result indicates a derivation bug.

struct SoundnessViolation {
  std::size_t model_index = 0;
  FiniteAlgebra model;
  Assignment assignment;
  SelJudgement judgement;
};

inline std::vector<SoundnessViolation> soundness_audit(const ClassicTheory& th,
                                                       const std::vector<SelJudgement>& judgements,
                                                       int max_size) {
  std::vector<SoundnessViolation> out;
  std::vector<FiniteAlgebra> models = enumerate_models(th, max_size);
  for (std::size_t mi = 0; mi < models.size(); ++mi) {
    const FiniteAlgebra& alg = models[mi];
    for (const SelJudgement& j : judgements) {
      std::size_t count = 1;
      for (std::size_t i = 0; i < j.vars.size(); ++i) count *= std::size_t(alg.size);
      for (std::size_t code = 0; code < count; ++code) {
        Assignment a;
        std::size_t c = code;
        for (const std::string& v : j.vars) {
          a[v] = int(c % std::size_t(alg.size));
          c /= std::size_t(alg.size);
        }
        if (eval(j.lhs, alg, a) != eval(j.rhs, alg, a)) out.push_back({mi, alg, a, j});
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Path-to-proof translation: replays a classical rewrite path as an SEL
// derivation of V |- start == end.

inline SelProof path_to_sel_proof(const RewritePath& path, const ClassicTheory& th,
                                  const std::vector<std::string>& vars) {
  const Presentation& pres = th.presentation();
  std::string hole = "hole";
  {
    std::set<std::string> used(vars.begin(), vars.end());
    while (used.count(hole)) hole += "_";
  }

  auto ref = [&](const Term& t) {
    SelProof r;
    r.rule = SelProof::Rule::Ref;
    r.ref_vars = vars;
    r.ref_term = t;
    return r;
  };

  SelProof acc = ref(path.start);
  bool have_acc = false;
  Term cur = path.start;

  for (const RewriteStep& step : path.steps) {
    const NominalEquation* eq = pres.find_eq(step.instance.equation);
    if (!eq) throw Error(ErrorKind::UnknownAxiom, "no equation named '" + step.instance.equation + "'");

    SelProof ax;
    ax.rule = SelProof::Rule::Axiom;
    ax.axiom = eq->name;
    if (step.instance.direction == Direction::RL) {
      SelProof sym;
      sym.rule = SelProof::Rule::Sym;
      sym.children.push_back(std::move(ax));
      ax = std::move(sym);
    }

    // Instance: Subst of the (possibly flipped) axiom with the family theta.
    SelProof inst;
    inst.rule = SelProof::Rule::Subst;
    inst.children.push_back(std::move(ax));
    for (const auto& [x, v] : eq->context.vars.entries) {
      auto it = step.instance.theta.find(x);
      Term body;
      if (it != step.instance.theta.end()) {
        body = it->second.body;
      } else if (!vars.empty()) {
        body = Term::var(vars.front());  // variable absent from both sides
      } else {
        throw Error(ErrorKind::MissingVariable, "cannot pick a default body for '" + x + "'");
      }
      inst.children.push_back(ref(body));
      inst.subst_vars.push_back(x);
    }

    // Context wrapping: C[hole] with hole substituted by the instance.
    Term context_term = replace_at(cur, step.instance.position, Term::var(hole));
    SelProof wrap;
    wrap.rule = SelProof::Rule::Subst;
    SelProof head;
    head.rule = SelProof::Rule::Ref;
    head.ref_vars = vars;
    head.ref_vars.push_back(hole);
    head.ref_term = context_term;
    wrap.children.push_back(std::move(head));
    for (const std::string& v : vars) {
      wrap.children.push_back(ref(Term::var(v)));
      wrap.subst_vars.push_back(v);
    }
    wrap.children.push_back(std::move(inst));
    wrap.subst_vars.push_back(hole);

    if (!have_acc) {
      acc = std::move(wrap);
      have_acc = true;
    } else {
      SelProof tr;
      tr.rule = SelProof::Rule::Trans;
      tr.children.push_back(std::move(acc));
      tr.children.push_back(std::move(wrap));
      acc = std::move(tr);
    }
    cur = step.result;
  }
  return acc;
}

}  // namespace nomeq
