// Synthetic nominal rewriting: axiom instantiation, nominal matching,
// one-step rewriting in contexts, bounded bidirectional equality search,
// and the layered congruence over finite term universes.

#pragma once

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "nomeq/presentation.hpp"

namespace nomeq {

enum class Direction { LR, RL };

inline const char* to_string(Direction d) { return d == Direction::LR ? "L->R" : "R->L"; }

using Path = std::vector<int>;

inline std::string to_string(const Path& p) {
  if (p.empty()) return "/";
  std::string s;
  for (int i : p) s += "/" + std::to_string(i);
  return s;
}

struct RuleInstance {
  std::string equation;
  Direction direction = Direction::LR;
  AtomTuple b;
  SubstitutionFamily theta;
  Path position;
};

struct RewriteStep {
  RuleInstance instance;
  Term result;
};

struct RewritePath {
  Term start;
  std::vector<RewriteStep> steps;
};

inline std::string to_string(const RewritePath& path) {
  std::ostringstream os;
  Term cur = path.start;
  for (std::size_t i = 0; i < path.steps.size(); ++i) {
    const RewriteStep& st = path.steps[i];
    os << i + 1 << ": " << to_string(cur) << " --(" << st.instance.equation << ", "
       << to_string(st.instance.direction) << ", " << to_string(st.instance.position) << ", b=[";
    for (std::size_t k = 0; k < st.instance.b.size(); ++k) {
      if (k) os << ",";
      os << st.instance.b[k].display();
    }
    os << "])--> " << to_string(st.result) << "\n";
    cur = st.result;
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Instantiation: the Inst rule (((a~ b~).l) theta, ((a~ b~).r) theta).

inline std::pair<Term, Term> instantiate(const NominalEquation& eq, const AtomTuple& b,
                                         const SubstitutionFamily& theta) {
  if (b.size() != eq.context.atoms.size())
    throw Error(ErrorKind::LengthMismatch, "instance tuple length differs from the atom context");
  if (!pairwise_distinct(b))
    throw Error(ErrorKind::LengthMismatch, "instance tuple not pairwise distinct");
  std::map<std::string, std::size_t> vars;
  collect_variables(eq.lhs, vars);
  collect_variables(eq.rhs, vars);
  AtomSet bset = to_set(b);
  for (const auto& [x, nargs] : vars) {
    auto it = theta.find(x);
    if (it == theta.end()) throw Error(ErrorKind::MissingVariable, "no entry for '" + x + "'");
    auto v = eq.context.vars.valence(x);
    if (!v || it->second.binder.size() != std::size_t(*v))
      throw Error(ErrorKind::ValenceMismatch, "binder for '" + x + "' does not match its valence");
    if (!disjoint(bset, support_of(it->second)))
      throw Error(ErrorKind::FreshnessViolated,
                  "b # <c>" + to_string(it->second.body) + " fails for '" + x + "'");
  }
  Permutation mt = multi_transposition(eq.context.atoms, b);
  return {substitute(act(mt, eq.lhs), theta), substitute(act(mt, eq.rhs), theta)};
}

// ---------------------------------------------------------------------------
// Matching: inverts Inst against one side of an equation.

struct MatchCandidate {
  AtomTuple b;
  SubstitutionFamily theta;
};

namespace detail {

struct LeafObligation {
  std::string var;
  AtomTuple args;     // context-atom arguments of the pattern leaf
  const Term* subject;
};

// Structural descent binding operator parameters; leaf obligations are
// deferred until the full atom assignment is known.
inline bool match_skeleton(const Term& pattern, const Term& subject, const AtomSet& ctx_atoms,
                           std::map<Atom, Atom>& phi, std::vector<LeafObligation>& leaves) {
  if (pattern.is_var()) {
    leaves.push_back({pattern.head, pattern.atoms, &subject});
    return true;
  }
  if (subject.is_var() || pattern.head != subject.head ||
      pattern.atoms.size() != subject.atoms.size() ||
      pattern.children.size() != subject.children.size())
    return false;
  for (std::size_t i = 0; i < pattern.atoms.size(); ++i) {
    Atom p = pattern.atoms[i], s = subject.atoms[i];
    if (ctx_atoms.count(p)) {
      auto it = phi.find(p);
      if (it == phi.end())
        phi.emplace(p, s);
      else if (!(it->second == s))
        return false;
    } else if (!(p == s)) {
      return false;
    }
  }
  for (std::size_t i = 0; i < pattern.children.size(); ++i)
    if (!match_skeleton(pattern.children[i], subject.children[i], ctx_atoms, phi, leaves))
      return false;
  return true;
}

}  // namespace detail

// Sound and pool-complete matching of `side` of `eq` against `subject`:
// every returned candidate satisfies instantiate's preconditions and its
// instantiated side reproduces `subject` exactly.  Unconstrained context
// atoms range over `pool`; candidates whose substitution family would not
// cover the variables of the opposite side are not produced.
inline std::vector<MatchCandidate> match(const NominalEquation& eq, Direction side,
                                         const Term& subject, const AtomTuple& pool) {
  const Term& pattern = side == Direction::LR ? eq.lhs : eq.rhs;
  const Term& other = side == Direction::LR ? eq.rhs : eq.lhs;
  AtomSet ctx_atoms = to_set(eq.context.atoms);

  std::map<Atom, Atom> phi0;
  std::vector<detail::LeafObligation> leaves;
  if (!detail::match_skeleton(pattern, subject, ctx_atoms, phi0, leaves)) return {};

  // Injectivity of the bound part.
  {
    AtomSet imgs;
    for (const auto& [k, v] : phi0)
      if (!imgs.insert(v).second) return {};
  }

  std::map<std::string, std::size_t> needed;
  collect_variables(pattern, needed);
  collect_variables(other, needed);
  std::map<std::string, std::size_t> bound_by_pattern;
  collect_variables(pattern, bound_by_pattern);
  for (const auto& [x, n] : needed)
    if (!bound_by_pattern.count(x)) return {};  // opposite-side variable we cannot pin

  std::vector<Atom> unbound;
  for (const Atom& a : eq.context.atoms)
    if (!phi0.count(a)) unbound.push_back(a);

  std::vector<MatchCandidate> out;
  std::vector<Atom> choice(unbound.size());

  auto finish = [&](const std::map<Atom, Atom>& phi) {
    AtomTuple b;
    for (const Atom& a : eq.context.atoms) b.push_back(phi.at(a));
    if (!pairwise_distinct(b)) return;
    SubstitutionFamily theta;
    for (const auto& leaf : leaves) {
      AtomTuple imgs;
      for (const Atom& a : leaf.args) imgs.push_back(phi.at(a));
      auto it = theta.find(leaf.var);
      if (it == theta.end()) {
        AtomSet avoid = support_of(*leaf.subject);
        for (const Atom& a : imgs) avoid.insert(a);
        AtomTuple c = fresh(leaf.args.size(), avoid);
        theta.emplace(leaf.var,
                      Abstraction<Term>{c, act(multi_transposition(imgs, c), *leaf.subject)});
      } else {
        if (!(act(multi_transposition(it->second.binder, imgs), it->second.body) == *leaf.subject))
          return;
      }
    }
    AtomSet bset = to_set(b);
    for (const auto& [x, abs] : theta)
      if (!disjoint(bset, support_of(abs))) return;
    // Round-trip safety: the candidate must reproduce the subject.
    try {
      auto [li, ri] = instantiate(eq, b, theta);
      const Term& mine = side == Direction::LR ? li : ri;
      if (!(mine == subject)) return;
    } catch (const Error&) {
      return;
    }
    out.push_back({std::move(b), std::move(theta)});
  };

  // Enumerate pool assignments for the unconstrained context atoms.
  auto enumerate = [&](auto&& self, std::size_t i, std::map<Atom, Atom>& phi) -> void {
    if (i == unbound.size()) {
      finish(phi);
      return;
    }
    for (const Atom& cand : pool) {
      bool used = false;
      for (const auto& [k, v] : phi)
        if (v == cand) used = true;
      if (used) continue;
      phi.emplace(unbound[i], cand);
      self(self, i + 1, phi);
      phi.erase(unbound[i]);
    }
  };
  enumerate(enumerate, 0, phi0);

  std::sort(out.begin(), out.end(),
            [](const MatchCandidate& a, const MatchCandidate& b) { return a.b < b.b; });
  return out;
}

// ---------------------------------------------------------------------------
// One-step rewriting at all positions, both directions.

struct PoolPolicy {
  int extra_fresh = 2;
};

inline AtomTuple default_pool(const Term& t, const PoolPolicy& policy) {
  AtomSet supp = support_of(t);
  AtomTuple pool(supp.begin(), supp.end());
  for (const Atom& a : fresh(std::size_t(policy.extra_fresh), supp)) pool.push_back(a);
  return pool;
}

namespace detail {

inline const Term& at_path(const Term& t, const Path& p) {
  const Term* cur = &t;
  for (int i : p) cur = &cur->children[std::size_t(i)];
  return *cur;
}

inline Term replace_at(const Term& t, const Path& p, std::size_t i, const Term& repl) {
  if (i == p.size()) return repl;
  Term out = t;
  out.children[std::size_t(p[i])] = replace_at(t.children[std::size_t(p[i])], p, i + 1, repl);
  return out;
}

inline void collect_positions(const Term& t, Path& cur, std::vector<Path>& out) {
  out.push_back(cur);
  for (std::size_t i = 0; i < t.children.size(); ++i) {
    cur.push_back(int(i));
    collect_positions(t.children[i], cur, out);
    cur.pop_back();
  }
}

}  // namespace detail

inline Term replace_at(const Term& t, const Path& p, const Term& repl) {
  return detail::replace_at(t, p, 0, repl);
}

// All one-step rewrites of t, deduplicated by (result, position) and
// canonically ordered by (position, equation name, direction, b).
inline std::vector<RewriteStep> successors(const Term& t, const Presentation& th,
                                           const PoolPolicy& policy = {}) {
  AtomTuple pool = default_pool(t, policy);
  std::vector<Path> positions;
  Path cur;
  detail::collect_positions(t, cur, positions);

  std::vector<RewriteStep> out;
  for (const Path& pos : positions) {
    const Term& sub = detail::at_path(t, pos);
    for (const NominalEquation& eq : th.equations) {
      for (Direction dir : {Direction::LR, Direction::RL}) {
        for (MatchCandidate& cand : match(eq, dir, sub, pool)) {
          auto [li, ri] = instantiate(eq, cand.b, cand.theta);
          const Term& repl = dir == Direction::LR ? ri : li;
          RuleInstance inst{eq.name, dir, std::move(cand.b), std::move(cand.theta), pos};
          out.push_back({std::move(inst), replace_at(t, pos, repl)});
        }
      }
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const RewriteStep& a, const RewriteStep& b) {
    return std::tie(a.instance.position, a.instance.equation, a.instance.direction, a.instance.b) <
           std::tie(b.instance.position, b.instance.equation, b.instance.direction, b.instance.b);
  });
  std::set<std::pair<Path, Term>> seen;
  std::vector<RewriteStep> dedup;
  for (RewriteStep& st : out)
    if (seen.emplace(st.instance.position, st.result).second) dedup.push_back(std::move(st));
  return dedup;
}

// ---------------------------------------------------------------------------
// Bounded bidirectional equality search.

struct SearchStats {
  std::size_t expanded = 0;
  std::size_t discovered = 0;
  int depth_forward = 0;
  int depth_backward = 0;
  bool budget_exhausted = false;
};

struct EqualVerdict {
  bool equal = false;
  RewritePath path;  // replays s into t when equal
  SearchStats stats;
};

namespace detail {

struct SideState {
  std::map<Term, std::pair<Term, RuleInstance>> parent;  // term -> (predecessor, step used)
  std::map<Term, int> depth;
  std::deque<Term> frontier;
};

inline std::vector<RewriteStep> chain_from(const SideState& st, const Term& root, Term meet) {
  // Steps leading from root to meet, in order.
  std::vector<RewriteStep> steps;
  Term cur = meet;
  while (!(cur == root)) {
    const auto& [prev, inst] = st.parent.at(cur);
    steps.push_back({inst, cur});
    cur = prev;
  }
  std::reverse(steps.begin(), steps.end());
  return steps;
}

}  // namespace detail

// Semi-decision of s ~R_E t by breadth-first search from both endpoints.
// Equal verdicts carry a replayable path; Unknown never asserts inequality.
inline EqualVerdict equal_bounded(const Term& s, const Term& t, const Presentation& th,
                                  int max_depth, std::size_t node_budget,
                                  const PoolPolicy& policy = {}) {
  EqualVerdict verdict;
  verdict.path.start = s;
  if (s == t) {
    verdict.equal = true;
    return verdict;
  }

  detail::SideState fwd, bwd;
  fwd.depth[s] = 0;
  fwd.frontier.push_back(s);
  bwd.depth[t] = 0;
  bwd.frontier.push_back(t);
  SearchStats& stats = verdict.stats;

  auto build_path = [&](const Term& meet) {
    std::vector<RewriteStep> steps = detail::chain_from(fwd, s, meet);
    // Backward-side steps are replayed in reverse with flipped direction.
    Term cur = meet;
    while (!(cur == t)) {
      const auto& [prev, inst] = bwd.parent.at(cur);
      RuleInstance flipped = inst;
      flipped.direction = flipped.direction == Direction::LR ? Direction::RL : Direction::LR;
      steps.push_back({flipped, prev});
      cur = prev;
    }
    verdict.equal = true;
    verdict.path.steps = std::move(steps);
  };

  // Expand one full depth level of one side; returns the meeting term if found.
  auto expand_level = [&](detail::SideState& self, detail::SideState& othr,
                          int& depth_counter) -> std::optional<Term> {
    std::size_t level = self.frontier.size();
    ++depth_counter;
    for (std::size_t i = 0; i < level; ++i) {
      if (stats.expanded >= node_budget) {
        stats.budget_exhausted = true;
        return std::nullopt;
      }
      Term cur = self.frontier.front();
      self.frontier.pop_front();
      ++stats.expanded;
      for (RewriteStep& st : successors(cur, th, policy)) {
        if (self.depth.count(st.result)) continue;
        self.depth[st.result] = depth_counter;
        self.parent.emplace(st.result, std::make_pair(cur, st.instance));
        ++stats.discovered;
        if (othr.depth.count(st.result)) return st.result;
        self.frontier.push_back(st.result);
      }
    }
    return std::nullopt;
  };

  while (!stats.budget_exhausted &&
         stats.depth_forward + stats.depth_backward < max_depth &&
         (!fwd.frontier.empty() || !bwd.frontier.empty())) {
    bool pick_fwd;
    if (fwd.frontier.empty())
      pick_fwd = false;
    else if (bwd.frontier.empty())
      pick_fwd = true;
    else
      pick_fwd = fwd.frontier.size() <= bwd.frontier.size();
    std::optional<Term> meet =
        pick_fwd ? expand_level(fwd, bwd, stats.depth_forward)
                 : expand_level(bwd, fwd, stats.depth_backward);
    if (meet) {
      build_path(*meet);
      return verdict;
    }
  }
  return verdict;  // Unknown
}

// ---------------------------------------------------------------------------
// Layered congruence over a finite universe closed under subterms.

struct CongruenceLayers {
  std::vector<Term> universe;
  // layers[k][i] is the class id of universe[i] at layer k+1 (so layers[0]
  // realizes the axiom-instance relation and each further layer adds one
  // congruence step).
  std::vector<std::vector<int>> layers;

  std::optional<std::size_t> index_of(const Term& t) const {
    for (std::size_t i = 0; i < universe.size(); ++i)
      if (universe[i] == t) return i;
    return std::nullopt;
  }
  bool related(std::size_t layer, const Term& a, const Term& b) const {
    auto i = index_of(a), j = index_of(b);
    if (!i || !j || layer >= layers.size()) return false;
    return layers[layer][*i] == layers[layer][*j];
  }
};

inline std::vector<Term> subterm_closure(const std::vector<Term>& seeds) {
  std::set<Term> acc;
  auto add = [&](auto&& self, const Term& t) -> void {
    if (!acc.insert(t).second) return;
    for (const Term& c : t.children) self(self, c);
  };
  for (const Term& t : seeds) add(add, t);
  return std::vector<Term>(acc.begin(), acc.end());
}

namespace detail {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t i) {
    while (parent_[i] != i) i = parent_[i] = parent_[parent_[i]];
    return i;
  }
  void unite(std::size_t i, std::size_t j) { parent_[find(i)] = find(j); }
  std::vector<int> classes() {
    std::vector<int> out(parent_.size());
    for (std::size_t i = 0; i < parent_.size(); ++i) out[i] = int(find(i));
    return out;
  }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace detail

inline CongruenceLayers layered_congruence(const std::vector<Term>& universe,
                                           const Presentation& th, int n,
                                           const PoolPolicy& policy = {}) {
  std::set<Term> members(universe.begin(), universe.end());
  for (const Term& t : universe)
    for (const Term& c : t.children)
      if (!members.count(c))
        throw Error(ErrorKind::ScopeError, "universe not closed under subterms");

  CongruenceLayers out;
  out.universe = universe;
  if (n <= 0) return out;

  std::map<Term, std::size_t> pos;
  for (std::size_t i = 0; i < universe.size(); ++i) pos.emplace(universe[i], i);
  auto index_of = [&](const Term& t) -> std::optional<std::size_t> {
    auto it = pos.find(t);
    if (it == pos.end()) return std::nullopt;
    return it->second;
  };
  // Child indices, valid by the closure check above.
  std::vector<std::vector<std::size_t>> kids(universe.size());
  for (std::size_t i = 0; i < universe.size(); ++i)
    for (const Term& c : universe[i].children) kids[i].push_back(*index_of(c));

  AtomSet all_atoms;
  for (const Term& t : universe)
    for (const Atom& a : support_of(t)) all_atoms.insert(a);
  AtomTuple pool(all_atoms.begin(), all_atoms.end());
  for (const Atom& a : fresh(std::size_t(policy.extra_fresh), all_atoms)) pool.push_back(a);

  // Layer 1: equivalence closure of the axiom instances inside the universe.
  detail::UnionFind uf(universe.size());
  for (std::size_t i = 0; i < universe.size(); ++i) {
    for (const NominalEquation& eq : th.equations) {
      for (Direction dir : {Direction::LR, Direction::RL}) {
        for (const MatchCandidate& cand : match(eq, dir, universe[i], pool)) {
          auto [li, ri] = instantiate(eq, cand.b, cand.theta);
          const Term& othr = dir == Direction::LR ? ri : li;
          if (auto j = index_of(othr)) uf.unite(i, *j);
        }
      }
    }
  }
  out.layers.push_back(uf.classes());

  // Layer k: previous layer plus one congruence step, closed under
  // equivalence by construction.
  for (int layer = 2; layer <= n; ++layer) {
    const std::vector<int>& prev = out.layers.back();
    for (std::size_t i = 0; i < universe.size(); ++i) {
      const Term& a = universe[i];
      if (a.is_var()) continue;
      for (std::size_t j = i + 1; j < universe.size(); ++j) {
        const Term& b = universe[j];
        if (b.is_var() || a.head != b.head || a.atoms != b.atoms ||
            a.children.size() != b.children.size())
          continue;
        bool all = true;
        for (std::size_t k = 0; k < a.children.size() && all; ++k)
          all = prev[kids[i][k]] == prev[kids[j][k]];
        if (all) uf.unite(i, j);
      }
    }
    out.layers.push_back(uf.classes());
  }
  return out;
}

}  // namespace nomeq
