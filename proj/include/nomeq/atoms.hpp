// Atoms, finite permutations, multi-transpositions, freshness, and
// generic alpha-equivalence of multi-atom abstractions.

#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace nomeq {

// ---------------------------------------------------------------------------
// Errors

enum class ErrorKind {
  LengthMismatch,
  MissingVariable,
  ValenceMismatch,
  SyntaxError,
  ScopeError,
  UnknownOperator,
  UnknownAxiom,
  SideConditionViolated,
  ChildMismatch,
  FreshnessViolated,
  MissingAssignment,
  SeparationViolated,
};

inline const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::MissingVariable: return "MissingVariable";
    case ErrorKind::ValenceMismatch: return "ValenceMismatch";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::ScopeError: return "ScopeError";
    case ErrorKind::UnknownOperator: return "UnknownOperator";
    case ErrorKind::UnknownAxiom: return "UnknownAxiom";
    case ErrorKind::SideConditionViolated: return "SideConditionViolated";
    case ErrorKind::ChildMismatch: return "ChildMismatch";
    case ErrorKind::FreshnessViolated: return "FreshnessViolated";
    case ErrorKind::MissingAssignment: return "MissingAssignment";
    case ErrorKind::SeparationViolated: return "SeparationViolated";
  }
  return "?";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

// ---------------------------------------------------------------------------
// Atoms

// An atom is identified by its index; indices 0..25 display as a..z,
// larger ones as aN.  Display never affects semantics.
struct Atom {
  std::uint32_t index{};
  auto operator<=>(const Atom&) const = default;

  std::string display() const {
    if (index < 26) return std::string(1, char('a' + index));
    return "a" + std::to_string(index);
  }
};

using AtomTuple = std::vector<Atom>;
using AtomSet = std::set<Atom>;

inline bool pairwise_distinct(const AtomTuple& t) {
  AtomSet s(t.begin(), t.end());
  return s.size() == t.size();
}

inline AtomSet to_set(const AtomTuple& t) { return AtomSet(t.begin(), t.end()); }

inline bool disjoint(const AtomSet& a, const AtomSet& b) {
  for (const Atom& x : a)
    if (b.count(x)) return false;
  return true;
}

// Smallest-index atoms not in `avoid`, ascending.
inline AtomTuple fresh(std::size_t n, const AtomSet& avoid) {
  AtomTuple out;
  std::uint32_t i = 0;
  while (out.size() < n) {
    if (!avoid.count(Atom{i})) out.push_back(Atom{i});
    ++i;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Finite permutations, stored sparsely (moved atoms only).

class Permutation {
 public:
  Permutation() = default;

  // Entries with image = key are dropped; the map must be a bijection of its
  // key set onto itself.
  static Permutation from_map(std::map<Atom, Atom> m) {
    for (auto it = m.begin(); it != m.end();) {
      if (it->first == it->second)
        it = m.erase(it);
      else
        ++it;
    }
    AtomSet keys, imgs;
    for (const auto& [k, v] : m) {
      keys.insert(k);
      imgs.insert(v);
    }
    if (keys != imgs) throw Error(ErrorKind::LengthMismatch, "map is not a bijection of its key set");
    Permutation p;
    p.moved_ = std::move(m);
    return p;
  }

  static Permutation transposition(Atom a, Atom b) {
    if (a == b) return Permutation{};
    return from_map({{a, b}, {b, a}});
  }

  Atom operator()(Atom a) const {
    auto it = moved_.find(a);
    return it == moved_.end() ? a : it->second;
  }

  bool is_identity() const { return moved_.empty(); }

  const std::map<Atom, Atom>& moved() const { return moved_; }

  AtomSet domain() const {
    AtomSet s;
    for (const auto& [k, v] : moved_) s.insert(k);
    return s;
  }

  Permutation inverse() const {
    std::map<Atom, Atom> inv;
    for (const auto& [k, v] : moved_) inv[v] = k;
    Permutation p;
    p.moved_ = std::move(inv);
    return p;
  }

  bool operator==(const Permutation&) const = default;

 private:
  std::map<Atom, Atom> moved_;
};

// compose(p2, p1)(a) = p2(p1(a)).
inline Permutation compose(const Permutation& p2, const Permutation& p1) {
  std::map<Atom, Atom> m;
  AtomSet dom = p1.domain();
  for (const Atom& a : p2.domain()) dom.insert(a);
  for (const Atom& a : dom) {
    Atom b = p2(p1(a));
    if (!(b == a)) m[a] = b;
  }
  Permutation p;
  p = Permutation::from_map(std::move(m));
  return p;
}

// ---------------------------------------------------------------------------
// Multi-transpositions.
//
// (a~ b~) maps a_i to b_i and fixes every atom outside {a~} u {b~}; the
// leftover atoms {b~}\{a~} are mapped onto {a~}\{b~}.  The completion of
// that leftover map is only constrained to be a bijection; the canonical
// choice pairs them sorted-to-sorted.  ReverseSorted is a second admissible
// choice used to test completion-independence of downstream results.

enum class MtCompletion { Sorted, ReverseSorted };

namespace detail {
inline MtCompletion& mt_completion() {
  static MtCompletion c = MtCompletion::Sorted;
  return c;
}
}  // namespace detail

// Scoped override of the leftover-completion rule (test knob).
class MtCompletionOverride {
 public:
  explicit MtCompletionOverride(MtCompletion c) : prev_(detail::mt_completion()) {
    detail::mt_completion() = c;
  }
  ~MtCompletionOverride() { detail::mt_completion() = prev_; }
  MtCompletionOverride(const MtCompletionOverride&) = delete;

 private:
  MtCompletion prev_;
};

inline Permutation multi_transposition(const AtomTuple& src, const AtomTuple& dst) {
  if (src.size() != dst.size())
    throw Error(ErrorKind::LengthMismatch, "multi-transposition tuples differ in length");
  if (!pairwise_distinct(src) || !pairwise_distinct(dst))
    throw Error(ErrorKind::LengthMismatch, "multi-transposition tuples must be internally distinct");
  std::map<Atom, Atom> m;
  AtomSet srcs = to_set(src), dsts = to_set(dst);
  for (std::size_t i = 0; i < src.size(); ++i) m[src[i]] = dst[i];
  std::vector<Atom> leftover_dst, leftover_src;
  for (const Atom& b : dsts)
    if (!srcs.count(b)) leftover_dst.push_back(b);
  for (const Atom& a : srcs)
    if (!dsts.count(a)) leftover_src.push_back(a);
  if (detail::mt_completion() == MtCompletion::ReverseSorted)
    std::reverse(leftover_src.begin(), leftover_src.end());
  for (std::size_t i = 0; i < leftover_dst.size(); ++i) m[leftover_dst[i]] = leftover_src[i];
  return Permutation::from_map(std::move(m));
}

// ---------------------------------------------------------------------------
// Generic permutation action and support.
//
// Every supported kind provides act(p, v) and support_of(v); the generic
// abstraction and alpha-equivalence below work over any such kind.

inline Atom act(const Permutation& p, Atom a) { return p(a); }

inline AtomTuple act(const Permutation& p, const AtomTuple& t) {
  AtomTuple out;
  out.reserve(t.size());
  for (const Atom& a : t) out.push_back(p(a));
  return out;
}

inline AtomSet support_of(Atom a) { return {a}; }
inline AtomSet support_of(const AtomTuple& t) { return to_set(t); }

template <class V>
struct Abstraction {
  AtomTuple binder;  // pairwise distinct
  V body;
  bool operator==(const Abstraction&) const = default;
};

template <class V>
Abstraction<V> act(const Permutation& p, const Abstraction<V>& x) {
  return {act(p, x.binder), act(p, x.body)};
}

template <class V>
AtomSet support_of(const Abstraction<V>& x) {
  AtomSet s = support_of(x.body);
  for (const Atom& a : x.binder) s.erase(a);
  return s;
}

// (a~,x) =_alpha (b~,y) iff (a~ c~).x = (b~ c~).y for one fresh c~.
template <class V>
bool alpha_eq(const Abstraction<V>& x, const Abstraction<V>& y) {
  if (x.binder.size() != y.binder.size()) return false;
  AtomSet avoid = support_of(x.body);
  for (const Atom& a : support_of(y.body)) avoid.insert(a);
  for (const Atom& a : x.binder) avoid.insert(a);
  for (const Atom& a : y.binder) avoid.insert(a);
  AtomTuple c = fresh(x.binder.size(), avoid);
  return act(multi_transposition(x.binder, c), x.body) ==
         act(multi_transposition(y.binder, c), y.body);
}

// ---------------------------------------------------------------------------
// Atom syntax: a..z name indices 0..25, aN names index N.

inline std::string to_string(Atom a) { return a.display(); }

inline Atom parse_atom(const std::string& s) {
  if (s.size() == 1 && s[0] >= 'a' && s[0] <= 'z') return Atom{std::uint32_t(s[0] - 'a')};
  if (s.size() >= 2 && s[0] == 'a') {
    std::uint32_t n = 0;
    for (std::size_t i = 1; i < s.size(); ++i) {
      if (!isdigit(static_cast<unsigned char>(s[i])))
        throw Error(ErrorKind::SyntaxError, "bad atom name '" + s + "'");
      n = n * 10 + std::uint32_t(s[i] - '0');
    }
    return Atom{n};
  }
  throw Error(ErrorKind::SyntaxError, "bad atom name '" + s + "'");
}

}  // namespace nomeq
