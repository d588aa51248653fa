#pragma once

// The three moves that generate galaxy edges: blow-ups (replace a generator
// that acts like a transposition inside a small parabolic by two new ones,
// raising the rank), blow-downs (their inverses, recovered by guessing the
// two generators a blow-up would have introduced and verifying), and
// elementary twists (reattach part of the system through the longest element
// of a spherical parabolic).

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "coxgalaxy/canonical.hpp"
#include "coxgalaxy/classify.hpp"
#include "coxgalaxy/coxsys.hpp"

namespace coxgalaxy {

// A generator t that becomes a transposition-like element inside the
// spherical parabolic on j: j is of type B_{2k+1} with t the endpoint
// carrying the 4-edge, or of type I2(4k+2) with t either member. v is t's
// distinguished neighbour in j (the 4-edge partner, respectively the other
// member). Outside generators must either commute with all of j or have an
// ∞ label toward t.
struct PseudoTransposition {
  int t = 0;
  int v = 0;
  GeneratorSubset j;
  SphericalType jtype;
};

namespace detail {

inline bool commutes_with_all(const CoxeterMatrix& m, int s, const GeneratorSubset& j) {
  for (int u : j)
    if (s != u && m.label(s, u) != Label::finite(2)) return false;
  return true;
}

inline bool outside_condition(const CoxeterMatrix& m, int t, const GeneratorSubset& j) {
  for (int s = 0; s < m.rank(); ++s) {
    if (std::find(j.begin(), j.end(), s) != j.end()) continue;
    if (m.label(s, t).is_infinite()) continue;
    if (!commutes_with_all(m, s, j)) return false;
  }
  return true;
}

inline bool in_subset(const GeneratorSubset& j, int s) {
  return std::find(j.begin(), j.end(), s) != j.end();
}

// Distinguished generator of a type-B path: the endpoint of the 4-edge that
// is also an endpoint of the path. Returns {t, v} or nullopt.
inline std::optional<std::pair<int, int>> four_edge_endpoint(const CoxeterMatrix& m,
                                                             const GeneratorSubset& j) {
  auto path = dynkin_path(m, j);
  if (!path) return std::nullopt;
  const auto& p = *path;
  int r = static_cast<int>(p.size());
  if (r < 2) return std::nullopt;
  if (m.label(p[0], p[1]) == Label::finite(4)) return std::make_pair(p[0], p[1]);
  if (m.label(p[r - 1], p[r - 2]) == Label::finite(4)) return std::make_pair(p[r - 1], p[r - 2]);
  return std::nullopt;
}

inline bool pseudo_transposition_type(const SphericalType& t) {
  if (t.family == Family::B && t.rank >= 3 && t.rank % 2 == 1) return true;
  if (t.family == Family::I2 && t.edge % 4 == 2) return true;
  return false;
}

template <typename Fn>
inline void for_each_irreducible_spherical_subset(const CoxeterMatrix& m, Fn&& fn) {
  int n = m.rank();
  if (n > 24) throw RankTooLargeError("subset enumeration needs rank <= 24");
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    if (std::popcount(mask) < 2) continue;
    GeneratorSubset j;
    for (int s = 0; s < n; ++s)
      if (mask & (1u << s)) j.push_back(s);
    CoxeterMatrix sub = m.restricted(j);
    if (irreducible_components(sub).size() != 1) continue;
    GeneratorSubset all(j.size());
    std::iota(all.begin(), all.end(), 0);
    auto type = spherical_type(sub, all);
    if (!type) continue;
    fn(j, *type);
  }
}

}  // namespace detail

inline std::vector<PseudoTransposition> find_pseudo_transpositions(const CoxeterMatrix& m) {
  std::vector<PseudoTransposition> out;
  detail::for_each_irreducible_spherical_subset(m, [&](const GeneratorSubset& j,
                                                       const SphericalType& type) {
    if (!detail::pseudo_transposition_type(type)) return;
    if (type.family == Family::B) {
      auto tv = detail::four_edge_endpoint(m, j);
      if (tv && detail::outside_condition(m, tv->first, j))
        out.push_back({tv->first, tv->second, j, type});
    } else {
      // Both members qualify structurally; if both pass the outside
      // condition the two moves agree up to an automorphism swapping them,
      // so the smaller index represents the pair.
      for (int a : {0, 1})
        if (detail::outside_condition(m, j[a], j)) {
          out.push_back({j[a], j[1 - a], j, type});
          break;
        }
    }
  });
  return out;
}

namespace detail {

inline void validate_pseudo_transposition(const CoxeterMatrix& m, const PseudoTransposition& pt) {
  if (!in_subset(pt.j, pt.t) || !in_subset(pt.j, pt.v) || pt.t == pt.v)
    throw InvalidMoveError("t and v must be distinct members of j");
  CoxeterMatrix sub = m.restricted(pt.j);
  if (irreducible_components(sub).size() != 1)
    throw InvalidMoveError("j must be irreducible");
  GeneratorSubset all(pt.j.size());
  std::iota(all.begin(), all.end(), 0);
  auto type = spherical_type(sub, all);
  if (!type || !pseudo_transposition_type(*type))
    throw InvalidMoveError("j is not of a contractible type");
  if (*type != pt.jtype)
    throw InvalidMoveError("declared parabolic type does not match j");
  if (type->family == Family::B) {
    auto tv = four_edge_endpoint(m, pt.j);
    if (!tv || tv->first != pt.t || tv->second != pt.v)
      throw InvalidMoveError("t must be the path endpoint on the 4-edge");
  } else {
    if (pt.j.size() != 2) throw InvalidMoveError("dihedral j must have two members");
  }
  if (!outside_condition(m, pt.t, pt.j))
    throw InvalidMoveError("an outside generator violates the commutation condition");
}

inline std::string fresh_name(const std::vector<std::string>& taken, std::string base) {
  while (std::find(taken.begin(), taken.end(), base) != taken.end()) base += "'";
  return base;
}

}  // namespace detail

// Replaces t by the pair {tvt, w_j}: tvt sits in t's slot and behaves like v
// conjugated by t (its label toward v halves), w_j is the longest element of
// W_j, appended last, commuting with all of j and with tvt. Labels toward
// generators outside j follow t's: ∞ stays ∞, anything else becomes 2.
// The result has rank one higher.
inline CoxeterMatrix blow_up(const CoxeterMatrix& m, const PseudoTransposition& pt) {
  detail::validate_pseudo_transposition(m, pt);
  int n = m.rank();
  std::vector<std::string> names = m.names();
  names[pt.t] = detail::fresh_name(names, m.name(pt.v) + "^" + m.name(pt.t));
  {
    std::string wname = "w{";
    bool first = true;
    for (int u : pt.j) {
      if (!first) wname += ",";
      first = false;
      wname += m.name(u);
    }
    wname += "}";
    names.push_back(detail::fresh_name(names, wname));
  }

  int a = pt.t;  // slot of tvt
  int w = n;     // slot of w_j
  CoxeterMatrix::Builder b(names);
  for (int i = 0; i < n; ++i)
    for (int k = i + 1; k < n; ++k)
      if (i != a && k != a) b.set(i, k, m.label(i, k));
  std::uint32_t half = m.label(pt.t, pt.v).finite_value() / 2;
  for (int y = 0; y < n; ++y) {
    if (y == a) continue;
    Label toward_a = Label::finite(2), toward_w = Label::finite(2);
    if (y == pt.v) {
      toward_a = Label::finite(half);
    } else if (detail::in_subset(pt.j, y)) {
      toward_a = m.label(pt.v, y);
    } else if (m.label(pt.t, y).is_infinite()) {
      toward_a = Label::infinity();
      toward_w = Label::infinity();
    }
    b.set(a, y, toward_a);
    b.set(w, y, toward_w);
  }
  b.set(a, w, Label::finite(2));
  return b.build();
}

// One way to run a blow-up backwards: `target` is the lower-rank system and
// `move` the pseudo-transposition in it whose blow-up returns to the source
// (up to canonical relabeling). x and w are the source generators that
// played tvt and w_j.
struct BlowDownOption {
  CoxeterMatrix target;
  PseudoTransposition move;
  int x = 0;
  int w = 0;
};

namespace detail {

constexpr int kTailBudget = 2048;

// Grows candidate tails for a type-B reconstruction: vertices q with label 3
// to the previous tail member and label 2 to x, v, w and all earlier tail
// members. Invokes fn on every odd-length tail.
template <typename Fn>
inline void grow_tails(const CoxeterMatrix& m, int x, int w, int v, GeneratorSubset& tail,
                       std::vector<char>& used, int& budget, Fn&& fn) {
  if (budget <= 0) return;
  --budget;
  if (tail.size() % 2 == 1) fn(tail);
  int last = tail.back();
  for (int q = 0; q < m.rank(); ++q) {
    if (used[q] || q == x || q == w || q == v) continue;
    if (m.label(last, q) != Label::finite(3)) continue;
    if (m.label(x, q) != Label::finite(2) || m.label(v, q) != Label::finite(2) ||
        m.label(w, q) != Label::finite(2))
      continue;
    bool induced = true;
    for (size_t i = 0; i + 1 < tail.size() && induced; ++i)
      if (m.label(tail[i], q) != Label::finite(2)) induced = false;
    if (!induced) continue;
    used[q] = 1;
    tail.push_back(q);
    grow_tails(m, x, w, v, tail, used, budget, fn);
    tail.pop_back();
    used[q] = 0;
  }
}

}  // namespace detail

// Enumerates the systems this one blows down to, one option per distinct
// canonical target. Candidates are guessed from the footprint a blow-up
// leaves (a generator w commuting-or-∞ with everything, a partner x with
// m(x,w)=2) and each guess is verified by blowing the reconstruction back
// up and comparing canonical forms.
inline std::vector<BlowDownOption> find_blow_downs(const CoxeterMatrix& m) {
  std::vector<BlowDownOption> out;
  std::vector<std::string> seen_targets;
  int n = m.rank();
  if (n < 3) return out;
  std::string self_canon = canonical_key(m);

  auto try_candidate = [&](int x, int w, int v, Label tv_label, const GeneratorSubset& j_rest) {
    // Build the lower-rank system: drop w, let a fresh generator t take x's
    // slot. t's labels: tv_label toward v, otherwise 2 except ∞ where x had ∞.
    GeneratorSubset keep;
    for (int s = 0; s < n; ++s)
      if (s != w) keep.push_back(s);
    std::vector<int> pos(n, -1);
    std::vector<std::string> names;
    for (size_t a = 0; a < keep.size(); ++a) {
      pos[keep[a]] = static_cast<int>(a);
      names.push_back(m.name(keep[a]));
    }
    names[pos[x]] = detail::fresh_name(names, "t");
    CoxeterMatrix::Builder b(names);
    for (size_t a = 0; a < keep.size(); ++a)
      for (size_t c = a + 1; c < keep.size(); ++c) {
        int ya = keep[a], yc = keep[c];
        if (ya == x || yc == x) continue;
        b.set(static_cast<int>(a), static_cast<int>(c), m.label(ya, yc));
      }
    for (int y : keep) {
      if (y == x) continue;
      Label l = Label::finite(2);
      if (y == v) l = tv_label;
      else if (m.label(x, y).is_infinite()) l = Label::infinity();
      b.set(pos[x], pos[y], l);
    }
    CoxeterMatrix target = b.build();

    PseudoTransposition move;
    move.t = pos[x];
    move.v = pos[v];
    move.j = {pos[x], pos[v]};
    for (int q : j_rest) move.j.push_back(pos[q]);
    std::sort(move.j.begin(), move.j.end());
    CoxeterMatrix sub = target.restricted(move.j);
    if (irreducible_components(sub).size() != 1) return;
    GeneratorSubset all(move.j.size());
    std::iota(all.begin(), all.end(), 0);
    auto type = spherical_type(sub, all);
    if (!type || !detail::pseudo_transposition_type(*type)) return;
    move.jtype = *type;
    if (!detail::outside_condition(target, move.t, move.j)) return;
    CoxeterMatrix back = blow_up(target, move);
    if (canonical_key(back) != self_canon) return;
    std::string key = canonical_key(target);
    if (std::find(seen_targets.begin(), seen_targets.end(), key) != seen_targets.end()) return;
    seen_targets.push_back(key);
    out.push_back({std::move(target), std::move(move), x, w});
  };

  for (int w = 0; w < n; ++w) {
    bool plain = true;
    for (int y = 0; y < n && plain; ++y) {
      if (y == w) continue;
      Label l = m.label(w, y);
      if (!l.is_infinite() && l != Label::finite(2)) plain = false;
    }
    if (!plain) continue;
    for (int x = 0; x < n; ++x) {
      if (x == w || m.label(x, w) != Label::finite(2)) continue;
      for (int v = 0; v < n; ++v) {
        if (v == x || v == w) continue;
        if (m.label(w, v) != Label::finite(2)) continue;
        Label l = m.label(x, v);
        if (l.is_odd_finite()) {
          try_candidate(x, w, v, Label::finite(2 * l.finite_value()), {});
        } else if (l == Label::finite(2)) {
          for (int c = 0; c < n; ++c) {
            if (c == x || c == w || c == v) continue;
            if (m.label(x, c) != Label::finite(3) || m.label(v, c) != Label::finite(3))
              continue;
            if (m.label(w, c) != Label::finite(2)) continue;
            GeneratorSubset tail{c};
            std::vector<char> used(n, 0);
            used[c] = 1;
            int budget = detail::kTailBudget;
            detail::grow_tails(m, x, w, v, tail, used, budget, [&](const GeneratorSubset& t) {
              GeneratorSubset rest(t.begin(), t.end());
              try_candidate(x, w, v, Label::finite(4), rest);
            });
          }
        }
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Elementary twists.

struct TwistDescriptor {
  GeneratorSubset j;  // irreducible spherical
  GeneratorSubset a;  // side left alone
  GeneratorSubset b;  // side rewritten through the longest element of W_j
};

// The permutation of generators induced by conjugation with the longest
// element of the parabolic on j (identity outside j). Nontrivial only for
// types A_n (n>=2: path reversal), D_odd (swap of the two short legs), E6
// (reflection of the long path) and I2(odd) (swap).
inline std::vector<int> longest_element_permutation(const CoxeterMatrix& m,
                                                    const GeneratorSubset& j) {
  std::vector<int> pi(m.rank());
  std::iota(pi.begin(), pi.end(), 0);
  if (j.empty()) throw InvalidMoveError("empty parabolic");
  CoxeterMatrix sub = m.restricted(j);
  if (irreducible_components(sub).size() != 1)
    throw NotIrreducibleError("parabolic must be irreducible");
  GeneratorSubset all(j.size());
  std::iota(all.begin(), all.end(), 0);
  auto type = spherical_type(sub, all);
  if (!type) throw InvalidMoveError("parabolic must be spherical");

  auto swap_in = [&](int la, int lb) { std::swap(pi[j[la]], pi[j[lb]]); };

  if (type->family == Family::A && type->rank >= 2) {
    auto path = detail::dynkin_path(sub, all);
    int k = static_cast<int>(path->size());
    for (int i = 0; i * 2 < k; ++i) swap_in((*path)[i], (*path)[k - 1 - i]);
  } else if (type->family == Family::I2 && type->edge % 2 == 1) {
    swap_in(0, 1);
  } else if ((type->family == Family::D && type->rank % 2 == 1) ||
             type->family == Family::E) {
    if (type->family == Family::E && type->rank != 6) return pi;
    int k = static_cast<int>(j.size());
    std::vector<std::vector<int>> adj(k);
    for (int p = 0; p < k; ++p)
      for (int q = p + 1; q < k; ++q)
        if (dynkin_adjacent(sub, p, q)) {
          adj[p].push_back(q);
          adj[q].push_back(p);
        }
    int center = -1;
    for (int p = 0; p < k; ++p)
      if (adj[p].size() == 3) center = p;
    std::vector<GeneratorSubset> legs;
    for (int first : adj[center]) {
      GeneratorSubset leg{first};
      int prev = center, cur = first;
      for (;;) {
        int next = -1;
        for (int q : adj[cur])
          if (q != prev) next = q;
        if (next == -1) break;
        prev = cur;
        cur = next;
        leg.push_back(cur);
      }
      legs.push_back(std::move(leg));
    }
    std::sort(legs.begin(), legs.end(),
              [](const GeneratorSubset& a, const GeneratorSubset& b) {
                return a.size() != b.size() ? a.size() < b.size() : a < b;
              });
    if (type->family == Family::D) {
      swap_in(legs[0][0], legs[1][0]);  // the two short legs
    } else {
      for (size_t i = 0; i < 2; ++i) swap_in(legs[1][i], legs[2][i]);
    }
  }
  return pi;
}

namespace detail {

inline GeneratorSubset perp_of(const CoxeterMatrix& m, const GeneratorSubset& j) {
  GeneratorSubset perp;
  for (int s = 0; s < m.rank(); ++s) {
    if (in_subset(j, s)) continue;
    if (commutes_with_all(m, s, j)) perp.push_back(s);
  }
  return perp;
}

inline void validate_twist(const CoxeterMatrix& m, const TwistDescriptor& d) {
  GeneratorSubset perp = perp_of(m, d.j);
  std::vector<char> side(m.rank(), 0);  // 1 = j, 2 = perp, 3 = a, 4 = b
  for (int s : d.j) side[s] = 1;
  for (int s : perp) side[s] = 2;
  for (int s : d.a) {
    if (side[s]) throw InvalidMoveError("side A overlaps j, its centralizer or itself");
    side[s] = 3;
  }
  for (int s : d.b) {
    if (side[s]) throw InvalidMoveError("side B overlaps another part");
    side[s] = 4;
  }
  for (int s = 0; s < m.rank(); ++s)
    if (!side[s]) throw InvalidMoveError("generator assigned to no part");
  for (int x : d.a)
    for (int y : d.b)
      if (!m.label(x, y).is_infinite())
        throw InvalidMoveError("sides A and B must be fully separated by ∞ labels");
}

}  // namespace detail

// Rewrites every label between side B and j through the longest-element
// permutation of j; everything else is untouched. Applying the same twist
// twice restores the original matrix.
inline CoxeterMatrix apply_twist(const CoxeterMatrix& m, const TwistDescriptor& d) {
  detail::validate_twist(m, d);
  std::vector<int> pi = longest_element_permutation(m, d.j);
  CoxeterMatrix::Builder bld(m.names());
  for (int i = 0; i < m.rank(); ++i)
    for (int k = i + 1; k < m.rank(); ++k) bld.set(i, k, m.label(i, k));
  for (int b : d.b)
    for (int j : d.j) bld.set(b, j, m.label(b, pi[j]));
  return bld.build();
}

inline bool is_twist_trivial(const CoxeterMatrix& m, const TwistDescriptor& d) {
  return canonical_key(apply_twist(m, d)) == canonical_key(m);
}

// Every admissible (j, a, b): j irreducible spherical, the rest of the
// system minus j's centralizer split into parts with only ∞ labels between
// them, distributed over the two sides in all ways.
inline std::vector<TwistDescriptor> enumerate_twist_candidates(const CoxeterMatrix& m) {
  std::vector<TwistDescriptor> out;
  int n = m.rank();
  if (n > 24) throw RankTooLargeError("subset enumeration needs rank <= 24");
  auto handle_j = [&](const GeneratorSubset& j) {
    GeneratorSubset perp = detail::perp_of(m, j);
    GeneratorSubset rest;
    for (int s = 0; s < n; ++s)
      if (!detail::in_subset(j, s) && !detail::in_subset(perp, s)) rest.push_back(s);
    // Components of `rest` under finite labels must stay on one side.
    int k = static_cast<int>(rest.size());
    std::vector<int> comp(k, -1);
    int c = 0;
    for (int i = 0; i < k; ++i) {
      if (comp[i] != -1) continue;
      comp[i] = c;
      GeneratorSubset stack{i};
      while (!stack.empty()) {
        int cur = stack.back();
        stack.pop_back();
        for (int other = 0; other < k; ++other)
          if (comp[other] == -1 && !m.label(rest[cur], rest[other]).is_infinite()) {
            comp[other] = c;
            stack.push_back(other);
          }
      }
      ++c;
    }
    for (std::uint32_t pick = 0; pick < (1u << c); ++pick) {
      TwistDescriptor d;
      d.j = j;
      for (int i = 0; i < k; ++i)
        (pick & (1u << comp[i]) ? d.b : d.a).push_back(rest[i]);
      out.push_back(std::move(d));
    }
  };
  for (int s = 0; s < n; ++s) handle_j({s});
  detail::for_each_irreducible_spherical_subset(
      m, [&](const GeneratorSubset& j, const SphericalType&) { handle_j(j); });
  return out;
}

// Candidates that can change the matrix: both sides populated and a
// parabolic whose longest element permutes j nontrivially. (The result may
// still be isomorphic to the input; is_twist_trivial decides that.)
inline std::vector<TwistDescriptor> enumerate_twists(const CoxeterMatrix& m) {
  std::vector<TwistDescriptor> out;
  std::vector<int> identity(m.rank());
  std::iota(identity.begin(), identity.end(), 0);
  for (auto& d : enumerate_twist_candidates(m)) {
    if (d.j.size() < 2 || d.a.empty() || d.b.empty()) continue;
    if (longest_element_permutation(m, d.j) == identity) continue;
    out.push_back(std::move(d));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Summary statistics and move provenance.

// u: blow-ups available. d: distinct blow-down targets. p: parabolic subsets
// of the transposition-flavored types (B_odd, D_odd incl. A3, I2(4k+2),
// I2(odd) incl. A2).
struct MoveStatistics {
  int u = 0;
  int d = 0;
  int p = 0;
};

inline MoveStatistics statistics(const CoxeterMatrix& m) {
  MoveStatistics st;
  st.u = static_cast<int>(find_pseudo_transpositions(m).size());
  st.d = static_cast<int>(find_blow_downs(m).size());
  detail::for_each_irreducible_spherical_subset(m, [&](const GeneratorSubset&,
                                                       const SphericalType& t) {
    bool special = false;
    if (t.family == Family::A && (t.rank == 2 || t.rank == 3)) special = true;
    if (t.family == Family::B && t.rank % 2 == 1) special = true;
    if (t.family == Family::D && t.rank % 2 == 1) special = true;
    if (t.family == Family::I2 && (t.edge % 2 == 1 || t.edge % 4 == 2)) special = true;
    if (special) ++st.p;
  });
  return st;
}

enum class MoveKind { BlowUp, BlowDown, Twist, Composite };

inline std::string move_kind_name(MoveKind k) {
  switch (k) {
    case MoveKind::BlowUp: return "blow-up";
    case MoveKind::BlowDown: return "blow-down";
    case MoveKind::Twist: return "twist";
    case MoveKind::Composite: return "composite";
  }
  return "?";
}

struct MoveRecord {
  MoveKind kind = MoveKind::Composite;
  std::string from_canon;
  std::string to_canon;
  std::string description;
};

inline MoveRecord inverted(const MoveRecord& r) {
  MoveRecord inv = r;
  std::swap(inv.from_canon, inv.to_canon);
  if (r.kind == MoveKind::BlowUp) inv.kind = MoveKind::BlowDown;
  else if (r.kind == MoveKind::BlowDown) inv.kind = MoveKind::BlowUp;
  inv.description = "reverse of: " + r.description;
  return inv;
}

inline std::string subset_names(const CoxeterMatrix& m, const GeneratorSubset& j) {
  std::string s = "{";
  bool first = true;
  for (int u : j) {
    if (!first) s += ",";
    first = false;
    s += m.name(u);
  }
  return s + "}";
}

inline std::string describe(const CoxeterMatrix& m, const PseudoTransposition& pt) {
  return "t=" + m.name(pt.t) + " J=" + subset_names(m, pt.j) + " type=" + pt.jtype.str();
}

inline std::string describe(const CoxeterMatrix& m, const TwistDescriptor& d) {
  return "J=" + subset_names(m, d.j) + " A=" + subset_names(m, d.a) +
         " B=" + subset_names(m, d.b);
}

}  // namespace coxgalaxy
