#pragma once

// Recognition of spherical (finite) types and the coarse isomorphism
// filters built on them. Types are recognized by diagram shape, never by
// determinants, and normalized so that each class has one spelling:
// I2(3) = A2, I2(4) = B2, and the rank-3 fork D3 = A3.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "coxgalaxy/canonical.hpp"
#include "coxgalaxy/coxsys.hpp"

namespace coxgalaxy {

enum class Family { A, B, D, E, F, H, I2 };

struct SphericalType {
  Family family;
  int rank = 0;
  std::uint32_t edge = 0;  // I2 only: the dihedral label m

  friend bool operator==(const SphericalType& a, const SphericalType& b) = default;
  friend auto operator<=>(const SphericalType& a, const SphericalType& b) = default;

  std::string str() const {
    switch (family) {
      case Family::A: return "A" + std::to_string(rank);
      case Family::B: return "B" + std::to_string(rank);
      case Family::D: return "D" + std::to_string(rank);
      case Family::E: return "E" + std::to_string(rank);
      case Family::F: return "F4";
      case Family::H: return "H" + std::to_string(rank);
      case Family::I2: return "I2(" + std::to_string(edge) + ")";
    }
    return "?";
  }

  std::uint64_t order() const {
    auto fact = [](int k) {
      std::uint64_t f = 1;
      for (int i = 2; i <= k; ++i) f *= i;
      return f;
    };
    switch (family) {
      case Family::A: return fact(rank + 1);
      case Family::B: return (std::uint64_t{1} << rank) * fact(rank);
      case Family::D: return (std::uint64_t{1} << (rank - 1)) * fact(rank);
      case Family::E:
        if (rank == 6) return 51840;
        if (rank == 7) return 2903040;
        return 696729600;
      case Family::F: return 1152;
      case Family::H: return rank == 3 ? 120 : 14400;
      case Family::I2: return 2ull * edge;
    }
    return 0;
  }
};

inline SphericalType type_A(int n) { return {Family::A, n, 0}; }
inline SphericalType type_B(int n) { return {Family::B, n, 0}; }
inline SphericalType type_D(int n) { return {Family::D, n, 0}; }
inline SphericalType type_E(int n) { return {Family::E, n, 0}; }
inline SphericalType type_F4() { return {Family::F, 4, 0}; }
inline SphericalType type_H(int n) { return {Family::H, n, 0}; }
inline SphericalType type_I2(std::uint32_t m) {
  if (m == 3) return type_A(2);
  if (m == 4) return type_B(2);
  return {Family::I2, 2, m};
}

namespace detail {

// Walks the Dynkin path of `comp` within m from one endpoint; returns the
// vertex sequence, or nullopt if the component is not a simple path.
inline std::optional<std::vector<int>> dynkin_path(const CoxeterMatrix& m,
                                                   const GeneratorSubset& comp) {
  int k = static_cast<int>(comp.size());
  std::vector<std::vector<int>> adj(k);
  int edges = 0;
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b)
      if (dynkin_adjacent(m, comp[a], comp[b])) {
        adj[a].push_back(b);
        adj[b].push_back(a);
        ++edges;
      }
  if (edges != k - 1) return std::nullopt;  // cycle or disconnected
  int start = -1;
  for (int a = 0; a < k; ++a) {
    if (adj[a].size() > 2) return std::nullopt;
    if (adj[a].size() <= 1) start = a;
  }
  if (k == 1) return std::vector<int>{comp[0]};
  std::vector<int> path{start};
  int prev = -1, cur = start;
  while (static_cast<int>(path.size()) < k) {
    int next = -1;
    for (int b : adj[cur])
      if (b != prev) next = b;
    if (next == -1) return std::nullopt;
    prev = cur;
    cur = next;
    path.push_back(cur);
  }
  std::vector<int> out;
  out.reserve(k);
  for (int a : path) out.push_back(comp[a]);
  return out;
}

}  // namespace detail

// Classical type of one irreducible component, or nullopt when the
// component generates an infinite group. `component` must be a single
// Dynkin-connected piece of m; NotIrreducibleError otherwise.
inline std::optional<SphericalType> spherical_type(const CoxeterMatrix& m,
                                                   const GeneratorSubset& component) {
  if (component.empty()) throw NotIrreducibleError("empty component");
  CoxeterMatrix sub = m.restricted(component);
  if (irreducible_components(sub).size() != 1)
    throw NotIrreducibleError("component spans several irreducible pieces");

  int n = sub.rank();
  if (n == 1) return type_A(1);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (sub.label(i, j).is_infinite()) return std::nullopt;
  if (n == 2) return type_I2(sub.label(0, 1).finite_value());

  // Rank >= 3: the Dynkin diagram must be a tree with at most one branch
  // vertex of degree 3.
  std::vector<int> all(n);
  std::iota(all.begin(), all.end(), 0);
  std::vector<int> deg(n, 0);
  int edges = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (dynkin_adjacent(sub, i, j)) {
        ++deg[i];
        ++deg[j];
        ++edges;
      }
  if (edges != n - 1) return std::nullopt;
  int branches = 0;
  for (int i = 0; i < n; ++i) {
    if (deg[i] > 3) return std::nullopt;
    if (deg[i] == 3) ++branches;
  }
  if (branches > 1) return std::nullopt;

  if (branches == 0) {
    auto path = detail::dynkin_path(sub, all);
    std::vector<std::uint32_t> labels;
    for (size_t a = 0; a + 1 < path->size(); ++a)
      labels.push_back(sub.label((*path)[a], (*path)[a + 1]).finite_value());
    if (labels.back() != 3 && labels.front() == 3) std::reverse(labels.begin(), labels.end());
    // now any single non-3 label sits in front if it sits at an end
    bool rest3 = std::all_of(labels.begin() + 1, labels.end(),
                             [](std::uint32_t l) { return l == 3; });
    if (labels.front() == 3 && rest3) return type_A(n);
    if (labels.front() == 4 && rest3) return type_B(n);
    if (labels.front() == 5 && rest3 && n <= 4) return type_H(n);
    if (n == 4 && labels[0] == 3 && labels[1] == 4 && labels[2] == 3) return type_F4();
    return std::nullopt;
  }

  // One branch vertex: all labels must be 3 and the three legs must have
  // lengths (1,1,k) for D, or (1,2,2), (1,2,3), (1,2,4) for E6, E7, E8.
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (dynkin_adjacent(sub, i, j) && sub.label(i, j).finite_value() != 3)
        return std::nullopt;
  int center = -1;
  for (int i = 0; i < n; ++i)
    if (deg[i] == 3) center = i;
  std::vector<int> legs;
  for (int i = 0; i < n; ++i) {
    if (i == center || !dynkin_adjacent(sub, center, i)) continue;
    int len = 1, prev = center, cur = i;
    for (;;) {
      int next = -1;
      for (int j = 0; j < n; ++j)
        if (j != prev && j != cur && dynkin_adjacent(sub, cur, j)) next = j;
      if (next == -1) break;
      prev = cur;
      cur = next;
      ++len;
    }
    legs.push_back(len);
  }
  std::sort(legs.begin(), legs.end());
  if (legs[0] == 1 && legs[1] == 1) {
    int dn = legs[2] + 3;
    return dn == 3 ? type_A(3) : type_D(dn);
  }
  if (legs[0] == 1 && legs[1] == 2 && legs[2] >= 2 && legs[2] <= 4)
    return type_E(legs[2] + 4);
  return std::nullopt;
}

// Types of all irreducible components, or nullopt if any is infinite.
inline std::optional<std::vector<SphericalType>> spherical_decomposition(const CoxeterMatrix& m) {
  std::vector<SphericalType> out;
  for (const auto& comp : irreducible_components(m)) {
    auto t = spherical_type(m, comp);
    if (!t) return std::nullopt;
    out.push_back(*t);
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline bool is_spherical(const CoxeterMatrix& m) {
  return spherical_decomposition(m).has_value();
}

// Order of the group, or nullopt when infinite.
inline std::optional<std::uint64_t> group_order(const CoxeterMatrix& m) {
  auto dec = spherical_decomposition(m);
  if (!dec) return std::nullopt;
  std::uint64_t prod = 1;
  for (const auto& t : *dec) {
    std::uint64_t o = t.order();
    if (prod > std::numeric_limits<std::uint64_t>::max() / o)
      throw RankTooLargeError("group order overflows 64 bits");
    prod *= o;
  }
  return prod;
}

struct BasicSubset {
  GeneratorSubset generators;
  SphericalType type;
};

// Maximal subsets B ⊆ S whose standard parabolic is irreducible, finite and
// bigger than a single involution (|B| >= 2). Ordered by generator list.
inline std::vector<BasicSubset> basic_subsets(const CoxeterMatrix& m) {
  int n = m.rank();
  if (n > 24) throw RankTooLargeError("basic subset enumeration needs rank <= 24");
  std::vector<BasicSubset> cands;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    if (std::popcount(mask) < 2) continue;
    GeneratorSubset sub;
    for (int i = 0; i < n; ++i)
      if (mask >> i & 1) sub.push_back(i);
    CoxeterMatrix restr = m.restricted(sub);
    if (irreducible_components(restr).size() != 1) continue;
    std::vector<int> all(sub.size());
    std::iota(all.begin(), all.end(), 0);
    auto t = spherical_type(restr, all);
    if (!t) continue;
    cands.push_back({std::move(sub), *t});
  }
  std::vector<BasicSubset> out;
  for (size_t a = 0; a < cands.size(); ++a) {
    bool maximal = true;
    for (size_t b = 0; b < cands.size() && maximal; ++b) {
      if (a == b || cands[b].generators.size() <= cands[a].generators.size()) continue;
      maximal = !std::includes(cands[b].generators.begin(), cands[b].generators.end(),
                               cands[a].generators.begin(), cands[a].generators.end());
    }
    if (maximal) out.push_back(cands[a]);
  }
  return out;
}

// Among the irreducible finite types, exactly B_{2k+1}, I2(4k+2), E7 and H3
// decompose as a direct product (a central involution splits off).
// NotIrreducibleError when m itself is reducible.
inline bool is_directly_decomposable_irreducible(const CoxeterMatrix& m) {
  auto comps = irreducible_components(m);
  if (comps.size() != 1) throw NotIrreducibleError("system is reducible");
  auto t = spherical_type(m, comps[0]);
  if (!t) return false;
  if (*t == type_H(3)) return true;
  if (*t == type_E(7)) return true;
  if (t->family == Family::B && t->rank % 2 == 1) return true;
  if (t->family == Family::I2 && t->edge % 4 == 2) return true;
  return false;
}

// A visible splitting is a triple (S1, S2, T): S1 ∪ S2 = S, S1 ∩ S2 = T,
// T spherical, both sides proper, and every edge between S1\T and S2\T
// labeled ∞. The group then splits as an amalgam over the parabolic of T.
struct VisibleSplitting {
  GeneratorSubset s1, s2, t;
};

inline std::vector<VisibleSplitting> visible_splittings(const CoxeterMatrix& m) {
  int n = m.rank();
  if (n > 24) throw RankTooLargeError("splitting enumeration needs rank <= 24");
  std::vector<VisibleSplitting> out;
  for (std::uint64_t tmask = 0; tmask < (std::uint64_t{1} << n); ++tmask) {
    GeneratorSubset tset;
    for (int i = 0; i < n; ++i)
      if (tmask >> i & 1) tset.push_back(i);
    if (static_cast<int>(tset.size()) > n - 2) continue;
    if (!is_spherical(m.restricted(tset))) continue;
    // Components of the finite-label graph on U = S \ T must land entirely
    // on one side, so enumerate bipartitions of those components.
    std::vector<int> u;
    for (int i = 0; i < n; ++i)
      if (!(tmask >> i & 1)) u.push_back(i);
    int k = static_cast<int>(u.size());
    std::vector<int> comp(k, -1);
    int c = 0;
    for (int a = 0; a < k; ++a) {
      if (comp[a] != -1) continue;
      std::vector<int> stack{a};
      comp[a] = c;
      while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        for (int b = 0; b < k; ++b)
          if (comp[b] == -1 && m.label(u[x], u[b]).is_finite()) {
            comp[b] = c;
            stack.push_back(b);
          }
      }
      ++c;
    }
    if (c < 2) continue;
    // Unordered bipartitions; the side containing u[0] is S1.
    for (std::uint64_t pick = 0; pick < (std::uint64_t{1} << (c - 1)); ++pick) {
      std::uint64_t side = pick << 1;  // component 0 stays on side S1
      if (std::popcount(side) == 0 || std::popcount(side) == static_cast<int>(c))
        continue;
      VisibleSplitting vs;
      vs.t = tset;
      vs.s1 = tset;
      vs.s2 = tset;
      for (int a = 0; a < k; ++a)
        (side >> comp[a] & 1 ? vs.s2 : vs.s1).push_back(u[a]);
      std::sort(vs.s1.begin(), vs.s1.end());
      std::sort(vs.s2.begin(), vs.s2.end());
      out.push_back(std::move(vs));
    }
  }
  return out;
}

// Matching filter over basic subsets. Two basic types can correspond under
// an abstract isomorphism only when they are equal or form one of the pairs
// {D_{2k+1}, B_{2k+1}} (k=1 appears as {A3, B3}) or {I2(2k+1), I2(4k+2)}
// (k=1 appears as {A2, I2(6)}). Incompatible results carry a witness type
// that cannot be matched.
struct MatchingCompatible {};
struct MatchingIncompatible {
  SphericalType witness;
  std::string side;  // "first" or "second"
};
using MatchingVerdict = std::variant<MatchingCompatible, MatchingIncompatible>;

inline bool basic_types_compatible(const SphericalType& a, const SphericalType& b) {
  if (a == b) return true;
  auto pair_matches = [](const SphericalType& x, const SphericalType& y) {
    // x plays the D_{2k+1} role, y the B_{2k+1} role
    if (y.family == Family::B && y.rank % 2 == 1) {
      if (y.rank == 3 && x == type_A(3)) return true;
      if (x.family == Family::D && x.rank == y.rank) return true;
    }
    // x plays I2(2k+1), y plays I2(4k+2)
    auto i2_label = [](const SphericalType& t) -> std::uint32_t {
      if (t.family == Family::I2) return t.edge;
      if (t == SphericalType{Family::A, 2, 0}) return 3;
      if (t == SphericalType{Family::B, 2, 0}) return 4;
      return 0;
    };
    std::uint32_t lx = i2_label(x), ly = i2_label(y);
    return lx >= 3 && lx % 2 == 1 && ly == 2 * lx;
  };
  return pair_matches(a, b) || pair_matches(b, a);
}

inline MatchingVerdict matching_filter(const CoxeterMatrix& m1, const CoxeterMatrix& m2) {
  auto types_of = [](const CoxeterMatrix& m) {
    std::vector<SphericalType> ts;
    for (const auto& b : basic_subsets(m)) ts.push_back(b.type);
    std::sort(ts.begin(), ts.end());
    return ts;
  };
  std::vector<SphericalType> t1 = types_of(m1), t2 = types_of(m2);
  // Maximum bipartite matching by augmenting paths.
  int n1 = static_cast<int>(t1.size()), n2 = static_cast<int>(t2.size());
  std::vector<int> match2(n2, -1), match1(n1, -1);
  std::vector<char> visited;
  auto augment = [&](auto&& self, int a) -> bool {
    for (int b = 0; b < n2; ++b) {
      if (visited[b] || !basic_types_compatible(t1[a], t2[b])) continue;
      visited[b] = 1;
      if (match2[b] == -1 || self(self, match2[b])) {
        match2[b] = a;
        match1[a] = b;
        return true;
      }
    }
    return false;
  };
  for (int a = 0; a < n1; ++a) {
    visited.assign(n2, 0);
    augment(augment, a);
  }
  for (int a = 0; a < n1; ++a)
    if (match1[a] == -1) return MatchingIncompatible{t1[a], "first"};
  for (int b = 0; b < n2; ++b)
    if (match2[b] == -1) return MatchingIncompatible{t2[b], "second"};
  return MatchingCompatible{};
}

// Multiset of off-diagonal labels, one copy per unordered pair.
inline std::vector<Label> entry_multiset(const CoxeterMatrix& m) {
  std::vector<Label> out;
  for (int i = 0; i < m.rank(); ++i)
    for (int j = i + 1; j < m.rank(); ++j) out.push_back(m.label(i, j));
  std::sort(out.begin(), out.end());
  return out;
}

// Filter valid for systems of maximal rank (systems admitting no blow-up):
// two such systems presenting isomorphic groups have equal rank and equal
// label multisets. Not meaningful otherwise; callers gate on expandedness.
inline bool maximal_rank_filter_compatible(const CoxeterMatrix& m1, const CoxeterMatrix& m2) {
  return m1.rank() == m2.rank() && entry_multiset(m1) == entry_multiset(m2);
}

}  // namespace coxgalaxy
