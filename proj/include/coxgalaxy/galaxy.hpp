#pragma once

// Exploration of a galaxy fragment: the vertices are isomorphism classes of
// complete Coxeter graphs, the edges connect classes related by blow-ups,
// blow-downs and twists. Connected components of the full galaxy are
// simplices, so once a set of vertices is known to be connected, every pair
// among them is an edge; edges discovered through a single move carry that
// move, the remaining pairs are recorded as composite.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "coxgalaxy/canonical.hpp"
#include "coxgalaxy/classify.hpp"
#include "coxgalaxy/coxsys.hpp"
#include "coxgalaxy/moves.hpp"

namespace coxgalaxy {

struct Budget {
  std::size_t max_vertices = 10000;
  int max_rank = 16;
  double max_seconds = 60.0;
};

struct FragmentEdge {
  int u = 0;
  int v = 0;
  MoveRecord record;
};

struct GalaxyFragment {
  std::vector<GalaxyVertex> vertices;
  std::vector<FragmentEdge> edges;
  std::vector<int> parent;       // discovery tree, -1 at the root
  std::vector<int> parent_edge;  // edge index realizing the tree link, -1 at the root
  int root = 0;
  bool truncated = false;  // some budget cut the exploration short

  int find(const std::string& canon) const {
    for (size_t i = 0; i < vertices.size(); ++i)
      if (vertices[i].canon == canon) return static_cast<int>(i);
    return -1;
  }

  int min_layer() const {
    int lo = vertices.empty() ? 0 : vertices[0].layer;
    for (const auto& v : vertices) lo = std::min(lo, v.layer);
    return lo;
  }

  int max_layer() const {
    int hi = vertices.empty() ? 0 : vertices[0].layer;
    for (const auto& v : vertices) hi = std::max(hi, v.layer);
    return hi;
  }
};

inline GalaxyFragment explore(const CoxeterMatrix& m, const Budget& budget = {}) {
  auto start = std::chrono::steady_clock::now();
  auto time_up = [&] {
    std::chrono::duration<double> d = std::chrono::steady_clock::now() - start;
    return d.count() > budget.max_seconds;
  };

  GalaxyFragment frag;
  std::unordered_map<std::string, int> index;
  std::unordered_set<std::uint64_t> edge_seen;
  auto edge_key = [](int a, int b) {
    if (a > b) std::swap(a, b);
    return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint64_t>(b);
  };

  GalaxyVertex rootv = make_vertex(m);
  index[rootv.canon] = 0;
  frag.vertices.push_back(std::move(rootv));
  frag.parent.push_back(-1);
  frag.parent_edge.push_back(-1);

  std::vector<int> queue{0};
  for (size_t qi = 0; qi < queue.size(); ++qi) {
    if (time_up()) {
      frag.truncated = true;
      break;
    }
    int u = queue[qi];
    CoxeterMatrix mu = frag.vertices[u].representative;
    std::string from = frag.vertices[u].canon;

    std::vector<std::pair<CoxeterMatrix, MoveRecord>> nbrs;
    for (const auto& pt : find_pseudo_transpositions(mu)) {
      if (mu.rank() + 1 > budget.max_rank) {
        frag.truncated = true;
        continue;
      }
      CoxeterMatrix up = blow_up(mu, pt);
      nbrs.emplace_back(std::move(up),
                        MoveRecord{MoveKind::BlowUp, from, "", describe(mu, pt)});
    }
    for (const auto& bd : find_blow_downs(mu)) {
      std::string desc = "x=" + mu.name(bd.x) + " w=" + mu.name(bd.w) + " " +
                         describe(bd.target, bd.move);
      nbrs.emplace_back(bd.target, MoveRecord{MoveKind::BlowDown, from, "", desc});
    }
    for (const auto& tw : enumerate_twists(mu)) {
      CoxeterMatrix twisted = apply_twist(mu, tw);
      nbrs.emplace_back(std::move(twisted),
                        MoveRecord{MoveKind::Twist, from, "", describe(mu, tw)});
    }

    for (auto& [nm, rec] : nbrs) {
      std::string canon = canonical_key(nm);
      if (canon == from) continue;
      rec.to_canon = canon;
      auto it = index.find(canon);
      int v;
      if (it == index.end()) {
        if (frag.vertices.size() >= budget.max_vertices) {
          frag.truncated = true;
          continue;
        }
        v = static_cast<int>(frag.vertices.size());
        index[canon] = v;
        frag.vertices.push_back(GalaxyVertex{canon, nm.rank(), nm});
        frag.parent.push_back(u);
        frag.parent_edge.push_back(-1);
        queue.push_back(v);
      } else {
        v = it->second;
      }
      if (edge_seen.insert(edge_key(u, v)).second) {
        frag.edges.push_back({u, v, rec});
        if (frag.parent[v] == u && frag.parent_edge[v] == -1)
          frag.parent_edge[v] = static_cast<int>(frag.edges.size()) - 1;
      }
    }
  }

  // The component is a simplex: every discovered pair is an edge. Pairs not
  // realized by a single recorded move are composite.
  for (size_t i = 0; i < frag.vertices.size(); ++i)
    for (size_t j = i + 1; j < frag.vertices.size(); ++j)
      if (edge_seen.insert(edge_key(static_cast<int>(i), static_cast<int>(j))).second)
        frag.edges.push_back({static_cast<int>(i), static_cast<int>(j),
                              MoveRecord{MoveKind::Composite, frag.vertices[i].canon,
                                         frag.vertices[j].canon,
                                         "via intermediate systems"}});
  return frag;
}

// Keeps only edges between adjacent layers or within one layer. Discovery
// tree metadata survives (tree edges never skip layers).
inline GalaxyFragment vertical_core(const GalaxyFragment& frag) {
  GalaxyFragment out;
  out.vertices = frag.vertices;
  out.parent = frag.parent;
  out.root = frag.root;
  out.truncated = frag.truncated;
  out.parent_edge.assign(frag.vertices.size(), -1);
  std::vector<int> remap(frag.edges.size(), -1);
  for (size_t e = 0; e < frag.edges.size(); ++e) {
    const auto& edge = frag.edges[e];
    int d = frag.vertices[edge.u].layer - frag.vertices[edge.v].layer;
    if (d < -1 || d > 1) continue;
    remap[e] = static_cast<int>(out.edges.size());
    out.edges.push_back(edge);
  }
  for (size_t v = 0; v < frag.vertices.size(); ++v)
    if (frag.parent_edge[v] != -1) out.parent_edge[v] = remap[frag.parent_edge[v]];
  return out;
}

// A deterministic spanning forest of the vertical core: edges sorted by
// their canonical key pair, greedily added when they join two components.
inline GalaxyFragment spine(const GalaxyFragment& frag) {
  GalaxyFragment core = vertical_core(frag);
  std::vector<size_t> order(core.edges.size());
  std::iota(order.begin(), order.end(), size_t{0});
  auto key_of = [&](size_t e) {
    const auto& ed = core.edges[e];
    const std::string& a = core.vertices[ed.u].canon;
    const std::string& b = core.vertices[ed.v].canon;
    return a < b ? std::make_pair(a, b) : std::make_pair(b, a);
  };
  std::sort(order.begin(), order.end(),
            [&](size_t a, size_t b) { return key_of(a) < key_of(b); });

  std::vector<int> uf(core.vertices.size());
  std::iota(uf.begin(), uf.end(), 0);
  auto find = [&](int x) {
    while (uf[x] != x) x = uf[x] = uf[uf[x]];
    return x;
  };

  GalaxyFragment out;
  out.vertices = core.vertices;
  out.root = core.root;
  out.truncated = core.truncated;
  out.parent.assign(core.vertices.size(), -1);
  out.parent_edge.assign(core.vertices.size(), -1);
  for (size_t e : order) {
    int a = find(core.edges[e].u), b = find(core.edges[e].v);
    if (a == b) continue;
    uf[a] = b;
    out.edges.push_back(core.edges[e]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Star-shaped seed systems: a hub joined to each spoke by the label 4k+2,
// spokes pairwise ∞. Their fragments realize the full subset lattice of
// blow-ups, one vertex per subset of spokes.
inline CoxeterMatrix starlet(const std::vector<int>& ks) {
  if (ks.empty()) throw MalformedInputError("a starlet needs at least one parameter");
  for (size_t i = 0; i < ks.size(); ++i) {
    if (ks[i] < 1) throw MalformedInputError("starlet parameters must be >= 1");
    for (size_t j = i + 1; j < ks.size(); ++j)
      if (ks[i] == ks[j]) throw DuplicateParameterError("starlet parameters must be distinct");
  }
  int n = static_cast<int>(ks.size()) + 1;
  CoxeterMatrix::Builder b(n);
  for (int i = 1; i < n; ++i) {
    b.set(0, i, Label::finite(4 * static_cast<std::uint32_t>(ks[i - 1]) + 2));
    for (int j = i + 1; j < n; ++j) b.set(i, j, Label::infinity());
  }
  return b.build();
}

// ---------------------------------------------------------------------------
// Isomorphism decision.

// Exact decision for systems of rank at most three: equal-rank systems are
// isomorphic exactly when their label multisets agree, and the only
// cross-rank pairs are I2(4k+2) against the triangle (2k+1, 2, 2).
inline bool iso_rank_le3(const CoxeterMatrix& m1, const CoxeterMatrix& m2) {
  if (m1.rank() > 3 || m2.rank() > 3)
    throw RankTooLargeError("direct decision covers rank <= 3 only");
  if (m1.rank() == m2.rank()) return canonical_key(m1) == canonical_key(m2);
  const CoxeterMatrix& lo = m1.rank() < m2.rank() ? m1 : m2;
  const CoxeterMatrix& hi = m1.rank() < m2.rank() ? m2 : m1;
  if (lo.rank() != 2 || hi.rank() != 3) return false;
  Label l = lo.label(0, 1);
  if (!l.is_finite() || l.finite_value() % 4 != 2 || l.finite_value() < 6) return false;
  std::vector<Label> want{Label::finite(2), Label::finite(2),
                          Label::finite(l.finite_value() / 2)};
  std::sort(want.begin(), want.end());
  return entry_multiset(hi) == want;
}

enum class IsoOutcome { Isomorphic, NonIsomorphic, Unknown };

struct IsoResult {
  IsoOutcome outcome = IsoOutcome::Unknown;
  std::vector<MoveRecord> path;  // for move-connected positives
  std::string certificate;
  bool budget_exhausted = false;
};

namespace detail {

// Rewrites a spherical decomposition to its fully split form: B_{2k+1}
// becomes A1 x D_{2k+1} and I2(4k+2) becomes A1 x I2(2k+1). Isomorphic
// finite groups have equal split forms, and conversely.
inline std::vector<SphericalType> expanded_types(const std::vector<SphericalType>& dec) {
  std::vector<SphericalType> out;
  for (const auto& t : dec) {
    if (t.family == Family::B && t.rank >= 3 && t.rank % 2 == 1) {
      out.push_back(type_A(1));
      out.push_back(t.rank == 3 ? type_A(3) : type_D(t.rank));
    } else if (t.family == Family::I2 && t.edge % 4 == 2) {
      out.push_back(type_A(1));
      out.push_back(type_I2(t.edge / 2));
    } else {
      out.push_back(t);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<MoveRecord> chain_to_root(const GalaxyFragment& frag, int v) {
  std::vector<MoveRecord> recs;
  while (frag.parent[v] != -1) {
    recs.push_back(frag.edges[frag.parent_edge[v]].record);
    v = frag.parent[v];
  }
  std::reverse(recs.begin(), recs.end());  // now root -> v
  return recs;
}

}  // namespace detail

inline IsoResult decide_isomorphic(const CoxeterMatrix& m1, const CoxeterMatrix& m2,
                                   const Budget& budget = {}) {
  IsoResult res;
  std::string c1 = canonical_key(m1), c2 = canonical_key(m2);
  if (c1 == c2) {
    res.outcome = IsoOutcome::Isomorphic;
    res.certificate = "identical canonical forms";
    return res;
  }

  if (m1.rank() <= 3 && m2.rank() <= 3) {
    if (!iso_rank_le3(m1, m2)) {
      res.outcome = IsoOutcome::NonIsomorphic;
      res.certificate = "rank <= 3 classification";
      return res;
    }
    res.outcome = IsoOutcome::Isomorphic;
    res.certificate = "rank <= 3 classification";
    const CoxeterMatrix& lo = m1.rank() < m2.rank() ? m1 : m2;
    auto pts = find_pseudo_transpositions(lo);
    if (!pts.empty()) {
      MoveRecord rec{MoveKind::BlowUp, canonical_key(lo), canonical_key(blow_up(lo, pts[0])),
                     describe(lo, pts[0])};
      res.path.push_back(m1.rank() < m2.rank() ? rec : inverted(rec));
    }
    return res;
  }

  int r1 = abelianization_rank(m1), r2 = abelianization_rank(m2);
  if (r1 != r2) {
    res.outcome = IsoOutcome::NonIsomorphic;
    res.certificate = "abelianization ranks " + std::to_string(r1) + " and " +
                      std::to_string(r2) + " differ";
    return res;
  }

  auto dec1 = spherical_decomposition(m1);
  auto dec2 = spherical_decomposition(m2);
  if (dec1.has_value() != dec2.has_value()) {
    res.outcome = IsoOutcome::NonIsomorphic;
    res.certificate = "one group is finite, the other is not";
    return res;
  }
  if (dec1 && dec2) {
    auto o1 = group_order(m1), o2 = group_order(m2);
    if (o1 && o2 && *o1 != *o2) {
      res.outcome = IsoOutcome::NonIsomorphic;
      res.certificate = "orders " + std::to_string(*o1) + " and " + std::to_string(*o2) +
                        " differ";
      return res;
    }
  }

  {
    auto verdict = matching_filter(m1, m2);
    if (auto* inc = std::get_if<MatchingIncompatible>(&verdict)) {
      res.outcome = IsoOutcome::NonIsomorphic;
      res.certificate = "basic subset of type " + inc->witness.str() + " in the " +
                        inc->side + " system has no compatible partner";
      return res;
    }
  }

  {
    int lo = std::min(m1.rank(), m2.rank()), hi = std::max(m1.rank(), m2.rank());
    if (hi >= 2 * lo) {
      res.outcome = IsoOutcome::NonIsomorphic;
      res.certificate = "ranks " + std::to_string(lo) + " and " + std::to_string(hi) +
                        " cannot share a component";
      return res;
    }
  }

  bool expanded1 = find_pseudo_transpositions(m1).empty();
  bool expanded2 = find_pseudo_transpositions(m2).empty();
  if (expanded1 && expanded2) {
    if (m1.rank() != m2.rank()) {
      res.outcome = IsoOutcome::NonIsomorphic;
      res.certificate = "both systems are fully expanded at different ranks";
      return res;
    }
    if (entry_multiset(m1) != entry_multiset(m2)) {
      res.outcome = IsoOutcome::NonIsomorphic;
      res.certificate = "fully expanded systems with different entry multisets";
      return res;
    }
  }

  Budget half = budget;
  half.max_seconds = budget.max_seconds / 2;
  GalaxyFragment f1 = explore(m1, half);
  GalaxyFragment f2 = explore(m2, half);
  res.budget_exhausted = f1.truncated || f2.truncated;
  {
    std::unordered_map<std::string, int> in2;
    for (size_t i = 0; i < f2.vertices.size(); ++i) in2[f2.vertices[i].canon] = static_cast<int>(i);
    for (size_t i = 0; i < f1.vertices.size(); ++i) {
      auto it = in2.find(f1.vertices[i].canon);
      if (it == in2.end()) continue;
      res.outcome = IsoOutcome::Isomorphic;
      res.certificate = "connected by moves";
      res.path = detail::chain_to_root(f1, static_cast<int>(i));
      std::vector<MoveRecord> back = detail::chain_to_root(f2, it->second);
      for (auto r = back.rbegin(); r != back.rend(); ++r) res.path.push_back(inverted(*r));
      return res;
    }
  }
  if (!f1.truncated && !f2.truncated) {
    res.outcome = IsoOutcome::NonIsomorphic;
    res.certificate = "fragments fully explored and disjoint";
    return res;
  }

  if (dec1 && dec2) {
    if (detail::expanded_types(*dec1) == detail::expanded_types(*dec2)) {
      res.outcome = IsoOutcome::Isomorphic;
      res.certificate = "same fully split decomposition";
    } else {
      res.outcome = IsoOutcome::NonIsomorphic;
      res.certificate = "fully split decompositions differ";
    }
    return res;
  }

  res.outcome = IsoOutcome::Unknown;
  res.certificate = "undecided within budget";
  return res;
}

}  // namespace coxgalaxy
