#pragma once

// Canonical forms for complete edge-labeled graphs. Two systems are
// graph-isomorphic exactly when some generator bijection carries one label
// matrix to the other; the canonical form is the lexicographically least
// flattened matrix over all generator orderings, so equality of canonical
// strings decides graph isomorphism. Names never enter the canonical form.
//
// The search is an exhaustive permutation search with branch-and-bound
// pruning plus one structural shortcut: generators with identical rows
// toward the rest of the system ("twins") produce identical subtrees, so
// only one representative per twin class is tried at each depth. Exact, and
// comfortable up to rank ~12.

#include <optional>
#include <string>
#include <vector>

#include "coxgalaxy/coxsys.hpp"

namespace coxgalaxy {

namespace detail {

// Twin classes: i ~ j when m(i,x) = m(j,x) for every x outside {i,j}.
// Swapping two twins is an automorphism, so their search subtrees coincide.
inline std::vector<int> twin_classes(const CoxeterMatrix& m) {
  int n = m.rank();
  std::vector<int> cls(n, -1);
  int next = 0;
  for (int i = 0; i < n; ++i) {
    if (cls[i] != -1) continue;
    cls[i] = next;
    for (int j = i + 1; j < n; ++j) {
      if (cls[j] != -1) continue;
      bool twin = true;
      for (int x = 0; x < n && twin; ++x) {
        if (x == i || x == j) continue;
        if (m.label(i, x) != m.label(j, x)) twin = false;
      }
      if (twin) cls[j] = next;
    }
    ++next;
  }
  return cls;
}

struct CanonSearch {
  const CoxeterMatrix& m;
  int n;
  std::vector<int> twins;
  std::vector<int> chosen;       // positions filled so far
  std::vector<char> used;
  std::vector<Label> cur;        // flattened lower triangle, column by column
  std::vector<Label> best;
  std::vector<int> best_perm;
  bool have_best = false;

  explicit CanonSearch(const CoxeterMatrix& mat)
      : m(mat), n(mat.rank()), twins(twin_classes(mat)), used(mat.rank(), 0) {}

  void run() {
    if (n == 0) {
      have_best = true;
      return;
    }
    chosen.reserve(n);
    cur.reserve(static_cast<size_t>(n) * (n - 1) / 2);
    descend(true);
  }

  // tight == true while cur equals the best prefix; once strictly below we
  // can stop comparing until a leaf resets best.
  void descend(bool tight) {
    int depth = static_cast<int>(chosen.size());
    if (depth == n) {
      if (!have_best || cur < best) {
        best = cur;
        best_perm = chosen;
        have_best = true;
      }
      return;
    }
    // Candidate extensions, one per twin class, sorted by extension column.
    struct Cand {
      int v;
      std::vector<Label> ext;
    };
    std::vector<Cand> cands;
    std::vector<char> taken_class(n, 0);
    for (int v = 0; v < n; ++v) {
      if (used[v] || taken_class[twins[v]]) continue;
      taken_class[twins[v]] = 1;
      Cand c;
      c.v = v;
      c.ext.reserve(depth);
      for (int k = 0; k < depth; ++k) c.ext.push_back(m.label(chosen[k], v));
      cands.push_back(std::move(c));
    }
    std::sort(cands.begin(), cands.end(),
              [](const Cand& a, const Cand& b) { return a.ext < b.ext; });

    size_t pos = cur.size();
    for (const Cand& c : cands) {
      bool child_tight = tight;
      if (have_best && tight) {
        int cmp = 0;
        for (int k = 0; k < depth && cmp == 0; ++k) {
          if (c.ext[k] < best[pos + k]) cmp = -1;
          else if (best[pos + k] < c.ext[k]) cmp = 1;
        }
        if (cmp > 0) break;  // candidates are sorted, so the rest are worse too
        if (cmp < 0) child_tight = false;
      }
      used[c.v] = 1;
      chosen.push_back(c.v);
      cur.insert(cur.end(), c.ext.begin(), c.ext.end());
      descend(child_tight);
      cur.resize(pos);
      chosen.pop_back();
      used[c.v] = 0;
    }
  }
};

}  // namespace detail

struct CanonicalForm {
  std::string key;              // deterministic string identifying the class
  std::vector<int> perm;        // position k of the canonical order holds generator perm[k]
};

// The canonical flattening visits entries column by column: (0,1), (0,2),
// (1,2), (0,3), ... over the canonical ordering. ∞ serializes as 0.
inline CanonicalForm canonical_form(const CoxeterMatrix& m) {
  detail::CanonSearch search(m);
  search.run();
  CanonicalForm out;
  out.perm = search.best_perm;
  std::string key = "r" + std::to_string(m.rank());
  char sep = '|';
  for (const Label& l : search.best) {
    key += sep;
    sep = ',';
    key += std::to_string(l.serialized());
  }
  out.key = std::move(key);
  return out;
}

inline std::string canonical_key(const CoxeterMatrix& m) { return canonical_form(m).key; }

// A vertex of the galaxy: an isomorphism class of complete Coxeter graphs,
// identified by its canonical key, together with one concrete representative.
struct GalaxyVertex {
  std::string canon;
  int layer = 0;  // = rank of any representative
  CoxeterMatrix representative;
};

inline GalaxyVertex make_vertex(const CoxeterMatrix& m) {
  return GalaxyVertex{canonical_key(m), m.rank(), m};
}

// If the systems are graph-isomorphic, returns the bijection f (as a vector:
// generator i of m1 maps to f[i] of m2) with m2.label(f[i], f[j]) =
// m1.label(i, j); otherwise nullopt.
inline std::optional<std::vector<int>> are_graph_isomorphic(const CoxeterMatrix& m1,
                                                            const CoxeterMatrix& m2) {
  if (m1.rank() != m2.rank()) return std::nullopt;
  CanonicalForm c1 = canonical_form(m1);
  CanonicalForm c2 = canonical_form(m2);
  if (c1.key != c2.key) return std::nullopt;
  std::vector<int> f(m1.rank());
  for (int k = 0; k < m1.rank(); ++k) f[c1.perm[k]] = c2.perm[k];
  return f;
}

}  // namespace coxgalaxy
