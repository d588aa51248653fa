#pragma once

// Core value types for Coxeter systems presented as complete edge-labeled
// graphs: the generator set S and the symmetric matrix of pairwise orders
// m(s,t) ∈ {2,3,...} ∪ {∞}, with m(s,s) = 1.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "coxgalaxy/errors.hpp"

namespace coxgalaxy {

// One entry of a Coxeter matrix. Infinity is a distinct value, not an
// integer sentinel: arithmetic goes through finite_value(), which rejects it.
// The induced order is 1 < 2 < 3 < ... < ∞, which the canonical form relies
// on. In serialized integer form ∞ is written as 0.
class Label {
 public:
  constexpr Label() : v_(1) {}

  static constexpr Label one() { return Label(1); }
  static constexpr Label infinity() { return Label(kInf); }
  static Label finite(std::uint32_t order) {
    if (order < 2) throw InvalidMatrixError("finite label must be >= 2");
    return Label(order);
  }

  // Serialized integer form: 0 = ∞, otherwise the order itself.
  static Label from_serialized(std::uint32_t raw) {
    if (raw == 0) return infinity();
    return Label(raw);
  }
  std::uint32_t serialized() const { return is_infinite() ? 0 : v_; }

  bool is_infinite() const { return v_ == kInf; }
  bool is_one() const { return v_ == 1; }
  bool is_finite() const { return v_ != kInf; }

  std::uint32_t finite_value() const {
    if (is_infinite()) throw InvalidMatrixError("arithmetic on an infinite label");
    return v_;
  }

  bool is_odd_finite() const { return is_finite() && v_ % 2 == 1 && v_ >= 3; }

  friend constexpr auto operator<=>(Label a, Label b) { return a.v_ <=> b.v_; }
  friend constexpr bool operator==(Label a, Label b) { return a.v_ == b.v_; }

  std::string str() const { return is_infinite() ? "inf" : std::to_string(v_); }

 private:
  explicit constexpr Label(std::uint32_t v) : v_(v) {}
  static constexpr std::uint32_t kInf = std::numeric_limits<std::uint32_t>::max();
  std::uint32_t v_;
};

// Generator subsets are index lists, sorted ascending.
using GeneratorSubset = std::vector<int>;

// Immutable symmetric matrix of pairwise orders over named generators.
class CoxeterMatrix {
 public:
  CoxeterMatrix() = default;

  CoxeterMatrix(std::vector<std::string> names, std::vector<Label> entries)
      : rank_(static_cast<int>(names.size())),
        names_(std::move(names)),
        m_(std::move(entries)) {
    validate();
  }

  static std::vector<std::string> default_names(int rank) {
    std::vector<std::string> names;
    names.reserve(rank);
    for (int i = 0; i < rank; ++i) names.push_back("s" + std::to_string(i));
    return names;
  }

  int rank() const { return rank_; }
  Label label(int i, int j) const { return m_[static_cast<size_t>(i) * rank_ + j]; }
  const std::string& name(int i) const { return names_[i]; }
  const std::vector<std::string>& names() const { return names_; }

  bool same_entries(const CoxeterMatrix& o) const {
    return rank_ == o.rank_ && m_ == o.m_;
  }
  friend bool operator==(const CoxeterMatrix& a, const CoxeterMatrix& b) {
    return a.names_ == b.names_ && a.m_ == b.m_;
  }

  // The system on the given generators; names travel along. Indices must be
  // sorted, unique and in range.
  CoxeterMatrix restricted(const GeneratorSubset& subset) const {
    std::vector<std::string> names;
    names.reserve(subset.size());
    for (size_t a = 0; a < subset.size(); ++a) {
      int i = subset[a];
      if (i < 0 || i >= rank_) throw InvalidMatrixError("subset index out of range");
      if (a > 0 && subset[a] <= subset[a - 1])
        throw InvalidMatrixError("subset must be sorted and duplicate-free");
      names.push_back(names_[i]);
    }
    std::vector<Label> entries(subset.size() * subset.size());
    for (size_t a = 0; a < subset.size(); ++a)
      for (size_t b = 0; b < subset.size(); ++b)
        entries[a * subset.size() + b] = label(subset[a], subset[b]);
    return CoxeterMatrix(std::move(names), std::move(entries));
  }

  // The same system with generators renumbered: position k of the result is
  // generator perm[k] of *this.
  CoxeterMatrix permuted(const std::vector<int>& perm) const {
    if (static_cast<int>(perm.size()) != rank_)
      throw InvalidMatrixError("permutation has wrong size");
    std::vector<std::string> names(rank_);
    std::vector<Label> entries(static_cast<size_t>(rank_) * rank_);
    std::vector<char> seen(rank_, 0);
    for (int k = 0; k < rank_; ++k) {
      int i = perm[k];
      if (i < 0 || i >= rank_ || seen[i]) throw InvalidMatrixError("not a permutation");
      seen[i] = 1;
      names[k] = names_[i];
    }
    for (int a = 0; a < rank_; ++a)
      for (int b = 0; b < rank_; ++b)
        entries[static_cast<size_t>(a) * rank_ + b] = label(perm[a], perm[b]);
    return CoxeterMatrix(std::move(names), std::move(entries));
  }

  // Builder for programmatic construction: all off-diagonal entries default
  // to 2 (commuting) until set.
  class Builder {
   public:
    explicit Builder(int rank)
        : names_(default_names(rank)), m_(static_cast<size_t>(rank) * rank, Label::finite(2)) {
      init_diagonal();
    }
    explicit Builder(std::vector<std::string> names)
        : names_(std::move(names)),
          m_(names_.size() * names_.size(), Label::finite(2)) {
      init_diagonal();
    }
    Builder& set(int i, int j, Label l) {
      int n = static_cast<int>(names_.size());
      if (i < 0 || j < 0 || i >= n || j >= n || i == j)
        throw InvalidMatrixError("bad entry position");
      m_[static_cast<size_t>(i) * n + j] = l;
      m_[static_cast<size_t>(j) * n + i] = l;
      return *this;
    }
    CoxeterMatrix build() const { return CoxeterMatrix(names_, m_); }

   private:
    void init_diagonal() {
      size_t n = names_.size();
      for (size_t i = 0; i < n; ++i) m_[i * n + i] = Label::one();
    }
    std::vector<std::string> names_;
    std::vector<Label> m_;
  };

 private:
  void validate() const {
    if (m_.size() != static_cast<size_t>(rank_) * rank_)
      throw InvalidMatrixError("entry count does not match rank");
    for (int i = 0; i < rank_; ++i) {
      if (names_[i].empty()) throw InvalidMatrixError("empty generator name");
      for (int j = 0; j < i; ++j)
        if (names_[i] == names_[j])
          throw InvalidMatrixError("duplicate generator name: " + names_[i]);
    }
    for (int i = 0; i < rank_; ++i)
      for (int j = 0; j < rank_; ++j) {
        Label l = label(i, j);
        if (i == j) {
          if (!l.is_one()) throw InvalidMatrixError("diagonal entry must be 1");
        } else {
          if (l.is_one()) throw InvalidMatrixError("off-diagonal entry must be >= 2 or infinite");
          if (l != label(j, i)) throw InvalidMatrixError("matrix must be symmetric");
        }
      }
  }

  int rank_ = 0;
  std::vector<std::string> names_;
  std::vector<Label> m_;
};

// Two generators are joined in the Dynkin sense when they do not commute.
inline bool dynkin_adjacent(const CoxeterMatrix& m, int i, int j) {
  if (i == j) return false;
  Label l = m.label(i, j);
  return l.is_infinite() || l.finite_value() >= 3;
}

// Connected components of the non-commuting graph, each sorted ascending;
// components ordered by smallest member. These are the irreducible factors.
inline std::vector<GeneratorSubset> irreducible_components(const CoxeterMatrix& m) {
  int n = m.rank();
  std::vector<int> comp(n, -1);
  int c = 0;
  for (int s = 0; s < n; ++s) {
    if (comp[s] != -1) continue;
    std::vector<int> stack{s};
    comp[s] = c;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int v = 0; v < n; ++v)
        if (comp[v] == -1 && dynkin_adjacent(m, u, v)) {
          comp[v] = c;
          stack.push_back(v);
        }
    }
    ++c;
  }
  std::vector<GeneratorSubset> out(c);
  for (int s = 0; s < n; ++s) out[comp[s]].push_back(s);
  return out;
}

inline CoxeterMatrix subsystem(const CoxeterMatrix& m, const GeneratorSubset& subset) {
  return m.restricted(subset);
}

// Rank of the abelianized group (an elementary abelian 2-group): the number
// of connected components of the graph on S whose edges are the pairs with
// odd finite label. Generators joined by an odd label are identified in the
// abelianization; even and infinite labels impose nothing there.
inline int abelianization_rank(const CoxeterMatrix& m) {
  int n = m.rank();
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (m.label(i, j).is_odd_finite()) parent[find(i)] = find(j);
  int c = 0;
  for (int i = 0; i < n; ++i)
    if (find(i) == i) ++c;
  return c;
}

}  // namespace coxgalaxy
