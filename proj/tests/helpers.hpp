#pragma once

#include <cstdint>
#include <vector>

#include "coxgalaxy/coxsys.hpp"

namespace coxgalaxy::testutil {

// Path with the given consecutive edge labels; all other pairs commute.
inline CoxeterMatrix path_system(const std::vector<std::uint32_t>& labels) {
  CoxeterMatrix::Builder b(static_cast<int>(labels.size()) + 1);
  for (size_t i = 0; i < labels.size(); ++i)
    b.set(static_cast<int>(i), static_cast<int>(i) + 1, Label::finite(labels[i]));
  return b.build();
}

// Rank-3 system from its three labels (0 encodes the infinite label).
inline CoxeterMatrix triangle(std::uint32_t a, std::uint32_t b, std::uint32_t c) {
  CoxeterMatrix::Builder bld(3);
  bld.set(0, 1, Label::from_serialized(a));
  bld.set(0, 2, Label::from_serialized(b));
  bld.set(1, 2, Label::from_serialized(c));
  return bld.build();
}

// Full matrix from the flattened upper triangle (0,1),(0,2),...,(1,2),...
// read row by row; 0 encodes the infinite label.
inline CoxeterMatrix from_upper(int n, const std::vector<std::uint32_t>& flat) {
  CoxeterMatrix::Builder b(n);
  size_t k = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) b.set(i, j, Label::from_serialized(flat[k++]));
  return b.build();
}

inline CoxeterMatrix type_a(int n) {
  return path_system(std::vector<std::uint32_t>(n - 1, 3));
}

inline CoxeterMatrix type_b(int n) {
  std::vector<std::uint32_t> labels(n - 1, 3);
  labels[0] = 4;
  return path_system(labels);
}

// Fork at one end: 0 and 1 both joined to 2, then a path onward.
inline CoxeterMatrix type_d(int n) {
  CoxeterMatrix::Builder b(n);
  b.set(0, 2, Label::finite(3));
  b.set(1, 2, Label::finite(3));
  for (int i = 2; i + 1 < n; ++i) b.set(i, i + 1, Label::finite(3));
  return b.build();
}

// Path 0..n-2 with the last node hanging off position 2.
inline CoxeterMatrix type_e(int n) {
  CoxeterMatrix::Builder b(n);
  for (int i = 0; i + 2 < n; ++i) b.set(i, i + 1, Label::finite(3));
  b.set(2, n - 1, Label::finite(3));
  return b.build();
}

inline CoxeterMatrix type_f4() { return path_system({3, 4, 3}); }

inline CoxeterMatrix type_h(int n) {
  std::vector<std::uint32_t> labels(n - 1, 3);
  labels[0] = 5;
  return path_system(labels);
}

inline CoxeterMatrix dihedral(std::uint32_t m) {
  CoxeterMatrix::Builder b(2);
  b.set(0, 1, m == 0 ? Label::infinity() : Label::finite(m));
  return b.build();
}

// Direct product: block diagonal, label 2 across blocks.
inline CoxeterMatrix product(const std::vector<CoxeterMatrix>& parts) {
  int n = 0;
  for (const auto& p : parts) n += p.rank();
  CoxeterMatrix::Builder b(n);
  int base = 0;
  for (const auto& p : parts) {
    for (int i = 0; i < p.rank(); ++i)
      for (int j = i + 1; j < p.rank(); ++j) b.set(base + i, base + j, p.label(i, j));
    base += p.rank();
  }
  return b.build();
}

}  // namespace coxgalaxy::testutil
