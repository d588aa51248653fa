#pragma once

// Words witnessing that a move's output presentation really holds in the
// input group. A blow-up replaces t by tvt (word t v t) and w_j (a reduced
// word for the longest element of W_j); a twist replaces each b in B by
// w_j b w_j. Feeding these words and the claimed output matrix to
// verify_generating_set checks every entry by exact order computations.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "coxgalaxy/coxsys.hpp"
#include "coxgalaxy/moves.hpp"
#include "coxgalaxy/oracle.hpp"

namespace coxgalaxy {

struct MoveWitness {
  CoxeterMatrix claimed;          // the system the move produces
  std::vector<GroupWord> words;   // its generators as words in the input system
};

namespace detail {

// Longest element of the parabolic on j, written in the ambient system's
// letters. nullopt when the parabolic exceeds the cap.
inline std::optional<GroupWord> parabolic_longest_word(const CoxeterMatrix& m,
                                                       const GeneratorSubset& j,
                                                       std::uint64_t cap) {
  auto local = longest_element_word(m.restricted(j), cap);
  if (!local) return std::nullopt;
  GroupWord global;
  global.reserve(local->size());
  for (int x : *local) global.push_back(j[x]);
  return global;
}

}  // namespace detail

inline std::optional<MoveWitness> blow_up_witness(const CoxeterMatrix& m,
                                                  const PseudoTransposition& pt,
                                                  std::uint64_t cap) {
  MoveWitness w{blow_up(m, pt), {}};
  auto wj = detail::parabolic_longest_word(m, pt.j, cap);
  if (!wj) return std::nullopt;
  int n = m.rank();
  w.words.resize(n + 1);
  for (int i = 0; i < n; ++i) w.words[i] = {i};
  w.words[pt.t] = {pt.t, pt.v, pt.t};
  w.words[n] = std::move(*wj);
  return w;
}

inline std::optional<MoveWitness> twist_witness(const CoxeterMatrix& m,
                                                const TwistDescriptor& d,
                                                std::uint64_t cap) {
  MoveWitness w{apply_twist(m, d), {}};
  auto wj = detail::parabolic_longest_word(m, d.j, cap);
  if (!wj) return std::nullopt;
  int n = m.rank();
  w.words.resize(n);
  for (int i = 0; i < n; ++i) w.words[i] = {i};
  for (int b : d.b) {
    GroupWord conj = *wj;
    conj.push_back(b);
    conj.insert(conj.end(), wj->rbegin(), wj->rend());
    w.words[b] = free_reduce(conj);
  }
  return w;
}

inline std::optional<VerifyReport> verify_move(const CoxeterMatrix& m,
                                               const PseudoTransposition& pt,
                                               std::uint64_t cap) {
  auto w = blow_up_witness(m, pt, cap);
  if (!w) return std::nullopt;
  return verify_generating_set(m, w->words, w->claimed, cap);
}

inline std::optional<VerifyReport> verify_move(const CoxeterMatrix& m,
                                               const TwistDescriptor& d,
                                               std::uint64_t cap) {
  auto w = twist_witness(m, d, cap);
  if (!w) return std::nullopt;
  return verify_generating_set(m, w->words, w->claimed, cap);
}

}  // namespace coxgalaxy
