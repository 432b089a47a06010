#pragma once

// Brute-force ep-bisimilarity: enumerate every family of candidate triples
// over the pairs reachable from the root and look for one that satisfies
// the definition and contains a root triple.

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "epcalc/equivalence.hpp"

namespace epcalc::testing {

struct OracleTriple {
  std::size_t p, q;
  std::vector<std::pair<std::size_t, std::size_t>> R;
};

inline bool related(const OracleTriple& T, std::size_t t, std::size_t u) {
  for (const auto& pr : T.R)
    if (pr.first == t && pr.second == u) return true;
  return false;
}

/// nullopt when the triple universe has more than `max_universe` members.
inline std::optional<bool> brute_force_ep(const ExplicitLtss& l, std::size_t p, std::size_t q,
                                          std::size_t max_universe = 16) {
  // every pair of states reachable by same-label moves
  std::vector<std::pair<std::size_t, std::size_t>> pairs{{p, q}};
  for (std::size_t i = 0; i < pairs.size(); ++i)
    for (std::size_t v : l.enabled(pairs[i].first))
      for (std::size_t w : l.enabled(pairs[i].second))
        if (l.transition(v).label == l.transition(w).label) {
          std::pair<std::size_t, std::size_t> n{l.transition(v).tgt, l.transition(w).tgt};
          bool seen = false;
          for (const auto& x : pairs) seen = seen || x == n;
          if (!seen) pairs.push_back(n);
        }

  // every R within en(p) x en(q) satisfying 1a, 1b and 1c
  std::vector<OracleTriple> U;
  for (const auto& [a, b] : pairs) {
    const auto& A = l.enabled(a);
    const auto& B = l.enabled(b);
    const std::size_t bits = A.size() * B.size();
    if (bits > 20) return std::nullopt;
    for (std::uint32_t m = 0; m < (std::uint32_t{1} << bits); ++m) {
      OracleTriple T{a, b, {}};
      bool ok = true;
      for (std::size_t k = 0; k < bits && ok; ++k)
        if (m >> k & 1) {
          std::size_t t = A[k / B.size()], u = B[k % B.size()];
          ok = l.transition(t).label == l.transition(u).label;
          T.R.emplace_back(t, u);
        }
      for (std::size_t t : A) {
        bool hit = false;
        for (const auto& pr : T.R) hit = hit || pr.first == t;
        ok = ok && hit;
      }
      for (std::size_t u : B) {
        bool hit = false;
        for (const auto& pr : T.R) hit = hit || pr.second == u;
        ok = ok && hit;
      }
      if (ok) U.push_back(std::move(T));
      if (U.size() > max_universe) return std::nullopt;
    }
  }

  // clause 2 for the move (v, w) of T, answered by T2
  auto clause2 = [&](const OracleTriple& T, std::size_t v, std::size_t w, const OracleTriple& T2) {
    if (T2.p != l.transition(v).tgt || T2.q != l.transition(w).tgt) return false;
    for (const auto& [t, u] : T.R) {
      for (std::size_t t2 : l.successors(t, v)) {
        bool found = false;
        for (std::size_t u2 : l.successors(u, w)) found = found || related(T2, t2, u2);
        if (!found) return false;
      }
      for (std::size_t u2 : l.successors(u, w)) {
        bool found = false;
        for (std::size_t t2 : l.successors(t, v)) found = found || related(T2, t2, u2);
        if (!found) return false;
      }
    }
    return true;
  };

  const std::size_t n = U.size();
  std::vector<std::vector<std::uint32_t>> answers(n);
  for (std::size_t i = 0; i < n; ++i)
    for (const auto& [v, w] : U[i].R) {
      std::uint32_t m = 0;
      for (std::size_t j = 0; j < n; ++j)
        if (clause2(U[i], v, w, U[j])) m |= std::uint32_t{1} << j;
      answers[i].push_back(m);
    }
  std::uint32_t roots = 0;
  for (std::size_t i = 0; i < n; ++i)
    if (U[i].p == p && U[i].q == q) roots |= std::uint32_t{1} << i;

  for (std::uint32_t fam = 1; fam < (std::uint32_t{1} << n); ++fam) {
    if (!(fam & roots)) continue;
    bool closed = true;
    for (std::size_t i = 0; i < n && closed; ++i) {
      if (!(fam >> i & 1)) continue;
      for (std::uint32_t m : answers[i])
        if (!(m & fam)) {
          closed = false;
          break;
        }
    }
    if (closed) return true;
  }
  return false;
}

}  // namespace epcalc::testing
