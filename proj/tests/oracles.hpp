#pragma once
// Independent reference computations used only by the tests.

#include "modunits/zlinalg.hpp"

#include <random>
#include <vector>

namespace oracle {

using modunits::Integer;
using modunits::IntMatrix;
using modunits::Rational;

// Canonicalized a/b; mpq_class's two-argument constructor does not reduce.
inline Rational frac(long a, long b) {
  Rational r(a, b);
  r.canonicalize();
  return r;
}

inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(20240611);
  return gen;
}

inline long uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng()); }

inline IntMatrix random_matrix(std::size_t r, std::size_t c, long lo, long hi) {
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = uniform(lo, hi);
  return m;
}

// Cofactor expansion; exponential but fine for the sizes used.
inline Integer cofactor_det(const IntMatrix& m) {
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  if (n == 1) return m(0, 0);
  Integer total = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (m(0, j) == 0) continue;
    IntMatrix sub(n - 1, n - 1);
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t k = 0, c = 0; k < n; ++k)
        if (k != j) sub(i - 1, c++) = m(i, k);
    Integer term = m(0, j) * cofactor_det(sub);
    total += (j % 2 == 0) ? term : Integer(-term);
  }
  return total;
}

inline void combinations(std::size_t n, std::size_t k, std::vector<std::vector<std::size_t>>& out,
                         std::vector<std::size_t>& cur, std::size_t start = 0) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = start; i < n; ++i) {
    cur.push_back(i);
    combinations(n, k, out, cur, i + 1);
    cur.pop_back();
  }
}

// Determinantal divisors: gcd of all k x k minors, k = 1..min(r, c).
// Invariant factors are successive quotients.
inline std::vector<Integer> smith_by_minors(const IntMatrix& m) {
  std::vector<Integer> dk;
  const std::size_t kmax = std::min(m.rows(), m.cols());
  for (std::size_t k = 1; k <= kmax; ++k) {
    std::vector<std::vector<std::size_t>> rs, cs;
    std::vector<std::size_t> cur;
    combinations(m.rows(), k, rs, cur);
    combinations(m.cols(), k, cs, cur);
    Integer g = 0;
    for (const auto& r : rs)
      for (const auto& c : cs) {
        IntMatrix sub(k, k);
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = 0; j < k; ++j) sub(i, j) = m(r[i], c[j]);
        g = gcd(g, cofactor_det(sub));
      }
    if (g == 0) break;
    dk.push_back(g);
  }
  std::vector<Integer> inv;
  Integer prev = 1;
  for (const auto& d : dk) {
    inv.push_back(d / prev);
    prev = d;
  }
  return inv;
}

}  // namespace oracle
