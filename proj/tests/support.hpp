#pragma once

#include <random>

#include "wellround/lattice.hpp"

namespace testsupport {

using namespace wellround;

// GMP does not canonicalize two-argument construction.
inline Rational q(long p, long d = 1) {
  Rational r(p, d);
  r.canonicalize();
  return r;
}

inline RatMatrix rat(std::initializer_list<std::initializer_list<long>> rows) {
  RatMatrix m(rows.size(), rows.begin()->size());
  std::size_t i = 0;
  for (const auto& r : rows) {
    std::size_t j = 0;
    for (long x : r) m(i, j++) = x;
    ++i;
  }
  return m;
}

inline IntMat ints(std::initializer_list<std::initializer_list<std::int64_t>> rows) {
  return IntMat(rows);
}

// Random positive-definite rational form: BᵀB plus a small rational diagonal
// shift, with bounded entries.
inline GramForm random_form(std::size_t n, std::mt19937_64& rng, int entry = 3, int den = 4) {
  std::uniform_int_distribution<int> e(-entry, entry);
  std::uniform_int_distribution<int> dd(1, den);
  for (;;) {
    IntMat b(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) b(i, j) = e(rng);
    if (determinant(b) == 0) continue;
    RatMatrix bq = convert<Rational>(b);
    RatMatrix a = bq.transpose() * bq;
    for (std::size_t i = 0; i < n; ++i) a(i, i) += q(dd(rng) - 1, dd(rng));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        Rational t = q(e(rng), 5 * dd(rng));
        a(i, j) += t;
        a(j, i) += t;
      }
    if (!is_positive_definite(a)) continue;
    return GramForm(a);
  }
}

// Brute-force list of all nonzero vectors with max-norm <= r, sign-canonical.
inline std::vector<IntVec> box(std::size_t n, int r) {
  std::vector<IntVec> out;
  IntVec x(n, -r);
  for (;;) {
    if (!is_zero(x) && canonical_sign(x) == x) out.push_back(x);
    std::size_t i = 0;
    while (i < n && x[i] == r) x[i++] = -r;
    if (i == n) break;
    ++x[i];
  }
  return out;
}

}  // namespace testsupport
