#include "wellround/exactla.hpp"

#include <algorithm>
#include <limits>

namespace wellround {

Rational parse_rational(const std::string& text) {
  Rational q;
  if (q.set_str(text, 10) != 0) throw InvalidArgument("not a rational: '" + text + "'");
  if (q.get_den() == 0) throw InvalidArgument("zero denominator: '" + text + "'");
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

IntMat to_int(const RatMatrix& m) {
  IntMat r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (m(i, j).get_den() != 1) throw InvalidArgument("matrix entry is not an integer");
      const Integer& z = m(i, j).get_num();
      if (!z.fits_slong_p()) throw InvalidArgument("integer entry overflows int64");
      r(i, j) = z.get_si();
    }
  return r;
}

IntMat to_int(const ZMatrix& m) {
  IntMat r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (!m(i, j).fits_slong_p()) throw InvalidArgument("integer entry overflows int64");
      r(i, j) = m(i, j).get_si();
    }
  return r;
}

std::optional<Ldlt> try_ldlt(const RatMatrix& a, std::size_t* failed_index) {
  const std::size_t n = a.rows();
  if (a.cols() != n) throw DimensionMismatch("ldlt needs a square matrix");
  Ldlt out{RatMatrix::identity(n), std::vector<Rational>(n)};
  RatMatrix& l = out.lower;
  for (std::size_t j = 0; j < n; ++j) {
    Rational d = a(j, j);
    for (std::size_t k = 0; k < j; ++k) d -= l(j, k) * l(j, k) * out.pivots[k];
    if (sgn(d) <= 0) {
      if (failed_index) *failed_index = j;
      return std::nullopt;
    }
    out.pivots[j] = d;
    for (std::size_t i = j + 1; i < n; ++i) {
      Rational s = a(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k) * out.pivots[k];
      l(i, j) = s / d;
    }
  }
  return out;
}

Ldlt ldlt(const RatMatrix& a) {
  std::size_t bad = 0;
  auto r = try_ldlt(a, &bad);
  if (!r) throw NotPositiveDefinite(bad + 1);
  return *r;
}

bool is_positive_definite(const RatMatrix& a) { return try_ldlt(a).has_value(); }

std::optional<std::vector<Rational>> nonpositive_direction(const RatMatrix& a) {
  const std::size_t n = a.rows();
  RatMatrix l = RatMatrix::identity(n);
  std::vector<Rational> piv(n);
  for (std::size_t j = 0; j < n; ++j) {
    Rational d = a(j, j);
    for (std::size_t k = 0; k < j; ++k) d -= l(j, k) * l(j, k) * piv[k];
    if (sgn(d) <= 0) {
      // Back-substitute Lᵀx = e_j on the leading block; then xᵀAx = d.
      std::vector<Rational> x(n);
      x[j] = 1;
      for (std::size_t ii = j; ii-- > 0;) {
        Rational s = 0;
        for (std::size_t k = ii + 1; k <= j; ++k) s += l(k, ii) * x[k];
        x[ii] = -s;
      }
      return x;
    }
    piv[j] = d;
    for (std::size_t i = j + 1; i < n; ++i) {
      Rational s = a(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k) * piv[k];
      l(i, j) = s / d;
    }
  }
  return std::nullopt;
}

namespace {

void row_axpy(ZMatrix& m, std::size_t dst, const Integer& q, std::size_t src, std::size_t from = 0) {
  for (std::size_t j = from; j < m.cols(); ++j)
    if (m(src, j) != 0) m(dst, j) -= q * m(src, j);
}

void col_axpy(ZMatrix& m, std::size_t dst, const Integer& q, std::size_t src, std::size_t from = 0) {
  for (std::size_t i = from; i < m.rows(); ++i)
    if (m(i, src) != 0) m(i, dst) -= q * m(i, src);
}

SnfResult snf_impl(const ZMatrix& m, bool track) {
  const std::size_t r = m.rows(), c = m.cols();
  ZMatrix d = m;
  SnfResult out;
  if (track) {
    out.left = ZMatrix::identity(r);
    out.right = ZMatrix::identity(c);
  }
  const std::size_t k = std::min(r, c);
  out.diag.assign(k, Integer(0));
  for (std::size_t t = 0; t < k; ++t) {
    for (;;) {
      std::size_t pi = r, pj = c;
      for (std::size_t i = t; i < r; ++i)
        for (std::size_t j = t; j < c; ++j)
          if (d(i, j) != 0 && (pi == r || abs(d(i, j)) < abs(d(pi, pj)))) {
            pi = i;
            pj = j;
          }
      if (pi == r) goto done;
      d.swap_rows(t, pi);
      d.swap_cols(t, pj);
      if (track) {
        out.left.swap_rows(t, pi);
        out.right.swap_cols(t, pj);
      }
      bool dirty = false;
      for (std::size_t i = t + 1; i < r; ++i) {
        if (d(i, t) == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), d(i, t).get_mpz_t(), d(t, t).get_mpz_t());
        row_axpy(d, i, q, t, t);
        if (track) row_axpy(out.left, i, q, t);
        if (d(i, t) != 0) dirty = true;
      }
      for (std::size_t j = t + 1; j < c; ++j) {
        if (d(t, j) == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), d(t, j).get_mpz_t(), d(t, t).get_mpz_t());
        col_axpy(d, j, q, t, t);
        if (track) col_axpy(out.right, j, q, t);
        if (d(t, j) != 0) dirty = true;
      }
      if (dirty) continue;
      bool fixed = false;
      for (std::size_t i = t + 1; i < r && !fixed; ++i)
        for (std::size_t j = t + 1; j < c; ++j)
          if (d(i, j) % d(t, t) != 0) {
            Integer minus_one(-1);
            row_axpy(d, t, minus_one, i, t);
            if (track) row_axpy(out.left, t, minus_one, i);
            fixed = true;
            break;
          }
      if (!fixed) break;
    }
    if (d(t, t) < 0) {
      for (std::size_t j = t; j < c; ++j) d(t, j) = -d(t, j);
      if (track)
        for (std::size_t j = 0; j < r; ++j) out.left(t, j) = -out.left(t, j);
    }
    out.diag[t] = d(t, t);
  }
done:
  return out;
}

}  // namespace

SnfResult snf(const ZMatrix& m) { return snf_impl(m, true); }

std::vector<Integer> snf_diagonal(const ZMatrix& m) { return snf_impl(m, false).diag; }

HnfResult hnf_with_transform(const ZMatrix& m) {
  const std::size_t rows = m.rows(), k = m.cols();
  HnfResult out{m, ZMatrix::identity(k), 0};
  ZMatrix& h = out.form;
  ZMatrix& v = out.transform;
  std::size_t c = 0;
  for (std::size_t i = 0; i < rows && c < k; ++i) {
    for (;;) {
      std::size_t best = k;
      for (std::size_t j = c; j < k; ++j)
        if (h(i, j) != 0 && (best == k || abs(h(i, j)) < abs(h(i, best)))) best = j;
      if (best == k) break;
      h.swap_cols(c, best);
      v.swap_cols(c, best);
      bool clean = true;
      for (std::size_t j = c + 1; j < k; ++j) {
        if (h(i, j) == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), h(i, j).get_mpz_t(), h(i, c).get_mpz_t());
        col_axpy(h, j, q, c);
        col_axpy(v, j, q, c);
        if (h(i, j) != 0) clean = false;
      }
      if (clean) break;
    }
    if (h(i, c) == 0) continue;
    if (h(i, c) < 0) {
      for (std::size_t r = 0; r < rows; ++r) h(r, c) = -h(r, c);
      for (std::size_t r = 0; r < k; ++r) v(r, c) = -v(r, c);
    }
    for (std::size_t j = 0; j < c; ++j) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), h(i, j).get_mpz_t(), h(i, c).get_mpz_t());
      if (q == 0) continue;
      col_axpy(h, j, q, c);
      col_axpy(v, j, q, c);
    }
    ++c;
  }
  out.rank = c;
  return out;
}

ZMatrix hnf(const ZMatrix& m) { return hnf_with_transform(m).form; }

ZMatrix lattice_basis(const ZMatrix& m) {
  HnfResult h = hnf_with_transform(m);
  return h.form.block(0, 0, m.rows(), h.rank);
}

ZMatrix integer_kernel(const ZMatrix& m) {
  HnfResult h = hnf_with_transform(m);
  const std::size_t k = m.cols();
  ZMatrix ker = h.transform.block(0, h.rank, k, k - h.rank);
  return lattice_basis(ker);
}

ZMatrix saturate(const ZMatrix& m) {
  const std::size_t n = m.rows();
  ZMatrix left = integer_kernel(m.transpose());
  if (left.cols() == 0) return ZMatrix::identity(n);
  if (left.cols() == n) return ZMatrix(n, 0);
  return integer_kernel(left.transpose());
}

std::vector<Integer> primitive_part(const std::vector<Integer>& v) {
  Integer g = 0;
  for (const auto& x : v) g = gcd(g, x);
  if (g == 0) return v;
  std::vector<Integer> r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = v[i] / g;
  return r;
}

namespace {

// In-place row reduction; returns rank and the determinant sign/product.
std::size_t eliminate(RatMatrix& a, Rational* det) {
  const std::size_t rows = a.rows(), cols = a.cols();
  std::size_t r = 0;
  if (det) *det = 1;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a(p, c) == 0) ++p;
    if (p == rows) {
      if (det) *det = 0;
      continue;
    }
    if (p != r) {
      a.swap_rows(p, r);
      if (det) *det = -*det;
    }
    if (det) *det *= a(r, c);
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (a(i, c) == 0) continue;
      Rational f = a(i, c) / a(r, c);
      for (std::size_t j = c; j < cols; ++j)
        if (a(r, j) != 0) a(i, j) -= f * a(r, j);
    }
    ++r;
  }
  return r;
}

}  // namespace

Rational determinant(const RatMatrix& a) {
  if (a.rows() != a.cols()) throw DimensionMismatch("determinant of non-square matrix");
  RatMatrix w = a;
  Rational d;
  std::size_t r = eliminate(w, &d);
  return r == a.rows() ? d : Rational(0);
}

std::size_t rank(const RatMatrix& a) {
  RatMatrix w = a;
  return eliminate(w, nullptr);
}

RatMatrix inverse(const RatMatrix& a) {
  const std::size_t n = a.rows();
  if (a.cols() != n) throw DimensionMismatch("inverse of non-square matrix");
  RatMatrix w = a;
  RatMatrix inv = RatMatrix::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && w(p, c) == 0) ++p;
    if (p == n) throw InvalidArgument("singular matrix");
    w.swap_rows(p, c);
    inv.swap_rows(p, c);
    Rational s = 1 / w(c, c);
    for (std::size_t j = 0; j < n; ++j) {
      w(c, j) *= s;
      inv(c, j) *= s;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || w(i, c) == 0) continue;
      Rational f = w(i, c);
      for (std::size_t j = 0; j < n; ++j) {
        if (w(c, j) != 0) w(i, j) -= f * w(c, j);
        if (inv(c, j) != 0) inv(i, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

std::int64_t determinant(const IntMat& a) {
  const std::size_t n = a.rows();
  if (a.cols() != n) throw DimensionMismatch("determinant of non-square matrix");
  if (n == 0) return 1;
  // Bareiss fraction-free elimination.
  std::vector<__int128> m(a.data().begin(), a.data().end());
  auto at = [&](std::size_t i, std::size_t j) -> __int128& { return m[i * n + j]; };
  __int128 prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (at(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && at(p, k) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(at(k, j), at(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        at(i, j) = (at(i, j) * at(k, k) - at(i, k) * at(k, j)) / prev;
    prev = at(k, k);
  }
  __int128 d = at(n - 1, n - 1) * sign;
  if (d > std::numeric_limits<std::int64_t>::max() || d < std::numeric_limits<std::int64_t>::min())
    throw InvalidArgument("determinant overflows int64");
  return static_cast<std::int64_t>(d);
}

IntMat unimodular_inverse(const IntMat& a) {
  return to_int(inverse(convert<Rational>(a)));
}

}  // namespace wellround
