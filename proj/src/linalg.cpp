#include "wellround/linalg.hpp"

namespace wellround {

Field Field::prime(long p) {
  if (p < 2) throw InvalidArgument("field characteristic must be a prime");
  for (long d = 2; d * d <= p; ++d)
    if (p % d == 0) throw InvalidArgument("field characteristic must be a prime");
  return Field(p);
}

std::string Field::name() const { return p_ == 0 ? "Q" : "Fp:" + std::to_string(p_); }

Rational Field::reduce(const Rational& x) const {
  if (p_ == 0) return x;
  Integer pz(p_);
  Integer num = x.get_num() % pz;
  Integer den = x.get_den() % pz;
  if (den == 0) throw InvalidArgument("denominator divisible by the characteristic");
  Integer dinv;
  mpz_invert(dinv.get_mpz_t(), den.get_mpz_t(), pz.get_mpz_t());
  Integer r = (num * dinv) % pz;
  if (r < 0) r += pz;
  return Rational(r);
}

Rational Field::inv(const Rational& x) const {
  if (x == 0) throw InvalidArgument("inverse of zero");
  if (p_ == 0) return 1 / x;
  return reduce(Rational(x.get_den(), x.get_num()));
}

RatMatrix reduce(const ZMatrix& m, const Field& f) {
  RatMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m(i, j) != 0) r(i, j) = f.reduce(Rational(m(i, j)));
  return r;
}

RatMatrix reduce(const RatMatrix& m, const Field& f) {
  if (f.is_rational()) return m;
  RatMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m(i, j) != 0) r(i, j) = f.reduce(m(i, j));
  return r;
}

Echelon rref(RatMatrix m, const Field& f) {
  m = reduce(m, f);
  const std::size_t rows = m.rows(), cols = m.cols();
  Echelon out;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m(p, c) == 0) ++p;
    if (p == rows) continue;
    m.swap_rows(p, r);
    Rational s = f.inv(m(r, c));
    for (std::size_t j = c; j < cols; ++j)
      if (m(r, j) != 0) m(r, j) = f.mul(m(r, j), s);
    std::vector<std::size_t> nz;
    for (std::size_t j = c; j < cols; ++j)
      if (m(r, j) != 0) nz.push_back(j);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m(i, c) == 0) continue;
      Rational fac = m(i, c);
      for (std::size_t j : nz) m(i, j) = f.reduce(m(i, j) - fac * m(r, j));
    }
    out.pivots.push_back(c);
    ++r;
  }
  out.form = std::move(m);
  return out;
}

std::size_t rank(const RatMatrix& m, const Field& f) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  // Row-reduce the shorter orientation.
  if (m.rows() > m.cols()) return rref(m.transpose(), f).pivots.size();
  return rref(m, f).pivots.size();
}

RatMatrix kernel(const RatMatrix& m, const Field& f) {
  const std::size_t cols = m.cols();
  Echelon e = rref(m, f);
  std::vector<bool> is_pivot(cols, false);
  for (auto c : e.pivots) is_pivot[c] = true;
  RatMatrix k(cols, cols - e.pivots.size());
  std::size_t idx = 0;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    k(free, idx) = 1;
    for (std::size_t r = 0; r < e.pivots.size(); ++r)
      if (e.form(r, free) != 0) k(e.pivots[r], idx) = f.reduce(-e.form(r, free));
    ++idx;
  }
  return k;
}

RatMatrix column_basis(const RatMatrix& m, const Field& f) {
  Echelon e = rref(m, f);
  RatMatrix b(m.rows(), e.pivots.size());
  RatMatrix mr = reduce(m, f);
  for (std::size_t k = 0; k < e.pivots.size(); ++k) b.set_col(k, mr.col(e.pivots[k]));
  return b;
}

std::optional<std::vector<Rational>> solve(const RatMatrix& m, const std::vector<Rational>& b,
                                           const Field& f) {
  RatMatrix aug(m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = b[i];
  }
  Echelon e = rref(aug, f);
  if (!e.pivots.empty() && e.pivots.back() == m.cols()) return std::nullopt;
  std::vector<Rational> x(m.cols());
  for (std::size_t r = 0; r < e.pivots.size(); ++r) x[e.pivots[r]] = e.form(r, m.cols());
  return x;
}

RatMatrix hconcat(const RatMatrix& a, const RatMatrix& b) {
  if (a.cols() == 0) return b.cols() == 0 ? RatMatrix(std::max(a.rows(), b.rows()), 0) : b;
  if (b.cols() == 0) return a;
  if (a.rows() != b.rows()) throw DimensionMismatch("hconcat");
  RatMatrix r(a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) r(i, a.cols() + j) = b(i, j);
  }
  return r;
}

RatMatrix vconcat(const RatMatrix& a, const RatMatrix& b) {
  return hconcat(a.transpose(), b.transpose()).transpose();
}

RatMatrix multiply(const RatMatrix& a, const RatMatrix& b, const Field& f) {
  return reduce(a * b, f);
}

}  // namespace wellround
