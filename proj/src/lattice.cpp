#include "wellround/lattice.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace wellround {

GramForm::GramForm(RatMatrix a) : a_(std::move(a)) {
  const std::size_t n = a_.rows();
  if (a_.cols() != n || n == 0) throw DimensionMismatch("Gram matrix must be square and nonempty");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (a_(i, j) != a_(j, i)) throw InvalidArgument("Gram matrix must be symmetric");
  ldl_ = ldlt(a_);
}

GramForm GramForm::identity(std::size_t n) { return GramForm(RatMatrix::identity(n)); }

GramForm GramForm::diagonal(const std::vector<Rational>& d) {
  RatMatrix a(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) a(i, i) = d[i];
  return GramForm(a);
}

Rational GramForm::eval(const IntVec& v) const { return pair(v, v); }

Rational GramForm::pair(const IntVec& v, const IntVec& w) const {
  const std::size_t n = dim();
  Rational s = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (v[i] == 0) continue;
    Rational row = 0;
    for (std::size_t j = 0; j < n; ++j)
      if (w[j] != 0) row += a_(i, j) * static_cast<long>(w[j]);
    s += row * static_cast<long>(v[i]);
  }
  return s;
}

GramForm GramForm::scaled(const Rational& c) const {
  if (sgn(c) <= 0) throw InvalidArgument("scale factor must be positive");
  return GramForm(a_ * c);
}

GramForm GramForm::transformed(const IntMat& u) const {
  RatMatrix ur = convert<Rational>(u);
  return GramForm(ur.transpose() * a_ * ur);
}

IntVec canonical_sign(IntVec v) {
  for (auto x : v) {
    if (x == 0) continue;
    if (x < 0)
      for (auto& y : v) y = -y;
    break;
  }
  return v;
}

bool is_zero(const IntVec& v) {
  return std::all_of(v.begin(), v.end(), [](std::int64_t x) { return x == 0; });
}

bool is_primitive(const IntVec& v) {
  std::int64_t g = 0;
  for (auto x : v) g = std::gcd(g, x);
  return g == 1;
}

IntVec apply_matrix(const IntMat& u, const IntVec& v) {
  IntVec r(u.rows(), 0);
  for (std::size_t i = 0; i < u.rows(); ++i)
    for (std::size_t j = 0; j < u.cols(); ++j) r[i] += u(i, j) * v[j];
  return r;
}

std::int64_t dot(const IntVec& a, const IntVec& b) {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

VectorConfig::VectorConfig(std::vector<IntVec> vectors) {
  for (auto& v : vectors) {
    if (!vectors.empty() && v.size() != vectors.front().size())
      throw DimensionMismatch("configuration vectors differ in length");
    if (!is_primitive(v)) throw InvalidArgument("configuration vector not primitive: " + to_string(v));
    v = canonical_sign(std::move(v));
  }
  std::sort(vectors.begin(), vectors.end());
  vectors.erase(std::unique(vectors.begin(), vectors.end()), vectors.end());
  vecs_ = std::move(vectors);
}

bool VectorConfig::contains(const IntVec& v) const {
  return std::binary_search(vecs_.begin(), vecs_.end(), canonical_sign(v));
}

VectorConfig VectorConfig::transformed(const IntMat& u) const {
  std::vector<IntVec> out;
  out.reserve(vecs_.size());
  for (const auto& v : vecs_) out.push_back(apply_matrix(u, v));
  return VectorConfig(std::move(out));
}

VectorConfig VectorConfig::with(const IntVec& v) const {
  std::vector<IntVec> out = vecs_;
  out.push_back(v);
  return VectorConfig(std::move(out));
}

std::size_t VectorConfig::rank() const { return int_rank(vecs_); }

std::size_t VectorConfig::outer_rank() const {
  std::vector<IntVec> sym;
  sym.reserve(vecs_.size());
  for (const auto& v : vecs_) {
    IntVec s;
    for (std::size_t i = 0; i < v.size(); ++i)
      for (std::size_t j = i; j < v.size(); ++j) s.push_back(v[i] * v[j]);
    sym.push_back(std::move(s));
  }
  return int_rank(sym);
}

std::size_t int_rank(const std::vector<IntVec>& vs) {
  if (vs.empty()) return 0;
  const std::size_t len = vs.front().size();
  std::vector<std::vector<__int128>> rows;
  rows.reserve(vs.size());
  for (const auto& v : vs) rows.emplace_back(v.begin(), v.end());
  auto g128 = [](__int128 a, __int128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
      __int128 t = a % b;
      a = b;
      b = t;
    }
    return a;
  };
  std::size_t r = 0;
  for (std::size_t c = 0; c < len && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && rows[p][c] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[r]);
    for (std::size_t i = r + 1; i < rows.size(); ++i) {
      if (rows[i][c] == 0) continue;
      __int128 a = rows[r][c], b = rows[i][c];
      __int128 g = g128(a, b);
      __int128 fa = a / g, fb = b / g;
      __int128 content = 0;
      for (std::size_t j = c; j < len; ++j) {
        rows[i][j] = rows[i][j] * fa - rows[r][j] * fb;
        content = g128(content, rows[i][j]);
      }
      if (content > 1)
        for (std::size_t j = c; j < len; ++j) rows[i][j] /= content;
    }
    ++r;
  }
  return r;
}

std::string to_string(const IntVec& v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ')';
  return os.str();
}

std::string to_string(const VectorConfig& c) {
  std::string s = "{";
  for (std::size_t i = 0; i < c.size(); ++i) s += (i ? "," : "") + to_string(c[i]);
  return s + "}";
}

namespace {

Integer floor_sqrt(const Rational& q) {
  if (sgn(q) <= 0) return 0;
  Integer f = q.get_num() / q.get_den();
  Integer r;
  mpz_sqrt(r.get_mpz_t(), f.get_mpz_t());
  return r;
}

Integer round_nearest(const Rational& c) {
  Rational shifted = c + Rational(1, 2);
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), shifted.get_num_mpz_t(), shifted.get_den_mpz_t());
  return r;
}

struct SliceEnumerator {
  const GramForm& a;
  const Rational& bound;
  const std::function<void(const IntVec&, const Rational&)>& emit;
  std::size_t n;
  IntVec x;

  // level: coordinate being chosen; used: value consumed by higher levels;
  // upper_zero: all coordinates above `level` are zero.
  void descend(std::size_t level, const Rational& used, bool upper_zero) {
    const Ldlt& f = a.ldl();
    Rational center = 0;
    for (std::size_t j = level + 1; j < n; ++j)
      if (x[j] != 0) center -= f.lower(j, level) * static_cast<long>(x[j]);
    const Rational& d = f.pivots[level];
    Rational room = bound - used;
    auto visit = [&](const Integer& xi) -> bool {
      Rational diff = Rational(xi) - center;
      Rational contrib = d * diff * diff;
      if (contrib > room) return false;
      x[level] = xi.get_si();
      Rational total = used + contrib;
      bool zero_here = upper_zero && xi == 0;
      if (level == 0) {
        if (!zero_here) emit(x, total);
      } else {
        descend(level - 1, total, zero_here);
      }
      return true;
    };
    Integer start = round_nearest(center);
    if (upper_zero && start < 0) start = 0;
    for (Integer xi = start;; ++xi)
      if (!visit(xi)) break;
    for (Integer xi = start - 1; !(upper_zero && xi < 0); --xi)
      if (!visit(xi)) break;
    x[level] = 0;
  }
};

}  // namespace

std::int64_t last_coordinate_bound(const GramForm& a, const Rational& bound) {
  const std::size_t n = a.dim();
  return floor_sqrt(bound / a.ldl().pivots[n - 1]).get_si();
}

void enumerate_slice(const GramForm& a, const Rational& bound, std::int64_t last,
                     const std::function<void(const IntVec&, const Rational&)>& emit) {
  const std::size_t n = a.dim();
  if (last < 0) return;
  Rational top = a.ldl().pivots[n - 1] * Rational(static_cast<long>(last)) *
                 Rational(static_cast<long>(last));
  if (top > bound) return;
  SliceEnumerator e{a, bound, emit, n, IntVec(n, 0)};
  e.x[n - 1] = last;
  if (n == 1) {
    if (last != 0) emit(e.x, top);
    return;
  }
  e.descend(n - 2, top, last == 0);
}

namespace {

std::vector<std::pair<IntVec, Rational>> collect_below(const GramForm& a, const Rational& bound) {
  std::vector<std::pair<IntVec, Rational>> out;
  auto emit = [&](const IntVec& v, const Rational& val) {
    out.emplace_back(canonical_sign(v), val);
  };
  const std::int64_t top = last_coordinate_bound(a, bound);
  for (std::int64_t k = 0; k <= top; ++k) enumerate_slice(a, bound, k, emit);
  return out;
}

}  // namespace

std::vector<IntVec> vectors_below(const GramForm& a, const Rational& bound, EnumerationMode mode) {
  if (sgn(bound) <= 0) throw InvalidArgument("enumeration bound must be positive");
  std::vector<IntVec> out;
  for (auto& [v, val] : collect_below(a, bound))
    if (mode == EnumerationMode::Raw || is_primitive(v)) out.push_back(std::move(v));
  std::sort(out.begin(), out.end());
  return out;
}

MinimaResult minimal_vectors(const GramForm& a) {
  Rational bound = a.matrix()(0, 0);
  for (std::size_t i = 1; i < a.dim(); ++i) bound = std::min(bound, a.matrix()(i, i));
  auto all = collect_below(a, bound);
  Rational best = bound;
  for (const auto& [v, val] : all) best = std::min(best, val);
  std::vector<IntVec> mins;
  for (auto& [v, val] : all)
    if (val == best) mins.push_back(v);
  return MinimaResult{best, VectorConfig(std::move(mins))};
}

Rational arithmetic_minimum(const GramForm& a) { return minimal_vectors(a).min_sq; }

bool is_well_rounded(const GramForm& a) {
  return minimal_vectors(a).vectors.rank() == a.dim();
}

GramForm normalize(const GramForm& a) {
  Rational m = arithmetic_minimum(a);
  if (m == 1) return a;
  return a.scaled(1 / m);
}

}  // namespace wellround
