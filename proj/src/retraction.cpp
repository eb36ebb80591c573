#include "wellround/retraction.hpp"

#include <algorithm>
#include <stdexcept>

namespace wellround {

Rational FlagSplitting::block_value(std::size_t j, const IntVec& v) const {
  Rational s = 0;
  for (std::size_t k = bounds[j]; k < bounds[j + 1]; ++k) {
    Rational y = 0;
    for (std::size_t c = 0; c < v.size(); ++c)
      if (v[c] != 0) y += coords(k, c) * static_cast<long>(v[c]);
    s += weights[k] * y * y;
  }
  return s;
}

FlagSplitting flag_split(const GramForm& a, const RationalFlag& f) {
  const std::size_t n = a.dim();
  if (f.n() != n) throw DimensionMismatch("flag and form dimensions differ");
  RatMatrix b = convert<Rational>(f.adapted_basis());
  Ldlt l = ldlt(b.transpose() * a.matrix() * b);
  FlagSplitting s;
  s.coords = l.lower.transpose() * inverse(b);
  s.coords_inverse = inverse(s.coords);
  s.weights = l.pivots;
  s.bounds.push_back(0);
  for (auto d : f.dims()) s.bounds.push_back(d);
  s.bounds.push_back(n);
  for (std::size_t j = 0; j + 1 < s.bounds.size(); ++j) {
    RatMatrix e(n, n);
    for (std::size_t k = s.bounds[j]; k < s.bounds[j + 1]; ++k) e(k, k) = 1;
    s.projectors.push_back(s.coords_inverse * e * s.coords);
  }
  return s;
}

ScalingVector::ScalingVector(std::vector<Rational> s_sq) : s_(std::move(s_sq)) {
  if (s_.empty()) throw InvalidArgument("scaling vector needs at least one block");
  for (const auto& x : s_)
    if (sgn(x) <= 0) throw InvalidArgument("scaling factors must be positive");
  if (s_[0] != 1) {
    Rational first = s_[0];
    for (auto& x : s_) x /= first;
  }
}

ScalingVector ScalingVector::ones(std::size_t blocks) {
  return ScalingVector(std::vector<Rational>(blocks, Rational(1)));
}

ScalingVector ScalingVector::from_rho(const std::vector<Rational>& rho_sq) {
  std::vector<Rational> s{Rational(1)};
  Rational prod = 1;
  for (const auto& r : rho_sq) {
    if (sgn(r) <= 0) throw InvalidArgument("root coordinates must be positive");
    prod *= r;
    s.push_back(1 / prod);
  }
  return ScalingVector(std::move(s));
}

std::vector<Rational> ScalingVector::rho_sq() const {
  std::vector<Rational> r;
  for (std::size_t j = 0; j + 1 < s_.size(); ++j) r.push_back(s_[j] / s_[j + 1]);
  return r;
}

ScalingVector ScalingVector::operator*(const ScalingVector& o) const {
  if (o.size() != size()) throw DimensionMismatch("scaling vectors differ in length");
  std::vector<Rational> p(size());
  for (std::size_t j = 0; j < size(); ++j) p[j] = s_[j] * o.s_[j];
  return ScalingVector(std::move(p));
}

namespace {

GramForm scale_split(const FlagSplitting& sp, const std::vector<Rational>& s_sq) {
  const std::size_t n = sp.coords.rows();
  RatMatrix d(n, n);
  for (std::size_t j = 0; j < sp.blocks(); ++j)
    for (std::size_t k = sp.bounds[j]; k < sp.bounds[j + 1]; ++k) d(k, k) = sp.weights[k] * s_sq[j];
  return GramForm(sp.coords.transpose() * d * sp.coords);
}

RationalFlag single(std::size_t n, const IntMat& m) { return RationalFlag(n, {m}); }

IntMat span_of(const VectorConfig& c) {
  IntMat m(c.dim(), c.size());
  for (std::size_t j = 0; j < c.size(); ++j)
    for (std::size_t i = 0; i < c.dim(); ++i) m(i, j) = c[j][i];
  return saturated_basis(m);
}

}  // namespace

GramForm scale_along_flag(const GramForm& a, const RationalFlag& f, const ScalingVector& s) {
  if (s.size() != f.length() + 1) throw DimensionMismatch("scaling vector length must be #blocks");
  return scale_split(flag_split(a, f), s.s_sq());
}

Rational stopping_mu(const GramForm& a, const IntMat& m, std::vector<IntVec>* tight) {
  const std::size_t n = a.dim();
  if (m.cols() >= n) throw AlreadyFull();
  FlagSplitting sp = flag_split(a, single(n, m));
  Rational guess(1, 2);
  for (;;) {
    GramForm scaled = scale_split(sp, {Rational(1), guess});
    std::optional<Rational> best;
    std::vector<std::pair<IntVec, Rational>> found;
    for (const auto& w : vectors_below(scaled, 1)) {
      Rational q = sp.block_value(1, w);
      if (sgn(q) == 0) continue;
      Rational val = (1 - sp.block_value(0, w)) / q;
      found.emplace_back(w, val);
      if (!best || val > *best) best = val;
    }
    if (!best) {
      // Every vector outside M stays longer than 1: the guess overshoots.
      guess /= 2;
      continue;
    }
    if (*best == guess) {
      if (tight)
        for (const auto& [w, val] : found)
          if (val == guess) tight->push_back(w);
      return guess;
    }
    guess = *best;
  }
}

ScalingVector RetractionTrace::composite() const {
  std::vector<Rational> s{Rational(1)};
  std::vector<std::size_t> dims = irredundant.dims();
  for (std::size_t j = 0; j < dims.size(); ++j) {
    Rational prod = 1;
    for (const auto& st : stages)
      if (st.span.cols() <= dims[j]) prod *= st.mu_sq;
    s.push_back(prod);
  }
  return ScalingVector(std::move(s));
}

RetractionTrace retract(const GramForm& a) {
  const std::size_t n = a.dim();
  GramForm f = normalize(a);
  RetractionTrace tr{f, {}, f, RationalFlag()};
  std::vector<IntMat> members;
  for (std::size_t i = 1; i < n; ++i) {
    MinimaResult mv = minimal_vectors(f);
    RetractionStage st{span_of(mv.vectors), Rational(1), {}};
    if (st.span.cols() < n &&
        (members.empty() || !(members.back().cols() == st.span.cols())))
      members.push_back(st.span);
    if (st.span.cols() <= i) {
      st.mu_sq = stopping_mu(f, st.span, &st.tight);
      f = scale_split(flag_split(f, single(n, st.span)), {Rational(1), st.mu_sq});
    }
    tr.stages.push_back(std::move(st));
  }
  tr.final_form = f;
  tr.irredundant = RationalFlag(n, members);
  if (!is_well_rounded(f) || arithmetic_minimum(f) != 1)
    throw std::logic_error("retraction did not reach a normalized well-rounded form");
  if (!(scale_along_flag(tr.start, tr.irredundant, tr.composite()) == f))
    throw std::logic_error("retraction disagrees with its geodesic-action description");
  return tr;
}

namespace {

// Largest rational below sqrt(x) found by bisection to the given width.
std::pair<Rational, Rational> sqrt_bracket(const Rational& x, const Rational& width) {
  Rational lo = 0, hi = std::max(Rational(1), x);
  while (hi - lo > width) {
    Rational mid = (lo + hi) / 2;
    if (mid * mid <= x)
      lo = mid;
    else
      hi = mid;
  }
  return {lo, hi};
}

}  // namespace

GramForm retract_path(const GramForm& a, const Rational& t, const Rational& precision) {
  if (t < 0 || t > 1) throw InvalidArgument("path parameter must lie in [0,1]");
  if (sgn(precision) <= 0) throw InvalidArgument("precision must be positive");
  RetractionTrace tr = retract(a);
  if (t == 0) return tr.start;
  if (t == 1) return tr.final_form;
  const std::size_t n = a.dim();
  Rational x = t * static_cast<long>(n - 1);
  Integer whole = x.get_num() / x.get_den();  // floor since x > 0
  std::size_t stage = whole.get_ui();
  Rational tau = x - Rational(whole);
  if (tau == 0) {  // stage boundary: previous stage completed exactly
    tau = 1;
    --stage;
  }
  GramForm f = tr.start;
  for (std::size_t k = 0; k < stage; ++k) {
    const auto& st = tr.stages[k];
    if (st.mu_sq != 1) f = scale_split(flag_split(f, single(n, st.span)), {Rational(1), st.mu_sq});
  }
  const auto& st = tr.stages[stage];
  if (st.mu_sq == 1) return f;
  FlagSplitting sp = flag_split(f, single(n, st.span));
  if (tau == 1) return scale_split(sp, {Rational(1), st.mu_sq});
  // Entries are affine in c = (1 + (μ-1)τ)²; bound the spread of c times the
  // largest entry of the scaled block.
  GramForm base = scale_split(sp, {Rational(1), Rational(1)});
  RatMatrix block = base.matrix() - scale_split(sp, {Rational(1), Rational(1, 2)}).matrix();
  Rational scale = 0;
  for (const auto& e : block.data()) scale = std::max(scale, Rational(abs(e) * 2));
  auto c_of = [&](const Rational& mu) {
    Rational b = 1 + (mu - 1) * tau;
    return Rational(b * b);
  };
  Rational width = precision;
  for (;;) {
    auto [lo, hi] = sqrt_bracket(st.mu_sq, width);
    if ((c_of(hi) - c_of(lo)) * scale <= precision) return scale_split(sp, {Rational(1), c_of(lo)});
    width /= 2;
  }
}

GramForm restrict_form(const GramForm& a, const IntMat& m) {
  RatMatrix mq = convert<Rational>(m);
  return GramForm(mq.transpose() * a.matrix() * mq);
}

GramForm projected_form(const GramForm& a, const IntMat& v_basis) {
  const std::size_t n = a.dim(), d = v_basis.cols();
  if (d >= n) throw AlreadyFull();
  RatMatrix g = convert<Rational>(complete_basis(saturated_basis(v_basis)));
  RatMatrix ag = g.transpose() * a.matrix() * g;
  RatMatrix p = ag.block(0, 0, d, d), q = ag.block(0, d, d, n - d), r = ag.block(d, d, n - d, n - d);
  if (d == 0) return GramForm(r);
  return GramForm(r - q.transpose() * inverse(p) * q);
}

OrthantBound orthant_bound(const GramForm& a, const RationalFlag& f) {
  if (f.n() != a.dim()) throw DimensionMismatch("flag and form dimensions differ");
  OrthantBound ob;
  Rational prefix = 1;  // t_1²⋯t_{j-1}²
  for (std::size_t j = 0; j < f.length(); ++j) {
    GramForm inner = restrict_form(a, f.member(j));
    Rational inner_min = arithmetic_minimum(inner);
    Rational alpha = arithmetic_minimum(projected_form(a, f.member(j))) / inner_min;
    Rational beta = 1;
    for (const auto& st : retract(inner).stages) beta *= st.mu_sq;
    Rational t = std::min(Rational(1), Rational(alpha * beta / (4 * prefix)));
    ob.alpha_sq.push_back(alpha);
    ob.beta_sq.push_back(beta);
    ob.t_sq.push_back(t);
    prefix *= t;
  }
  return ob;
}

}  // namespace wellround
