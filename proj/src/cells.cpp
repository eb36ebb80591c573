#include "wellround/cells.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <set>
#include <stdexcept>

#include "wellround/linalg.hpp"
#include "wellround/lp.hpp"

namespace wellround {

std::size_t sym_dim(std::size_t n) { return n * (n + 1) / 2; }

std::vector<Rational> sym_row(const IntVec& v) {
  std::vector<Rational> r;
  r.reserve(sym_dim(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = i; j < v.size(); ++j) {
      long c = static_cast<long>(v[i] * v[j]);
      r.emplace_back(i == j ? c : 2 * c);
    }
  return r;
}

RatMatrix sym_matrix(const std::vector<Rational>& x, std::size_t n) {
  if (x.size() != sym_dim(n)) throw DimensionMismatch("symmetric coordinate vector");
  RatMatrix a(n, n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j, ++k) a(i, j) = a(j, i) = x[k];
  return a;
}

std::vector<Rational> sym_coords(const RatMatrix& a) {
  std::vector<Rational> x;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i; j < a.cols(); ++j) x.push_back(a(i, j));
  return x;
}

std::size_t cell_dimension(const VectorConfig& s) { return sym_dim(s.dim()) - s.outer_rank(); }

namespace {

Rational dot_row(const std::vector<Rational>& r, const std::vector<Rational>& x) {
  Rational s = 0;
  for (std::size_t k = 0; k < r.size(); ++k) s += r[k] * x[k];
  return s;
}

// A small integer vector violating A[w] >= 1 + s|w|², looked for along
// rounded multiples of a nonpositive direction and then in a small box.
IntVec short_violator(const RatMatrix& a, const std::vector<Rational>& d, const Rational& s,
                      const VectorConfig& exclude) {
  const std::size_t n = a.rows();
  auto value = [&](const IntVec& w) {
    Rational v = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) v += a(i, j) * static_cast<long>(w[i] * w[j]);
    return v;
  };
  auto violates = [&](const IntVec& w) {
    return !is_zero(w) && is_primitive(w) && !exclude.contains(w) &&
           value(w) < 1 + s * static_cast<long>(dot(w, w));
  };
  Rational top = 0;
  for (const auto& x : d) top = std::max(top, Rational(abs(x)));
  for (long c = 1; c <= 64; ++c) {
    IntVec w(n);
    for (std::size_t i = 0; i < n; ++i) {
      Rational y = d[i] * c / top;
      mpz_class r;
      mpz_fdiv_q(r.get_mpz_t(), Rational(y + Rational(1, 2)).get_num_mpz_t(),
                 Rational(y + Rational(1, 2)).get_den_mpz_t());
      w[i] = r.get_si();
    }
    if (violates(w)) return canonical_sign(w);
  }
  for (int r = 1; r <= 3; ++r) {
    IntVec v(n, -r);
    for (;;) {
      if (violates(v)) return canonical_sign(v);
      std::size_t i = 0;
      while (i < n && v[i] == r) v[i++] = -r;
      if (i == n) break;
      ++v[i];
    }
  }
  return {};
}

RatMatrix kernel_of(const std::vector<IntVec>& vs, std::size_t n) {
  RatMatrix m(vs.size(), sym_dim(n));
  for (std::size_t r = 0; r < vs.size(); ++r) {
    auto row = sym_row(vs[r]);
    for (std::size_t k = 0; k < row.size(); ++k) m(r, k) = row[k];
  }
  return kernel(m, Field::rationals());
}

bool is_subset(const VectorConfig& a, const VectorConfig& b) {
  return std::includes(b.vectors().begin(), b.vectors().end(), a.vectors().begin(), a.vectors().end());
}

VectorConfig pick(const VectorConfig& s, unsigned long mask) {
  std::vector<IntVec> out;
  for (std::size_t i = 0; i < s.size(); ++i)
    if (mask >> i & 1) out.push_back(s[i]);
  return VectorConfig(std::move(out));
}

// Adding any further vector of the ambient set raises the outer rank.
bool closed_in(const VectorConfig& t, const VectorConfig& ambient) {
  std::size_t r = t.outer_rank();
  for (const auto& w : ambient.vectors())
    if (!t.contains(w) && t.with(w).outer_rank() == r) return false;
  return true;
}

}  // namespace

Cell cell_from_config(const VectorConfig& s) {
  if (s.empty()) throw NotSpanning();
  const std::size_t n = s.dim(), nv = sym_dim(n);
  if (s.rank() < n) throw NotSpanning();

  // Entries of a positive form with A[v] = 1 on a basis from S are bounded by
  // the trace bound Σ_i (Σ_k |c_ki|)², where e_i = Σ_k c_ki v_k.
  std::vector<IntVec> basis;
  for (const auto& v : s.vectors()) {
    basis.push_back(v);
    if (int_rank(basis) < basis.size()) basis.pop_back();
  }
  RatMatrix bm(n, n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i) bm(i, k) = static_cast<long>(basis[k][i]);
  RatMatrix c = inverse(bm);
  Rational box = 0;
  for (std::size_t i = 0; i < n; ++i) {
    Rational col = 0;
    for (std::size_t k = 0; k < n; ++k) col += abs(c(k, i));
    box += col * col;
  }

  std::set<IntVec> cuts;
  {
    IntVec v(n, -1);
    for (;;) {
      if (!is_zero(v) && is_primitive(v)) {
        IntVec w = canonical_sign(v);
        if (!s.contains(w)) cuts.insert(w);
      }
      std::size_t i = 0;
      while (i < n && v[i] == 1) v[i++] = -1;
      if (i == n) break;
      ++v[i];
    }
  }

  for (int iter = 0; iter < 500; ++iter) {
    LinearProgram lp(nv + 1);
    lp.objective[nv] = 1;
    for (const auto& v : s.vectors()) {
      auto r = sym_row(v);
      r.push_back(0);
      lp.add_eq(r, 1);
    }
    // Slack proportional to |w|² keeps the relaxation away from degenerate
    // forms, where the cuts would otherwise accumulate without end.
    for (const auto& w : cuts) {
      auto r = sym_row(w);
      r.push_back(-static_cast<long>(dot(w, w)));
      lp.add_ge(r, 1);
    }
    for (std::size_t k = 0; k <= nv; ++k) {
      std::vector<Rational> e(nv + 1);
      e[k] = 1;
      lp.add_le(e, k == nv ? Rational(1) : box);
      if (k < nv) lp.add_ge(e, -box);
    }
    LpResult res = solve_lp(lp);
    if (res.status != LpStatus::Optimal || sgn(res.objective) <= 0) throw Infeasible();
    std::vector<Rational> x(res.point.begin(), res.point.begin() + static_cast<long>(nv));
    RatMatrix a = sym_matrix(x, n);
    if (auto d = nonpositive_direction(a)) {
      IntVec w = short_violator(a, *d, res.objective, s);
      if (w.empty() || !cuts.insert(w).second) break;
      continue;
    }
    GramForm g(a);
    bool clean = true;
    for (const auto& w : vectors_below(g, 1))
      if (!s.contains(w)) {
        cuts.insert(w);
        clean = false;
      }
    if (clean) return Cell{s, cell_dimension(s), g, 1};
  }
  throw std::runtime_error("cutting-plane search for a cell witness did not converge");
}

std::optional<std::vector<Rational>> star_direction(const VectorConfig& ambient,
                                                    const VectorConfig& t) {
  const std::size_t nv = sym_dim(ambient.dim());
  std::vector<IntVec> released;
  for (const auto& w : ambient.vectors())
    if (!t.contains(w)) released.push_back(w);
  if (released.empty()) return std::vector<Rational>(nv);
  LinearProgram lp(nv + 1);
  lp.objective[nv] = 1;
  for (const auto& v : t.vectors()) {
    auto r = sym_row(v);
    r.push_back(0);
    lp.add_eq(r, 0);
  }
  for (const auto& w : released) {
    auto r = sym_row(w);
    r.push_back(-1);
    lp.add_ge(r, 0);
  }
  for (std::size_t k = 0; k <= nv; ++k) {
    std::vector<Rational> e(nv + 1);
    e[k] = 1;
    lp.add_le(e, 1);
    if (k < nv) lp.add_ge(e, -1);
  }
  LpResult res = solve_lp(lp);
  if (res.status != LpStatus::Optimal || sgn(res.objective) <= 0) return std::nullopt;
  return std::vector<Rational>(res.point.begin(), res.point.begin() + static_cast<long>(nv));
}

Cell cell_in_star(const Cell& at, const VectorConfig& t) {
  if (t == at.config) return at;
  if (!is_subset(t, at.config)) throw InvalidArgument("configuration is not in the star");
  auto d = star_direction(at.config, t);
  if (!d) throw Infeasible();
  const std::size_t n = at.config.dim();
  RatMatrix dm = sym_matrix(*d, n);
  Rational eps = 1;
  for (;;) {
    RatMatrix b = at.witness.matrix() + dm * eps;
    if (is_positive_definite(b)) {
      GramForm g(b);
      if (VectorConfig(vectors_below(g, 1)) == t) return Cell{t, cell_dimension(t), g, 1};
    }
    eps /= 2;
  }
}

bool StarOracle::feasible(const Cell& at, const VectorConfig& t) {
  auto it = cache_.find(t);
  if (it != cache_.end()) return it->second;
  bool ok = star_direction(at.config, t).has_value();
  cache_.emplace(t, ok);
  return ok;
}

std::vector<VectorConfig> StarOracle::star(const Cell& at) {
  auto it = stars_.find(at.config);
  if (it != stars_.end()) return it->second;
  const VectorConfig& s = at.config;
  const std::size_t n = s.dim();
  if (s.size() >= 8 * sizeof(unsigned long)) throw DimensionUnsupported("configuration too large");
  std::vector<VectorConfig> out;
  const unsigned long full = (1ul << s.size()) - 1;
  for (unsigned long mask = 1; mask < full; ++mask) {
    if (static_cast<std::size_t>(std::popcount(mask)) < n) continue;
    VectorConfig t = pick(s, mask);
    if (t.rank() < n || !closed_in(t, s)) continue;
    if (feasible(at, t)) out.push_back(std::move(t));
  }
  std::sort(out.begin(), out.end(), [](const VectorConfig& a, const VectorConfig& b) {
    std::size_t da = cell_dimension(a), db = cell_dimension(b);
    return da != db ? da < db : a < b;
  });
  stars_.emplace(s, out);
  return out;
}

GramForm ray_exit(const GramForm& a, const VectorConfig& keep, const std::vector<Rational>& d) {
  const std::size_t n = a.dim();
  RatMatrix dm = sym_matrix(d, n);
  auto along = [&](const IntVec& w) { return dot_row(sym_row(w), d); };
  // Parameter at which w reaches value 1 moving along D.
  auto reach = [&](const IntVec& w) {
    Rational dw = along(w);
    if (sgn(dw) >= 0)
      throw std::logic_error("ray exit: vector does not shrink along the ray: " + to_string(w) +
                             " A=" + to_string(a.eval(w)) + " D=" + to_string(dw));
    return Rational((a.eval(w) - 1) / -dw);
  };
  // lo: a parameter known to stay inside the closure; hi: one known to leave
  // the positive cone.
  Rational t = 1, lo = 0;
  std::optional<Rational> hi;
  for (int iter = 0; iter < 10000; ++iter) {
    RatMatrix b = a.matrix() + dm * t;
    if (!is_positive_definite(b)) {
      hi = t;
      t = (lo + t) / 2;
      continue;
    }
    GramForm g(b);
    std::optional<Rational> lower;
    bool hit = false;
    for (const auto& w : vectors_below(g, 1)) {
      if (keep.contains(w)) continue;
      Rational v = g.eval(w);
      if (v < 1) {
        Rational r = reach(w);
        if (!lower || r < *lower) lower = r;
      } else {
        hit = true;
      }
    }
    if (lower) {
      t = *lower;
      continue;
    }
    if (hit) return g;
    lo = t;
    t = hi ? Rational((t + *hi) / 2) : Rational(t * 2);
  }
  throw std::runtime_error("ray exit did not terminate");
}

Cell edge_endpoint(const Cell& vertex, const VectorConfig& edge) {
  const std::size_t n = vertex.config.dim();
  RatMatrix k = kernel_of(edge.vectors(), n);
  if (k.cols() != 1) throw InvalidArgument("configuration is not a 1-cell");
  std::vector<Rational> d = k.col(0);
  for (const auto& w : vertex.config.vectors()) {
    if (edge.contains(w)) continue;
    if (sgn(dot_row(sym_row(w), d)) < 0)
      for (auto& x : d) x = -x;
    break;
  }
  GramForm g = ray_exit(vertex.witness, edge, d);
  VectorConfig m(vectors_below(g, 1));
  if (cell_dimension(m) != 0) throw std::logic_error("edge walk ended away from a 0-cell");
  return Cell{m, 0, g, 1};
}

std::vector<Cell> closure_vertices(const Cell& c, StarOracle& oracle) {
  const std::size_t n = c.config.dim();
  GramForm a = c.witness;
  VectorConfig s = c.config;
  while (cell_dimension(s) > 0) {
    RatMatrix k = kernel_of(s.vectors(), n);
    a = ray_exit(a, s, k.col(0));
    s = VectorConfig(vectors_below(a, 1));
  }
  std::vector<Cell> out{Cell{s, 0, a, 1}};
  std::set<VectorConfig> seen{s};
  for (std::size_t head = 0; head < out.size(); ++head) {
    Cell v = out[head];
    std::vector<IntVec> extra;
    for (const auto& w : v.config.vectors())
      if (!c.config.contains(w)) extra.push_back(w);
    for (unsigned long mask = 0; mask < (1ul << extra.size()); ++mask) {
      std::vector<IntVec> t = c.config.vectors();
      for (std::size_t i = 0; i < extra.size(); ++i)
        if (mask >> i & 1) t.push_back(extra[i]);
      VectorConfig e(std::move(t));
      if (cell_dimension(e) != 1 || !closed_in(e, v.config) || !oracle.feasible(v, e)) continue;
      Cell other = edge_endpoint(v, e);
      if (seen.insert(other.config).second) out.push_back(std::move(other));
    }
  }
  return out;
}

std::vector<Cell> cell_faces(const Cell& c) {
  StarOracle oracle;
  std::map<VectorConfig, Cell> faces;
  for (const Cell& v : closure_vertices(c, oracle)) {
    std::vector<IntVec> extra;
    for (const auto& w : v.config.vectors())
      if (!c.config.contains(w)) extra.push_back(w);
    for (unsigned long mask = 1; mask < (1ul << extra.size()); ++mask) {
      std::vector<IntVec> t = c.config.vectors();
      for (std::size_t i = 0; i < extra.size(); ++i)
        if (mask >> i & 1) t.push_back(extra[i]);
      VectorConfig f(std::move(t));
      if (faces.count(f) || !closed_in(f, v.config) || !oracle.feasible(v, f)) continue;
      faces.emplace(f, cell_in_star(v, f));
    }
  }
  std::vector<Cell> out;
  for (auto& [k, cell] : faces) out.push_back(std::move(cell));
  std::stable_sort(out.begin(), out.end(), [](const Cell& a, const Cell& b) { return a.dim < b.dim; });
  return out;
}

std::vector<Cell> cell_cofaces(const Cell& c) {
  StarOracle oracle;
  std::vector<Cell> out;
  for (const auto& t : oracle.star(c))
    if (cell_dimension(t) == c.dim + 1) out.push_back(cell_in_star(c, t));
  return out;
}

bool respects_flag(const VectorConfig& s, const RationalFlag& f) {
  if (f.n() != s.dim()) throw DimensionMismatch("flag and configuration dimensions differ");
  for (std::size_t j = 0; j < f.length(); ++j) {
    std::vector<IntVec> inside;
    for (const auto& v : s.vectors())
      if (f.contains(j, v)) inside.push_back(v);
    if (int_rank(inside) != f.member_dim(j)) return false;
  }
  return true;
}

std::vector<RationalFlag> flags_respected_by(const Cell& c) {
  const VectorConfig& s = c.config;
  const std::size_t n = s.dim();
  std::set<IntMat> spaces;
  for (unsigned long mask = 1; mask < (1ul << s.size()); ++mask) {
    VectorConfig t = pick(s, mask);
    std::size_t r = t.rank();
    if (r == 0 || r >= n) continue;
    IntMat m(n, t.size());
    for (std::size_t j = 0; j < t.size(); ++j)
      for (std::size_t i = 0; i < n; ++i) m(i, j) = t[j][i];
    spaces.insert(saturated_basis(m));
  }
  std::vector<IntMat> list(spaces.begin(), spaces.end());
  std::stable_sort(list.begin(), list.end(), [](const IntMat& a, const IntMat& b) { return a.cols() < b.cols(); });
  auto inside = [&](const IntMat& small, const IntMat& big) {
    std::vector<IntVec> cols;
    for (std::size_t j = 0; j < big.cols(); ++j) {
      IntVec v(n);
      for (std::size_t i = 0; i < n; ++i) v[i] = big(i, j);
      cols.push_back(v);
    }
    std::size_t r = int_rank(cols);
    for (std::size_t j = 0; j < small.cols(); ++j) {
      IntVec v(n);
      for (std::size_t i = 0; i < n; ++i) v[i] = small(i, j);
      cols.push_back(v);
      if (int_rank(cols) != r) return false;
      cols.pop_back();
    }
    return true;
  };
  std::vector<RationalFlag> out;
  std::vector<std::size_t> chain;
  auto extend = [&](auto&& self, std::size_t from) -> void {
    for (std::size_t k = from; k < list.size(); ++k) {
      if (!chain.empty()) {
        const IntMat& top = list[chain.back()];
        if (list[k].cols() <= top.cols() || !inside(top, list[k])) continue;
      }
      chain.push_back(k);
      std::vector<IntMat> members;
      for (auto i : chain) members.push_back(list[i]);
      out.emplace_back(n, members);
      self(self, k + 1);
      chain.pop_back();
    }
  };
  extend(extend, 0);
  std::sort(out.begin(), out.end());
  return out;
}

Cell root_vertex(std::size_t n, const IntMat& u) {
  std::vector<IntVec> vs;
  RatMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    IntVec e(n, 0);
    e[i] = 1;
    vs.push_back(e);
    for (std::size_t j = 0; j < n; ++j) a(i, j) = i == j ? Rational(1) : Rational(1, 2);
    for (std::size_t j = i + 1; j < n; ++j) {
      IntVec d(n, 0);
      d[i] = 1;
      d[j] = -1;
      vs.push_back(d);
    }
  }
  VectorConfig s = VectorConfig(vs).transformed(u);
  GramForm g = GramForm(a).transformed(unimodular_inverse(u));
  if (VectorConfig(vectors_below(g, 1)) != s) throw std::logic_error("root configuration is not the minimal set");
  return Cell{s, 0, g, 1};
}

}  // namespace wellround
