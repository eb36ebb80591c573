#include "wellround/boundary.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

#include "wellround/exactla.hpp"

namespace wellround {

namespace {

RatMatrix empty_cols(std::size_t rows) { return RatMatrix(rows, 0); }

std::size_t rank_of(const RatMatrix& m, const Field& f) {
  return m.rows() && m.cols() ? rank(m, f) : 0;
}

RatMatrix kernel_basis(const RatMatrix& m, std::size_t cols, const Field& f) {
  if (m.rows() == 0) return RatMatrix::identity(cols);
  if (cols == 0) return RatMatrix(0, 0);
  return kernel(m, f);
}

RatMatrix mul(const RatMatrix& a, const RatMatrix& b, const Field& f) {
  if (a.cols() == 0 || b.cols() == 0) return RatMatrix(a.rows(), b.cols());
  return multiply(a, b, f);
}

// Rank of the map on (co)homology induced by `map`, given a basis of source
// cycles and a spanning set of target boundaries.
std::size_t induced_rank(const RatMatrix& map, const RatMatrix& cycles, const RatMatrix& bounds,
                         const Field& f) {
  if (cycles.cols() == 0) return 0;
  RatMatrix image = mul(map, cycles, f);
  return rank_of(hconcat(bounds, image), f) - rank_of(bounds, f);
}

// Transposed integer matrix reduced into the field.
RatMatrix reduced_transpose(const ZMatrix& m, const Field& f) { return reduce(m.transpose(), f); }

// Upper unitriangular matrix: preserves every standard flag.
IntMat random_upper(std::size_t n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> k(-2, 2);
  IntMat u = IntMat::identity(n);
  for (int t = 0; t < 4; ++t)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) u = u * elementary(n, i, j, k(rng));
  return u;
}

}  // namespace

std::size_t DoubleComplex::max_q() const {
  std::size_t m = 0;
  for (const auto& col : columns)
    for (const auto& s : col) m = std::max(m, s.complex->dimension());
  return m;
}

std::size_t DoubleComplex::dim(std::size_t p, std::size_t q) const {
  if (p >= columns.size()) return 0;
  std::size_t d = 0;
  for (const auto& s : columns[p]) d += s.complex->count(q);
  return d;
}

std::size_t DoubleComplex::total_dim(std::size_t k) const {
  std::size_t d = 0;
  for (std::size_t p = 0; p < columns.size() && p <= k; ++p) d += dim(p, k - p);
  return d;
}

std::size_t DoubleComplex::offset(std::size_t k, std::size_t p, std::size_t s) const {
  std::size_t off = 0;
  for (std::size_t pp = 0; pp < p; ++pp)
    if (pp <= k) off += dim(pp, k - pp);
  for (std::size_t ss = 0; ss < s; ++ss) off += columns[p][ss].complex->count(k - p);
  return off;
}

std::vector<std::size_t> DoubleComplex::column_of(std::size_t k) const {
  std::vector<std::size_t> out;
  for (std::size_t p = 0; p < columns.size() && p <= k; ++p) out.insert(out.end(), dim(p, k - p), p);
  return out;
}

ZMatrix DoubleComplex::total_differential(std::size_t k) const {
  ZMatrix d(total_dim(k + 1), total_dim(k));
  for (std::size_t p = 0; p < columns.size() && p <= k; ++p) {
    const std::size_t q = k - p;
    for (std::size_t s = 0; s < columns[p].size(); ++s) {
      const QuotientComplex& c = *columns[p][s].complex;
      if (c.count(q) == 0 || c.count(q + 1) == 0) continue;
      // δ^q = ∂_{q+1}ᵀ
      const ZMatrix& b = c.boundary(q + 1);
      const std::size_t r0 = offset(k + 1, p, s), c0 = offset(k, p, s);
      const long sign = p % 2 ? -1 : 1;
      for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j)
          if (b(i, j) != 0) d(r0 + j, c0 + i) += b(i, j) * sign;
    }
  }
  for (const auto& h : horizontal) {
    if (h.p > k) continue;
    const std::size_t q = k - h.p;
    if (q >= h.map.matrices.size()) continue;
    const ZMatrix& m = h.map.matrices[q];  // rows: source simplices, cols: target simplices
    const std::size_t r0 = offset(k + 1, h.p + 1, h.target), c0 = offset(k, h.p, h.source);
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j)
        if (m(i, j) != 0) d(r0 + j, c0 + i) += m(i, j) * h.sign;
  }
  return d;
}

bool DoubleComplex::d_squared_zero() const {
  for (std::size_t k = 0; k + 1 <= top_degree(); ++k) {
    ZMatrix a = total_differential(k), b = total_differential(k + 1);
    if (a.cols() == 0 || b.rows() == 0 || a.rows() == 0) continue;
    ZMatrix prod = b * a;
    for (const auto& x : prod.data())
      if (x != 0) return false;
  }
  return true;
}

DoubleComplex build_double_complex(const GroupSpec& group, const DoubleComplexOptions& options) {
  const std::size_t n = group.n;
  if (n < 2) throw DimensionUnsupported("boundary cohomology needs n >= 2");
  std::mt19937_64 rng(options.reseed.value_or(0));
  DoubleComplex dc;
  dc.group = group;
  for (std::size_t p = 0; p + 2 <= n; ++p) {
    std::vector<ColumnSummand> col;
    for (const auto& type : flag_types(n, p + 1)) {
      FlagOrbitSet set = flag_orbits(group, type);
      for (auto f : set.reps) {
        if (options.reseed) f = flag_canonical(f.transformed(random_element(group, rng, 2)));
        EnumerationOptions eo;
        eo.max_cells = options.max_cells;
        if (options.reseed) eo.seed = random_upper(n, rng);
        auto w = std::make_shared<const QuotientComplex>(
            std::make_shared<const OrbitComplex>(subcomplex_WF(group, f, eo)));
        col.push_back(ColumnSummand{f, std::move(w)});
      }
    }
    dc.columns.push_back(std::move(col));
  }
  for (std::size_t p = 0; p + 1 < dc.columns.size(); ++p)
    for (std::size_t t = 0; t < dc.columns[p + 1].size(); ++t) {
      const ColumnSummand& target = dc.columns[p + 1][t];
      auto subs = subflags_with_signs(target.flag);
      for (std::size_t i = 0; i < subs.size(); ++i) {
        const auto& [g, sign] = subs[i];
        // Types differ across summands; only a representative of g's type can match.
        std::size_t src = 0;
        std::optional<IntMat> gamma;
        for (; src < dc.columns[p].size(); ++src) {
          if (dc.columns[p][src].flag.dims() != g.dims()) continue;
          if ((gamma = flag_carry(g, dc.columns[p][src].flag, group))) break;
        }
        if (!gamma) throw std::logic_error("deleted flag has no representative");
        HorizontalBlock h;
        h.p = p;
        h.source = src;
        h.target = t;
        h.deleted = i;
        h.sign = sign;
        h.gamma = *gamma;
        h.map = induced_map(*target.complex, *dc.columns[p][src].complex, *gamma);
        if (!is_chain_map(h.map, *target.complex, *dc.columns[p][src].complex))
          throw std::logic_error("twisted restriction is not a chain map");
        dc.horizontal.push_back(std::move(h));
      }
    }
  if (!dc.d_squared_zero()) throw std::logic_error("total differential does not square to zero");
  return dc;
}

namespace {

// Degreewise data of the total complex over a field.
struct Total {
  std::vector<RatMatrix> d;               // d[k] : T^k → T^{k+1}
  std::vector<std::vector<std::size_t>> col;
  std::vector<std::size_t> dims;
};

Total total_over(const DoubleComplex& dc, const Field& f) {
  Total t;
  const std::size_t top = dc.top_degree();
  for (std::size_t k = 0; k <= top + 1; ++k) {
    t.dims.push_back(dc.total_dim(k));
    t.col.push_back(dc.column_of(k));
  }
  for (std::size_t k = 0; k <= top; ++k) t.d.push_back(reduce(dc.total_differential(k), f));
  return t;
}

// Basis of {x ∈ F^p T^k : D x ∈ F^{p+r} T^{k+1}}.
RatMatrix filtered_cycles(const Total& t, long r, long p, std::size_t k, const Field& f) {
  const std::size_t dim = t.dims[k];
  std::vector<std::size_t> src, rows;
  for (std::size_t i = 0; i < dim; ++i)
    if (static_cast<long>(t.col[k][i]) >= p) src.push_back(i);
  if (src.empty()) return empty_cols(dim);
  if (k < t.d.size())
    for (std::size_t j = 0; j < t.dims[k + 1]; ++j)
      if (static_cast<long>(t.col[k + 1][j]) < p + r) rows.push_back(j);
  RatMatrix sub(rows.size(), src.size());
  for (std::size_t a = 0; a < rows.size(); ++a)
    for (std::size_t b = 0; b < src.size(); ++b) sub(a, b) = t.d[k](rows[a], src[b]);
  RatMatrix kb = kernel_basis(sub, src.size(), f);
  RatMatrix out(dim, kb.cols());
  for (std::size_t b = 0; b < src.size(); ++b)
    for (std::size_t c = 0; c < kb.cols(); ++c) out(src[b], c) = kb(b, c);
  return out;
}

std::size_t page_dim(const Total& t, long r, long p, std::size_t k, const Field& f) {
  RatMatrix a = filtered_cycles(t, r, p, k, f);
  if (a.cols() == 0) return 0;
  RatMatrix lower = filtered_cycles(t, r - 1, p + 1, k, f);
  RatMatrix bounds = empty_cols(t.dims[k]);
  if (k > 0) bounds = mul(t.d[k - 1], filtered_cycles(t, r - 1, p - r + 1, k - 1, f), f);
  return a.cols() - rank_of(hconcat(lower, bounds), f);
}

// Cohomology representatives of one column summand in degree q, with the
// coboundary space alongside for coordinate solving.
struct ColumnBasis {
  RatMatrix reps;    // columns in C^q
  RatMatrix bounds;  // image of δ^{q-1}
};

ColumnBasis column_basis(const QuotientComplex& c, std::size_t q, const Field& f) {
  const std::size_t dim = c.count(q);
  RatMatrix delta = q + 1 <= c.dimension() ? reduced_transpose(c.boundary(q + 1), f) : RatMatrix(0, dim);
  RatMatrix cycles = kernel_basis(delta, dim, f);
  RatMatrix bounds = q >= 1 && c.count(q - 1) ? reduced_transpose(c.boundary(q), f) : empty_cols(dim);
  ColumnBasis b{empty_cols(dim), bounds};
  RatMatrix span = bounds;
  std::size_t r = rank_of(span, f);
  for (std::size_t j = 0; j < cycles.cols(); ++j) {
    RatMatrix cand = hconcat(span, cycles.block(0, j, dim, 1));
    std::size_t r2 = rank_of(cand, f);
    if (r2 > r) {
      span = cand;
      r = r2;
      b.reps = hconcat(b.reps, cycles.block(0, j, dim, 1));
    }
  }
  return b;
}

}  // namespace

SpectralPage e1_page(const DoubleComplex& dc, const Field& field) {
  SpectralPage page;
  page.r = 1;
  const std::size_t cols = dc.column_count(), mq = dc.max_q();
  page.dims.assign(cols, std::vector<std::size_t>(mq + 1, 0));
  // bases[p][q]: block-diagonal over summands, in the coordinates of column p degree q.
  std::vector<std::vector<ColumnBasis>> bases(cols, std::vector<ColumnBasis>(mq + 1));
  for (std::size_t p = 0; p < cols; ++p)
    for (std::size_t q = 0; q <= mq; ++q) {
      RatMatrix reps(dc.dim(p, q), 0), bounds(dc.dim(p, q), 0);
      std::size_t row = 0;
      for (const auto& s : dc.columns[p]) {
        ColumnBasis b = column_basis(*s.complex, q, field);
        const std::size_t m = s.complex->count(q);
        RatMatrix r2(dc.dim(p, q), reps.cols() + b.reps.cols());
        RatMatrix b2(dc.dim(p, q), bounds.cols() + b.bounds.cols());
        for (std::size_t i = 0; i < dc.dim(p, q); ++i) {
          for (std::size_t j = 0; j < reps.cols(); ++j) r2(i, j) = reps(i, j);
          for (std::size_t j = 0; j < bounds.cols(); ++j) b2(i, j) = bounds(i, j);
        }
        for (std::size_t i = 0; i < m; ++i) {
          for (std::size_t j = 0; j < b.reps.cols(); ++j) r2(row + i, reps.cols() + j) = b.reps(i, j);
          for (std::size_t j = 0; j < b.bounds.cols(); ++j) b2(row + i, bounds.cols() + j) = b.bounds(i, j);
        }
        reps = std::move(r2);
        bounds = std::move(b2);
        row += m;
      }
      bases[p][q] = ColumnBasis{reps, bounds};
      page.dims[p][q] = reps.cols();
    }
  // d_1 from the horizontal differential on representatives.
  for (std::size_t p = 0; p + 1 < cols; ++p)
    for (std::size_t q = 0; q <= mq; ++q) {
      const ColumnBasis& from = bases[p][q];
      const ColumnBasis& to = bases[p + 1][q];
      RatMatrix dh(dc.dim(p + 1, q), dc.dim(p, q));
      for (const auto& h : dc.horizontal) {
        if (h.p != p || q >= h.map.matrices.size()) continue;
        std::size_t r0 = 0, c0 = 0;
        for (std::size_t s = 0; s < h.target; ++s) r0 += dc.columns[p + 1][s].complex->count(q);
        for (std::size_t s = 0; s < h.source; ++s) c0 += dc.columns[p][s].complex->count(q);
        const ZMatrix& m = h.map.matrices[q];
        for (std::size_t i = 0; i < m.rows(); ++i)
          for (std::size_t j = 0; j < m.cols(); ++j)
            if (m(i, j) != 0) dh(r0 + j, c0 + i) = field.add(dh(r0 + j, c0 + i), field.reduce(Rational(m(i, j) * h.sign)));
      }
      RatMatrix images = mul(dh, from.reps, field);
      RatMatrix coords(to.reps.cols(), from.reps.cols());
      RatMatrix system = hconcat(to.reps, to.bounds);
      for (std::size_t j = 0; j < images.cols(); ++j) {
        if (system.cols() == 0) break;
        auto sol = solve(system, images.col(j), field);
        if (!sol) throw std::logic_error("d_1 image is not a cocycle");
        for (std::size_t i = 0; i < to.reps.cols(); ++i) coords(i, j) = (*sol)[i];
      }
      PageDifferential d;
      d.p = p;
      d.q = q;
      d.rank = rank_of(coords, field);
      d.matrix = coords;
      page.differentials.push_back(std::move(d));
    }
  return page;
}

SpectralSequence spectral_sequence(const DoubleComplex& dc, const Field& field) {
  SpectralSequence ss;
  ss.field = field;
  Total t = total_over(dc, field);
  const std::size_t cols = dc.column_count(), mq = dc.max_q();
  SpectralPage first = e1_page(dc, field);
  for (std::size_t i = 0; i + 1 < first.differentials.size(); ++i) {
    const auto& a = first.differentials[i];
    for (const auto& b : first.differentials)
      if (b.p == a.p + 1 && b.q == a.q && a.matrix && b.matrix && a.matrix->cols() && b.matrix->rows()) {
        RatMatrix prod = mul(*b.matrix, *a.matrix, field);
        for (const auto& x : prod.data())
          if (x != 0) ss.d1_squared_zero = false;
      }
  }
  // Page dimensions from the filtration, r = 1 .. cols + 1 (the last is E_∞).
  std::vector<std::vector<std::vector<std::size_t>>> dims;
  for (std::size_t r = 1; r <= cols + 1; ++r) {
    std::vector<std::vector<std::size_t>> d(cols, std::vector<std::size_t>(mq + 1, 0));
    for (std::size_t p = 0; p < cols; ++p)
      for (std::size_t q = 0; q <= mq; ++q)
        d[p][q] = page_dim(t, static_cast<long>(r), static_cast<long>(p), p + q, field);
    dims.push_back(std::move(d));
  }
  if (dims[0] != first.dims) throw std::logic_error("E_1 from the filtration disagrees with column cohomology");
  for (std::size_t r = 1; r <= cols + 1; ++r) {
    SpectralPage page = r == 1 ? first : SpectralPage{};
    page.r = r;
    page.dims = dims[r - 1];
    if (r <= cols) {
      // rank d_r(p) = dim E_r(p) − dim E_{r+1}(p) − rank d_r(p − r), by increasing p.
      std::vector<std::vector<long>> rk(cols, std::vector<long>(mq + 2, 0));
      for (std::size_t p = 0; p < cols; ++p)
        for (std::size_t q = 0; q <= mq; ++q) {
          long v = static_cast<long>(dims[r - 1][p][q]) - static_cast<long>(dims[r][p][q]);
          // incoming differential lands at (p, q) from (p − r, q + r − 1)
          if (p >= r && q + r - 1 <= mq) v -= rk[p - r][q + r - 1];
          rk[p][q] = v;
          if (v < 0) throw std::logic_error("inconsistent spectral sequence ranks");
          if (r > 1 && p + r < cols && q + 1 >= r) {
            PageDifferential d;
            d.p = p;
            d.q = q;
            d.rank = static_cast<std::size_t>(v);
            page.differentials.push_back(d);
          }
        }
    }
    ss.pages.push_back(std::move(page));
  }
  HomologyResult h = total_cohomology(dc, field);
  ss.abutment = h.betti;
  return ss;
}

HomologyResult total_cohomology(const DoubleComplex& dc, const Coefficients& c) {
  HomologyResult h;
  h.coefficients = c;
  const std::size_t top = dc.top_degree();
  std::vector<ZMatrix> d;
  for (std::size_t k = 0; k <= top; ++k) d.push_back(dc.total_differential(k));
  std::vector<std::size_t> r(top + 1);
  for (std::size_t k = 0; k <= top; ++k) r[k] = rank_over(d[k], c);
  for (std::size_t k = 0; k <= top; ++k) {
    std::size_t in = k > 0 ? r[k - 1] : 0;
    h.betti.push_back(dc.total_dim(k) - r[k] - in);
    std::vector<Integer> tors;
    if (!c && k > 0 && d[k - 1].rows() && d[k - 1].cols())
      for (const auto& x : snf_diagonal(d[k - 1]))
        if (x > 1) tors.push_back(x);
    h.torsion.push_back(std::move(tors));
  }
  return h;
}

namespace {

// ψ^q : C^q(W/Γ) → T^q, the column-0 restriction to every W_F.
RatMatrix psi(const DoubleComplex& dc, const std::vector<ChainMap>& maps, std::size_t q, std::size_t cols,
              const Field& f) {
  RatMatrix m(dc.total_dim(q), cols);
  std::size_t row = 0;
  for (std::size_t s = 0; s < dc.columns[0].size(); ++s) {
    const std::size_t cnt = dc.columns[0][s].complex->count(q);
    if (q < maps[s].matrices.size()) {
      const ZMatrix& z = maps[s].matrices[q];  // rows: W simplices, cols: W_F simplices
      for (std::size_t i = 0; i < z.rows(); ++i)
        for (std::size_t j = 0; j < z.cols(); ++j)
          if (z(i, j) != 0) m(row + j, i) = f.reduce(Rational(z(i, j)));
    }
    row += cnt;
  }
  return m;
}

std::vector<ChainMap> face_maps(const DoubleComplex& dc, const QuotientComplex& w) {
  std::vector<ChainMap> maps;
  for (const auto& s : dc.columns[0]) {
    ChainMap m = induced_map(*s.complex, w, IntMat::identity(w.cells().n()));
    if (!is_chain_map(m, *s.complex, w)) throw std::logic_error("face inclusion is not a chain map");
    maps.push_back(std::move(m));
  }
  return maps;
}

RatMatrix coboundary(const QuotientComplex& c, std::size_t q, const Field& f) {
  if (q + 1 > c.dimension()) return RatMatrix(0, c.count(q));
  return reduced_transpose(c.boundary(q + 1), f);
}

}  // namespace

RestrictionReport restriction(const DoubleComplex& dc, const QuotientComplex& w, const Field& field) {
  RestrictionReport rep;
  rep.group = dc.group;
  rep.field = field;
  Total t = total_over(dc, field);
  auto maps = face_maps(dc, w);
  HomologyResult hw = homology(w, field);
  HomologyResult ht = total_cohomology(dc, field);
  for (std::size_t q = 0; q <= w.dimension(); ++q) {
    RatMatrix p = psi(dc, maps, q, w.count(q), field);
    // ψ commutes with the differentials.
    if (q + 1 <= w.dimension() && q < t.d.size()) {
      RatMatrix lhs = mul(t.d[q], p, field);
      RatMatrix rhs = mul(psi(dc, maps, q + 1, w.count(q + 1), field), coboundary(w, q, field), field);
      if (!(lhs == rhs)) throw std::logic_error("restriction is not a cochain map");
    }
    RatMatrix cocycles = kernel_basis(coboundary(w, q, field), w.count(q), field);
    RatMatrix bounds = q > 0 ? t.d[q - 1] : empty_cols(t.dims[q]);
    RestrictionDegree d;
    d.q = q;
    d.dim_w = hw.betti[q];
    d.dim_total = q < ht.betti.size() ? ht.betti[q] : 0;
    d.rank = induced_rank(p, cocycles, bounds, field);
    d.interior = d.dim_w - d.rank;
    rep.degrees.push_back(d);
  }
  return rep;
}

RestrictionReport restriction(const GroupSpec& group, const Field& field) {
  DoubleComplex dc = build_double_complex(group);
  QuotientComplex w = barycentric_quotient(enumerate_W(group));
  return restriction(dc, w, field);
}

std::vector<BoundaryHomologyDegree> boundary_homology(const DoubleComplex& dc, const QuotientComplex& w,
                                                      const Field& field) {
  Total t = total_over(dc, field);
  auto maps = face_maps(dc, w);
  HomologyResult hw = homology(w, field);
  HomologyResult ht = total_cohomology(dc, field);  // same dimensions as the dual
  std::vector<BoundaryHomologyDegree> out;
  for (std::size_t q = 0; q <= w.dimension(); ++q) {
    // Dual total complex: ∂ = Dᵀ; inclusion = ψᵀ.
    RatMatrix inc = psi(dc, maps, q, w.count(q), field).transpose();
    RatMatrix cycles = q > 0 ? kernel_basis(t.d[q - 1].transpose(), t.dims[q], field)
                             : RatMatrix::identity(t.dims[q]);
    RatMatrix bounds = q + 1 <= w.dimension() ? reduce(w.boundary(q + 1), field) : empty_cols(w.count(q));
    BoundaryHomologyDegree d;
    d.q = q;
    d.dim_boundary = q < ht.betti.size() ? ht.betti[q] : 0;
    d.dim_w = hw.betti[q];
    d.image_rank = induced_rank(inc, cycles, bounds, field);
    out.push_back(d);
  }
  return out;
}

FaceMapReport face_map(const RationalFlag& f, const QuotientComplex& w, const Field& field) {
  FaceMapReport rep;
  rep.flag = flag_canonical(f);
  QuotientComplex wf = barycentric_quotient(subcomplex_WF(w.cells().group, rep.flag));
  rep.chain_map = induced_map(wf, w, IntMat::identity(w.cells().n()));
  if (!is_chain_map(rep.chain_map, wf, w)) throw std::logic_error("face inclusion is not a chain map");
  for (std::size_t q = 0; q <= wf.dimension(); ++q) {
    rep.homology_rank.push_back(induced_rank_homology(rep.chain_map, wf, w, q, field));
    RatMatrix m = reduce(rep.chain_map.matrices[q], field).transpose();  // C^q(W) → C^q(W_F)
    RatMatrix cocycles = kernel_basis(coboundary(w, q, field), w.count(q), field);
    RatMatrix bounds = q > 0 ? reduced_transpose(wf.boundary(q), field) : empty_cols(wf.count(q));
    rep.cohomology_rank.push_back(induced_rank(m, cocycles, bounds, field));
  }
  return rep;
}

}  // namespace wellround
