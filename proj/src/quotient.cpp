#include "wellround/quotient.hpp"

#include <algorithm>
#include <set>

#include "wellround/exactla.hpp"
#include "wellround/parallel.hpp"

namespace wellround {

namespace {

bool proper_subset(const VectorConfig& a, const VectorConfig& b) {
  return a.size() < b.size() &&
         std::includes(b.vectors().begin(), b.vectors().end(), a.vectors().begin(), a.vectors().end());
}

}  // namespace

QuotientComplex::IndexChain QuotientComplex::canonical(std::size_t root, const IndexChain& chain) const {
  IndexChain best = chain;
  for (const auto& p : tables_[root].perm) {
    // Lexicographic comparison of the moved chain against the best so far.
    int cmp = 0;
    for (std::size_t i = 0; i < chain.size() && cmp == 0; ++i) {
      std::uint32_t x = p[chain[i]];
      cmp = x < best[i] ? -1 : x > best[i] ? 1 : 0;
    }
    if (cmp < 0)
      for (std::size_t i = 0; i < chain.size(); ++i) best[i] = p[chain[i]];
  }
  return best;
}

std::vector<VectorConfig> QuotientComplex::canonical(std::size_t root,
                                                     const std::vector<VectorConfig>& chain) const {
  const StarTable& t = tables_[root];
  IndexChain ix;
  for (std::size_t i = 1; i < chain.size(); ++i) {
    auto it = t.index.find(chain[i]);
    if (it == t.index.end()) throw IncompatibleComplexes("chain leaves the star of its first cell");
    ix.push_back(it->second);
  }
  std::vector<VectorConfig> out{chain[0]};
  for (auto i : canonical(root, ix)) out.push_back(t.star[i]);
  return out;
}

QuotientComplex::QuotientComplex(std::shared_ptr<const OrbitComplex> cells) : cells_(std::move(cells)) {
  const std::size_t roots = cells_->cells.size();
  tables_.resize(roots);
  for (std::size_t r = 0; r < roots; ++r) {
    StarTable& t = tables_[r];
    t.star = cells_->cells[r].star;
    std::sort(t.star.begin(), t.star.end());
    for (std::size_t i = 0; i < t.star.size(); ++i) t.index[t.star[i]] = static_cast<std::uint32_t>(i);
    const auto& stab = cells_->cells[r].stabilizer.elements;
    t.perm.assign(stab.size(), {});
    bool closed = true;
#pragma omp parallel for num_threads(worker_count()) schedule(dynamic) reduction(&& : closed)
    for (std::size_t g = 0; g < stab.size(); ++g) {
      std::vector<std::uint32_t> p(t.star.size());
      for (std::size_t i = 0; i < t.star.size(); ++i) {
        auto it = t.index.find(t.star[i].transformed(stab[g]));
        if (it == t.index.end()) {
          closed = false;
          break;
        }
        p[i] = it->second;
      }
      t.perm[g] = std::move(p);
    }
    if (!closed) throw std::logic_error("star is not closed under the stabilizer");
  }

  // Chains grow one cell at a time from canonical representatives only:
  // every chain is a stabilizer translate of an extension of a canonical prefix.
  std::vector<std::set<std::vector<VectorConfig>>> found(1);
  std::map<std::vector<VectorConfig>, std::size_t> root_of;
  for (std::size_t r = 0; r < roots; ++r) {
    const StarTable& t = tables_[r];
    const VectorConfig& base = cells_->cells[r].cell.config;
    std::set<IndexChain> level{IndexChain{}};
    for (std::size_t k = 0; !level.empty(); ++k) {
      if (found.size() <= k) found.resize(k + 1);
      std::set<IndexChain> next;
      for (const auto& ch : level) {
        std::vector<VectorConfig> chain{base};
        for (auto i : ch) chain.push_back(t.star[i]);
        found[k].insert(chain);
        root_of[chain] = r;
        const VectorConfig& last = ch.empty() ? base : t.star[ch.back()];
        for (std::uint32_t i = 0; i < t.star.size(); ++i) {
          if (!proper_subset(t.star[i], last)) continue;
          IndexChain ext = ch;
          ext.push_back(i);
          next.insert(canonical(r, ext));
        }
      }
      level = std::move(next);
    }
  }
  simplices_.resize(found.size());
  index_.resize(found.size());
  for (std::size_t k = 0; k < found.size(); ++k)
    for (const auto& ch : found[k]) {
      index_[k][ch] = simplices_[k].size();
      simplices_[k].push_back(Simplex{root_of[ch], ch});
    }
  sparse_.resize(found.size());
  dense_.resize(found.size());
  sparse_[0].resize(count(0));
  for (std::size_t k = 1; k < found.size(); ++k) {
    sparse_[k].resize(count(k));
    for (std::size_t j = 0; j < count(k); ++j) {
      const Simplex& s = simplices_[k][j];
      std::map<std::size_t, long> col;
      for (std::size_t i = 0; i <= k; ++i) {
        std::vector<VectorConfig> face;
        for (std::size_t m = 0; m <= k; ++m)
          if (m != i) face.push_back(s.chain[m]);
        std::size_t row = i == 0 ? locate(face) : index_[k - 1].at(canonical(s.root, face));
        col[row] += i % 2 ? -1 : 1;
      }
      for (const auto& [row, x] : col)
        if (x != 0) sparse_[k][j].emplace_back(row, x);
    }
  }
}

const ZMatrix& QuotientComplex::boundary(std::size_t k) const {
  if (k >= sparse_.size()) return empty_;
  std::lock_guard<std::mutex> lock(*dense_mutex_);
  if (!dense_[k]) {
    auto d = std::make_shared<ZMatrix>(k == 0 ? 0 : count(k - 1), count(k));
    for (std::size_t j = 0; j < count(k); ++j)
      for (const auto& [row, x] : sparse_[k][j]) (*d)(row, j) = x;
    dense_[k] = std::move(d);
  }
  return *dense_[k];
}

const std::vector<std::pair<std::size_t, long>>& QuotientComplex::boundary_column(std::size_t k,
                                                                                 std::size_t j) const {
  return sparse_.at(k).at(j);
}

bool QuotientComplex::boundary_squares_to_zero() const {
  for (std::size_t k = 2; k < sparse_.size(); ++k)
    for (const auto& col : sparse_[k]) {
      std::map<std::size_t, long> acc;
      for (const auto& [mid, x] : col)
        for (const auto& [row, y] : sparse_[k - 1][mid]) acc[row] += x * y;
      for (const auto& [row, z] : acc)
        if (z != 0) return false;
    }
  return true;
}

std::size_t QuotientComplex::locate(const std::vector<VectorConfig>& chain) const {
  if (chain.empty() || chain.size() > simplices_.size())
    throw IncompatibleComplexes("chain length does not fit this complex");
  auto [root, g] = cells_->locate(chain[0]);
  std::vector<VectorConfig> moved;
  for (const auto& c : chain) moved.push_back(c.transformed(g));
  auto it = index_[chain.size() - 1].find(canonical(root, moved));
  if (it == index_[chain.size() - 1].end()) throw IncompatibleComplexes("chain is not a simplex of this complex");
  return it->second;
}

long QuotientComplex::euler_characteristic() const {
  long e = 0;
  for (std::size_t k = 0; k < simplices_.size(); ++k) e += (k % 2 ? -1 : 1) * static_cast<long>(count(k));
  return e;
}

QuotientComplex barycentric_quotient(const OrbitComplex& c) {
  return QuotientComplex(std::make_shared<const OrbitComplex>(c));
}

std::size_t rank_over(const ZMatrix& m, const Coefficients& c) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  Field f = c ? *c : Field::rationals();
  return rank(reduce(m, f), f);
}

HomologyResult chain_homology(const std::vector<ZMatrix>& d, const Coefficients& c) {
  HomologyResult h;
  h.coefficients = c;
  const std::size_t top = d.size();
  std::vector<std::size_t> r(top + 1, 0);
  for (std::size_t k = 0; k < top; ++k) r[k] = rank_over(d[k], c);
  for (std::size_t k = 0; k < top; ++k) {
    std::size_t ck = d[k].cols();
    h.betti.push_back(ck - r[k] - r[k + 1]);
    std::vector<Integer> tors;
    if (!c && k + 1 < top && d[k + 1].rows() && d[k + 1].cols())
      for (const auto& x : snf_diagonal(d[k + 1]))
        if (x > 1) tors.push_back(x);
    h.torsion.push_back(std::move(tors));
  }
  return h;
}

namespace {

std::vector<ZMatrix> differentials(const QuotientComplex& q) {
  std::vector<ZMatrix> d;
  for (std::size_t k = 0; k <= q.dimension(); ++k) d.push_back(q.boundary(k));
  return d;
}

}  // namespace

HomologyResult homology(const QuotientComplex& q, const Coefficients& c) {
  return chain_homology(differentials(q), c);
}

HomologyResult cohomology(const QuotientComplex& q, const Coefficients& c) {
  HomologyResult h = homology(q, c);
  if (c) return h;
  // Universal coefficients: the torsion of H^k is that of H_{k-1}.
  std::vector<std::vector<Integer>> shifted(h.torsion.size());
  for (std::size_t k = 1; k < h.torsion.size(); ++k) shifted[k] = h.torsion[k - 1];
  h.torsion = std::move(shifted);
  return h;
}

ChainMap induced_map(const QuotientComplex& sub, const QuotientComplex& super, const IntMat& twist) {
  ChainMap f;
  for (std::size_t k = 0; k <= sub.dimension(); ++k) {
    ZMatrix m(super.count(k), sub.count(k));
    for (std::size_t j = 0; j < sub.count(k); ++j) {
      std::vector<VectorConfig> moved;
      for (const auto& s : sub.simplices(k)[j].chain) moved.push_back(s.transformed(twist));
      m(super.locate(moved), j) += 1;
    }
    f.matrices.push_back(std::move(m));
  }
  return f;
}

bool is_chain_map(const ChainMap& f, const QuotientComplex& sub, const QuotientComplex& super) {
  for (std::size_t k = 1; k < f.matrices.size(); ++k)
    if (!(super.boundary(k) * f.matrices[k] == f.matrices[k - 1] * sub.boundary(k))) return false;
  return true;
}

std::size_t induced_rank_homology(const ChainMap& f, const QuotientComplex& sub,
                                  const QuotientComplex& super, std::size_t k, const Field& field) {
  if (k >= f.matrices.size()) return 0;
  RatMatrix cycles = sub.boundary(k).rows() ? kernel(reduce(sub.boundary(k), field), field)
                                            : RatMatrix::identity(sub.count(k));
  if (cycles.cols() == 0) return 0;
  RatMatrix image = multiply(reduce(f.matrices[k], field), cycles, field);
  RatMatrix bounds = k + 1 <= super.dimension() ? reduce(super.boundary(k + 1), field)
                                                : RatMatrix(super.count(k), 0);
  std::size_t rb = bounds.cols() ? rank(bounds, field) : 0;
  return rank(hconcat(bounds, image), field) - rb;
}

}  // namespace wellround
