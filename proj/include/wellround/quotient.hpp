#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "wellround/linalg.hpp"
#include "wellround/orbit_complex.hpp"

namespace wellround {

// An orbit of chains σ_0 < σ_1 < ... < σ_k of cells (σ_i a face of σ_{i+1}),
// i.e. of simplices of the barycentric subdivision. The chain is stored as
// configurations S_0 ⊋ S_1 ⊋ ... with S_0 the representative of orbit `root`,
// canonicalized over the stabilizer of S_0.
struct Simplex {
  std::size_t root = 0;
  std::vector<VectorConfig> chain;
  std::size_t dim() const { return chain.size() - 1; }
};

class QuotientComplex {
 public:
  explicit QuotientComplex(std::shared_ptr<const OrbitComplex> cells);

  const OrbitComplex& cells() const { return *cells_; }
  std::shared_ptr<const OrbitComplex> cells_ptr() const { return cells_; }
  std::size_t dimension() const { return simplices_.empty() ? 0 : simplices_.size() - 1; }
  std::size_t count(std::size_t k) const { return k < simplices_.size() ? simplices_[k].size() : 0; }
  const std::vector<Simplex>& simplices(std::size_t k) const { return simplices_.at(k); }
  // ∂_k : C_k → C_{k-1}; rows index (k-1)-simplices. ∂_0 has zero rows.
  // Built densely on first use.
  const ZMatrix& boundary(std::size_t k) const;
  // Column j of ∂_k as (row, coefficient) pairs with nonzero coefficients.
  const std::vector<std::pair<std::size_t, long>>& boundary_column(std::size_t k, std::size_t j) const;
  // ∂_{k-1}∂_k = 0 for all k, checked on the sparse columns.
  bool boundary_squares_to_zero() const;
  // Index of the orbit of an arbitrary chain of cells of this complex.
  std::size_t locate(const std::vector<VectorConfig>& chain) const;
  long euler_characteristic() const;

 private:
  // The star of a root sorted in configuration order, with the permutation
  // each stabilizer element induces on it.
  struct StarTable {
    std::vector<VectorConfig> star;
    std::map<VectorConfig, std::uint32_t> index;
    std::vector<std::vector<std::uint32_t>> perm;
  };
  using IndexChain = std::vector<std::uint32_t>;

  IndexChain canonical(std::size_t root, const IndexChain& chain) const;
  std::vector<VectorConfig> canonical(std::size_t root, const std::vector<VectorConfig>& chain) const;

  std::shared_ptr<const OrbitComplex> cells_;
  std::vector<StarTable> tables_;
  std::vector<std::vector<Simplex>> simplices_;
  std::vector<std::map<std::vector<VectorConfig>, std::size_t>> index_;
  using SparseColumn = std::vector<std::pair<std::size_t, long>>;
  std::vector<std::vector<SparseColumn>> sparse_;
  mutable std::vector<std::shared_ptr<const ZMatrix>> dense_;
  std::shared_ptr<std::mutex> dense_mutex_ = std::make_shared<std::mutex>();
  ZMatrix empty_;
};

QuotientComplex barycentric_quotient(const OrbitComplex& c);

// Coefficients: nullopt means Z.
using Coefficients = std::optional<Field>;

struct HomologyResult {
  Coefficients coefficients;
  std::vector<std::size_t> betti;             // free rank / dimension in each degree
  std::vector<std::vector<Integer>> torsion;  // invariant factors > 1 (Z only)
};

// Ranks and invariant factors of a chain complex given by its differentials
// d_k : C_k → C_{k-1} (d_0 with zero rows).
HomologyResult chain_homology(const std::vector<ZMatrix>& d, const Coefficients& c);
HomologyResult homology(const QuotientComplex& q, const Coefficients& c);
HomologyResult cohomology(const QuotientComplex& q, const Coefficients& c);

std::size_t rank_over(const ZMatrix& m, const Coefficients& c);

// Degreewise matrices of a chain map.
struct ChainMap {
  std::vector<ZMatrix> matrices;  // matrices[k] : C_k(source) → C_k(target)
};

// Inclusion of `sub` (cells of a subcomplex, e.g. W_F) into `super`, with cells
// moved by `twist` first. Simplices are identified up to the super group action.
ChainMap induced_map(const QuotientComplex& sub, const QuotientComplex& super,
                     const IntMat& twist);
bool is_chain_map(const ChainMap& f, const QuotientComplex& sub, const QuotientComplex& super);

// Rank of the map induced on homology in degree k (over a field).
std::size_t induced_rank_homology(const ChainMap& f, const QuotientComplex& sub,
                                  const QuotientComplex& super, std::size_t k, const Field& field);

}  // namespace wellround
