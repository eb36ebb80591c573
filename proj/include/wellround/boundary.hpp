#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "wellround/flags.hpp"
#include "wellround/quotient.hpp"

namespace wellround {

struct ColumnSummand {
  RationalFlag flag;  // representative in Φ_{p+2}
  std::shared_ptr<const QuotientComplex> complex;  // W_F/(Γ∩P_F)
};

// Restriction from the summand `source` of column p to the summand `target`
// of column p+1, for one deletion of the target flag: γ·(deleted flag) = source flag.
struct HorizontalBlock {
  std::size_t p = 0, source = 0, target = 0;
  std::size_t deleted = 0;  // position of the removed member
  int sign = 1;
  IntMat gamma;
  ChainMap map;  // C_*(W_target) → C_*(W_source), cells moved by gamma
};

struct DoubleComplexOptions {
  // Replace flag representatives by random Γ-translates and seed every
  // enumeration differently; results must not change.
  std::optional<std::uint64_t> reseed;
  std::size_t max_cells = 100000;
};

class DoubleComplex {
 public:
  GroupSpec group;
  std::vector<std::vector<ColumnSummand>> columns;  // p = 0 .. n-2
  std::vector<HorizontalBlock> horizontal;

  std::size_t column_count() const { return columns.size(); }
  std::size_t max_q() const;
  std::size_t top_degree() const { return column_count() - 1 + max_q(); }
  std::size_t dim(std::size_t p, std::size_t q) const;
  std::size_t total_dim(std::size_t k) const;
  // Column p of each coordinate of the degree-k total space.
  std::vector<std::size_t> column_of(std::size_t k) const;
  // D : T^k → T^{k+1} with vertical part (−1)^p δ and Čech-signed restrictions.
  ZMatrix total_differential(std::size_t k) const;
  bool d_squared_zero() const;

 private:
  friend DoubleComplex build_double_complex(const GroupSpec&, const DoubleComplexOptions&);
  std::size_t offset(std::size_t k, std::size_t p, std::size_t s) const;
};

DoubleComplex build_double_complex(const GroupSpec& group, const DoubleComplexOptions& options = {});

struct PageDifferential {
  std::size_t p = 0, q = 0;  // source position; target (p+r, q−r+1)
  std::size_t rank = 0;
  std::optional<RatMatrix> matrix;  // in chosen E_1 bases (r = 1 only)
};

struct SpectralPage {
  std::size_t r = 1;
  std::vector<std::vector<std::size_t>> dims;  // dims[p][q]
  std::vector<PageDifferential> differentials;
};

struct SpectralSequence {
  Field field = Field::rationals();
  std::vector<SpectralPage> pages;        // r = 1, 2, ...; the last one is E_∞
  std::vector<std::size_t> abutment;      // dim H^k(total)
  bool d1_squared_zero = true;
};

SpectralPage e1_page(const DoubleComplex& dc, const Field& field);
SpectralSequence spectral_sequence(const DoubleComplex& dc, const Field& field);

// H^k of the total complex: dimensions over a field, or ranks and torsion over Z.
HomologyResult total_cohomology(const DoubleComplex& dc, const Coefficients& c);

struct RestrictionDegree {
  std::size_t q = 0;
  std::size_t dim_w = 0;      // dim H^q(W/Γ)
  std::size_t dim_total = 0;  // dim H^q(total)
  std::size_t rank = 0;       // rank ψ*
  std::size_t interior = 0;   // dim ker ψ*
};

struct RestrictionReport {
  GroupSpec group;
  Field field = Field::rationals();
  std::vector<RestrictionDegree> degrees;
};

RestrictionReport restriction(const DoubleComplex& dc, const QuotientComplex& w, const Field& field);
RestrictionReport restriction(const GroupSpec& group, const Field& field);

struct BoundaryHomologyDegree {
  std::size_t q = 0;
  std::size_t dim_boundary = 0;  // dim H_q of the dual total complex
  std::size_t dim_w = 0;         // dim H_q(W/Γ)
  std::size_t image_rank = 0;    // rank of the inclusion on H_q
};

std::vector<BoundaryHomologyDegree> boundary_homology(const DoubleComplex& dc, const QuotientComplex& w,
                                                      const Field& field);

struct FaceMapReport {
  RationalFlag flag;
  ChainMap chain_map;                    // C_*(W_F/(Γ∩P)) → C_*(W/Γ)
  std::vector<std::size_t> homology_rank;    // H_q(W_F) → H_q(W)
  std::vector<std::size_t> cohomology_rank;  // H^q(W) → H^q(W_F)
};

FaceMapReport face_map(const RationalFlag& f, const QuotientComplex& w, const Field& field);

}  // namespace wellround
