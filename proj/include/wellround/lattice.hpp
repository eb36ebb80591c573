#pragma once

#include <compare>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "wellround/exactla.hpp"

namespace wellround {

// Positive-definite rational Gram matrix; the squared length v ↦ vᵀAv.
class GramForm {
 public:
  explicit GramForm(RatMatrix a);  // throws NotPositiveDefinite / DimensionMismatch
  static GramForm identity(std::size_t n);
  static GramForm diagonal(const std::vector<Rational>& d);

  std::size_t dim() const noexcept { return a_.rows(); }
  const RatMatrix& matrix() const noexcept { return a_; }
  const Ldlt& ldl() const noexcept { return ldl_; }

  Rational eval(const IntVec& v) const;
  Rational pair(const IntVec& v, const IntVec& w) const;
  GramForm scaled(const Rational& c) const;
  // Uᵀ A U: the same point seen through the basis change U.
  GramForm transformed(const IntMat& u) const;

  bool operator==(const GramForm& o) const { return a_ == o.a_; }

 private:
  RatMatrix a_;
  Ldlt ldl_;
};

IntVec canonical_sign(IntVec v);
bool is_primitive(const IntVec& v);
bool is_zero(const IntVec& v);
IntVec apply_matrix(const IntMat& u, const IntVec& v);
std::int64_t dot(const IntVec& a, const IntVec& b);

// Primitive vectors up to sign: first nonzero entry positive, sorted, distinct.
class VectorConfig {
 public:
  VectorConfig() = default;
  explicit VectorConfig(std::vector<IntVec> vectors);

  const std::vector<IntVec>& vectors() const noexcept { return vecs_; }
  std::size_t size() const noexcept { return vecs_.size(); }
  bool empty() const noexcept { return vecs_.empty(); }
  std::size_t dim() const noexcept { return vecs_.empty() ? 0 : vecs_.front().size(); }
  const IntVec& operator[](std::size_t i) const { return vecs_[i]; }

  bool contains(const IntVec& v) const;  // up to sign
  VectorConfig transformed(const IntMat& u) const;
  std::size_t rank() const;
  // Rank of {vvᵀ} inside symmetric matrices.
  std::size_t outer_rank() const;
  VectorConfig with(const IntVec& v) const;

  auto operator<=>(const VectorConfig&) const = default;
  bool operator==(const VectorConfig&) const = default;

 private:
  std::vector<IntVec> vecs_;
};

std::string to_string(const IntVec& v);
std::string to_string(const VectorConfig& c);

struct MinimaResult {
  Rational min_sq;
  VectorConfig vectors;
};

MinimaResult minimal_vectors(const GramForm& a);
Rational arithmetic_minimum(const GramForm& a);

enum class EnumerationMode { Raw, Config };

// All ± classes with vᵀAv <= bound (Raw keeps non-primitive vectors). Sorted.
std::vector<IntVec> vectors_below(const GramForm& a, const Rational& bound,
                                  EnumerationMode mode = EnumerationMode::Config);
// Fincke–Pohst enumeration restricted to a fixed value of the last coordinate;
// the building block of the parallel kernel. Emits sign-canonical vectors only
// when last > 0, or last == 0 (then lower coordinates canonicalize).
void enumerate_slice(const GramForm& a, const Rational& bound, std::int64_t last,
                     const std::function<void(const IntVec&, const Rational&)>& emit);
// Admissible range of the last coordinate: 0 .. returned value.
std::int64_t last_coordinate_bound(const GramForm& a, const Rational& bound);

bool is_well_rounded(const GramForm& a);
GramForm normalize(const GramForm& a);

// Rank over Q of an integer vector family (columns).
std::size_t int_rank(const std::vector<IntVec>& vs);

}  // namespace wellround
