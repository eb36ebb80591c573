#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wellround/matrix.hpp"

namespace wellround {

// Coefficient field: Q (characteristic 0) or F_p. Elements of F_p are kept
// as Rationals holding the canonical residue in [0, p).
class Field {
 public:
  static Field rationals() { return Field(0); }
  static Field prime(long p);

  long characteristic() const noexcept { return p_; }
  bool is_rational() const noexcept { return p_ == 0; }
  std::string name() const;

  Rational reduce(const Rational& x) const;
  Rational inv(const Rational& x) const;
  Rational add(const Rational& a, const Rational& b) const { return reduce(a + b); }
  Rational mul(const Rational& a, const Rational& b) const { return reduce(a * b); }

  bool operator==(const Field& o) const { return p_ == o.p_; }

 private:
  explicit Field(long p) : p_(p) {}
  long p_;
};

RatMatrix reduce(const ZMatrix& m, const Field& f);
RatMatrix reduce(const RatMatrix& m, const Field& f);

struct Echelon {
  RatMatrix form;                  // reduced row echelon form
  std::vector<std::size_t> pivots; // pivot column of each nonzero row
};

Echelon rref(RatMatrix m, const Field& f);
std::size_t rank(const RatMatrix& m, const Field& f);
// Columns form a basis of {x : M x = 0}.
RatMatrix kernel(const RatMatrix& m, const Field& f);
// Linearly independent subset of the columns spanning the column space.
RatMatrix column_basis(const RatMatrix& m, const Field& f);
// Solve M x = b; nullopt if inconsistent.
std::optional<std::vector<Rational>> solve(const RatMatrix& m, const std::vector<Rational>& b,
                                           const Field& f);

RatMatrix hconcat(const RatMatrix& a, const RatMatrix& b);
RatMatrix vconcat(const RatMatrix& a, const RatMatrix& b);
RatMatrix multiply(const RatMatrix& a, const RatMatrix& b, const Field& f);

}  // namespace wellround
