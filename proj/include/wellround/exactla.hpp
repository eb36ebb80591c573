#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wellround/matrix.hpp"

namespace wellround {

Rational parse_rational(const std::string& text);
std::string to_string(const Rational& q);

// A = L·diag(pivots)·Lᵀ with L unit lower triangular.
struct Ldlt {
  RatMatrix lower;
  std::vector<Rational> pivots;
};

// Returns nullopt when some pivot is <= 0; failed_index (0-based) reports which.
std::optional<Ldlt> try_ldlt(const RatMatrix& a, std::size_t* failed_index = nullptr);
// Throws NotPositiveDefinite (1-based index) on failure.
Ldlt ldlt(const RatMatrix& a);
bool is_positive_definite(const RatMatrix& a);
// A nonzero rational x with xᵀAx <= 0, or nullopt if A is positive definite.
std::optional<std::vector<Rational>> nonpositive_direction(const RatMatrix& a);

struct SnfResult {
  ZMatrix left;                // U
  std::vector<Integer> diag;   // min(rows, cols) entries
  ZMatrix right;               // V
};

// U·M·V = diag(d_1, ..., d_k) with d_i | d_{i+1}, d_i >= 0.
SnfResult snf(const ZMatrix& m);
// Same invariant factors without tracking transforms.
std::vector<Integer> snf_diagonal(const ZMatrix& m);

struct HnfResult {
  ZMatrix form;       // H = M·V, lower echelon; zero columns last
  ZMatrix transform;  // V unimodular
  std::size_t rank = 0;
};

// Column-style Hermite normal form: pivot rows strictly increase, pivots
// positive, entries left of a pivot reduced into [0, pivot).
HnfResult hnf_with_transform(const ZMatrix& m);
ZMatrix hnf(const ZMatrix& m);
// The nonzero columns of hnf(m): a canonical basis of the column lattice.
ZMatrix lattice_basis(const ZMatrix& m);
// Column basis of {x in Z^k : M x = 0}.
ZMatrix integer_kernel(const ZMatrix& m);
// Canonical basis of (column span over Q) ∩ Z^n.
ZMatrix saturate(const ZMatrix& m);
// Vector divided by the gcd of its entries.
std::vector<Integer> primitive_part(const std::vector<Integer>& v);

Rational determinant(const RatMatrix& a);
RatMatrix inverse(const RatMatrix& a);
std::size_t rank(const RatMatrix& a);

std::int64_t determinant(const IntMat& a);
// Inverse of a unimodular integer matrix.
IntMat unimodular_inverse(const IntMat& a);

}  // namespace wellround
