#pragma once

#include <vector>

#include "wellround/lattice.hpp"

namespace wellround {

// Strictly nested saturated sublattices V_1 ⊊ ... ⊊ V_{l-1} ⊊ Z^n. Each member
// is stored as the column HNF basis of its saturation, so equal flags have
// identical representations. The improper member Z^n is implicit.
class RationalFlag {
 public:
  RationalFlag() = default;
  // Members given by any spanning columns; they are saturated and sorted by rank.
  RationalFlag(std::size_t n, const std::vector<IntMat>& members);

  static RationalFlag standard(std::size_t n, const std::vector<std::size_t>& dims);
  // Members spanned by the first dims[j] columns of a basis matrix g.
  static RationalFlag from_basis(const IntMat& g, const std::vector<std::size_t>& dims);

  std::size_t n() const noexcept { return n_; }
  std::size_t length() const noexcept { return members_.size(); }
  bool empty() const noexcept { return members_.empty(); }
  const IntMat& member(std::size_t j) const { return members_[j]; }
  std::size_t member_dim(std::size_t j) const { return members_[j].cols(); }
  std::vector<std::size_t> dims() const;

  bool contains(std::size_t j, const IntVec& v) const;  // v ∈ V_j ⊗ Q
  RationalFlag transformed(const IntMat& u) const;
  RationalFlag without(std::size_t j) const;
  // Unimodular g (det 1) whose first dim(V_j) columns span V_j for every j.
  IntMat adapted_basis() const;

  auto operator<=>(const RationalFlag& o) const { return members_ <=> o.members_; }
  bool operator==(const RationalFlag& o) const { return n_ == o.n_ && members_ == o.members_; }

 private:
  std::size_t n_ = 0;
  std::vector<IntMat> members_;
  std::vector<IntMat> equations_;  // rows cut out V_j: V_j = ker equations_[j]
};

// Saturated canonical basis of the column span (int64 version of exactla::saturate).
IntMat saturated_basis(const IntMat& m);
RationalFlag flag_canonical(const RationalFlag& f);
bool in_parabolic(const IntMat& g, const RationalFlag& f);
std::string to_string(const RationalFlag& f);

// Complete the columns of a saturated n×d matrix to a basis of Z^n with det 1.
IntMat complete_basis(const IntMat& cols);

}  // namespace wellround
