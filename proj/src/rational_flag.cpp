#include "wellround/rational_flag.hpp"

#include <algorithm>

#include "wellround/linalg.hpp"

namespace wellround {

IntMat saturated_basis(const IntMat& m) { return to_int(saturate(convert<Integer>(m))); }

namespace {

IntMat equations_for(const IntMat& basis) {
  ZMatrix y = integer_kernel(convert<Integer>(basis).transpose());
  return to_int(y.transpose());
}

}  // namespace

RationalFlag::RationalFlag(std::size_t n, const std::vector<IntMat>& members) : n_(n) {
  for (const auto& m : members) {
    if (m.rows() != n) throw DimensionMismatch("flag member has wrong ambient dimension");
    IntMat b = saturated_basis(m);
    if (b.cols() == 0 || b.cols() >= n) throw InvalidArgument("flag members must be proper and nonzero");
    members_.push_back(std::move(b));
  }
  std::sort(members_.begin(), members_.end(),
            [](const IntMat& a, const IntMat& b) { return a.cols() < b.cols(); });
  for (const auto& b : members_) equations_.push_back(equations_for(b));
  for (std::size_t j = 0; j + 1 < members_.size(); ++j) {
    if (members_[j].cols() == members_[j + 1].cols())
      throw InvalidArgument("flag member dimensions must strictly increase");
    for (std::size_t c = 0; c < members_[j].cols(); ++c)
      if (!contains(j + 1, members_[j].col(c))) throw InvalidArgument("flag members are not nested");
  }
}

RationalFlag RationalFlag::standard(std::size_t n, const std::vector<std::size_t>& dims) {
  return from_basis(IntMat::identity(n), dims);
}

RationalFlag RationalFlag::from_basis(const IntMat& g, const std::vector<std::size_t>& dims) {
  const std::size_t n = g.rows();
  for (std::size_t j = 0; j < dims.size(); ++j)
    if (dims[j] == 0 || dims[j] >= n || (j && dims[j] <= dims[j - 1]))
      throw InvalidArgument("flag dimensions must be strictly increasing in 1..n-1");
  std::vector<IntMat> members;
  for (auto d : dims) members.push_back(g.block(0, 0, n, d));
  return RationalFlag(n, members);
}

std::vector<std::size_t> RationalFlag::dims() const {
  std::vector<std::size_t> d;
  for (const auto& m : members_) d.push_back(m.cols());
  return d;
}

bool RationalFlag::contains(std::size_t j, const IntVec& v) const {
  const IntMat& e = equations_[j];
  for (std::size_t r = 0; r < e.rows(); ++r) {
    std::int64_t s = 0;
    for (std::size_t c = 0; c < n_; ++c) s += e(r, c) * v[c];
    if (s != 0) return false;
  }
  return true;
}

RationalFlag RationalFlag::transformed(const IntMat& u) const {
  std::vector<IntMat> ms;
  for (const auto& m : members_) ms.push_back(u * m);
  return RationalFlag(n_, ms);
}

RationalFlag RationalFlag::without(std::size_t j) const {
  std::vector<IntMat> ms;
  for (std::size_t k = 0; k < members_.size(); ++k)
    if (k != j) ms.push_back(members_[k]);
  return RationalFlag(n_, ms);
}

IntMat complete_basis(const IntMat& cols) {
  const std::size_t n = cols.rows(), d = cols.cols();
  if (d == 0) return IntMat::identity(n);
  HnfResult h = hnf_with_transform(convert<Integer>(cols).transpose());
  if (h.rank != d) throw InvalidArgument("columns are not independent");
  ZMatrix w = h.transform.transpose();  // W·X = [Hᵀ; 0]
  ZMatrix u0 = convert<Integer>(unimodular_inverse(to_int(w)));
  ZMatrix ht = h.form.block(0, 0, d, d).transpose();
  Integer det = 1;
  for (std::size_t k = 0; k < d; ++k) det *= ht(k, k);
  if (abs(det) != 1) throw InvalidArgument("columns do not span a saturated sublattice");
  ZMatrix scale = ZMatrix::identity(n);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) scale(i, j) = ht(i, j);
  IntMat u = to_int(u0 * scale);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < d; ++j)
      if (u(i, j) != cols(i, j)) throw InvalidArgument("basis completion failed");
  if (determinant(u) < 0) {
    if (d == n) throw InvalidArgument("full basis has determinant -1");
    for (std::size_t i = 0; i < n; ++i) u(i, n - 1) = -u(i, n - 1);
  }
  return u;
}

IntMat RationalFlag::adapted_basis() const {
  if (members_.empty()) return IntMat::identity(n_);
  IntMat basis = members_[0];
  for (std::size_t j = 1; j < members_.size(); ++j) {
    const IntMat& big = members_[j];
    const std::size_t d1 = basis.cols(), d2 = big.cols();
    // Coordinates of the current basis inside the next member.
    RatMatrix bigq = convert<Rational>(big);
    IntMat x(d2, d1);
    for (std::size_t c = 0; c < d1; ++c) {
      std::vector<Rational> rhs;
      for (std::size_t i = 0; i < n_; ++i) rhs.emplace_back(static_cast<long>(basis(i, c)));
      auto sol = solve(bigq, rhs, Field::rationals());
      if (!sol) throw InvalidArgument("flag members are not nested");
      for (std::size_t i = 0; i < d2; ++i) {
        if ((*sol)[i].get_den() != 1) throw InvalidArgument("member is not saturated in the next");
        x(i, c) = (*sol)[i].get_num().get_si();
      }
    }
    basis = big * complete_basis(x);
  }
  IntMat g = complete_basis(basis);
  return g;
}

RationalFlag flag_canonical(const RationalFlag& f) {
  std::vector<IntMat> ms;
  for (std::size_t j = 0; j < f.length(); ++j) ms.push_back(f.member(j));
  return RationalFlag(f.n(), ms);
}

bool in_parabolic(const IntMat& g, const RationalFlag& f) {
  for (std::size_t j = 0; j < f.length(); ++j) {
    const IntMat& b = f.member(j);
    for (std::size_t c = 0; c < b.cols(); ++c)
      if (!f.contains(j, apply_matrix(g, b.col(c)))) return false;
  }
  return true;
}

std::string to_string(const RationalFlag& f) {
  std::string s = "[";
  for (std::size_t j = 0; j < f.length(); ++j) {
    if (j) s += " < ";
    s += "span{";
    for (std::size_t c = 0; c < f.member(j).cols(); ++c)
      s += (c ? "," : "") + to_string(f.member(j).col(c));
    s += "}";
  }
  return s + "]";
}

}  // namespace wellround
