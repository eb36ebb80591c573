#include "wellround/lp.hpp"

namespace wellround {

void LinearProgram::add_eq(std::vector<Rational> row, const Rational& rhs) {
  if (row.size() != variables()) throw DimensionMismatch("lp row length");
  eq.push_back(std::move(row));
  eq_rhs.push_back(rhs);
}

void LinearProgram::add_ge(std::vector<Rational> row, const Rational& rhs) {
  if (row.size() != variables()) throw DimensionMismatch("lp row length");
  ge.push_back(std::move(row));
  ge_rhs.push_back(rhs);
}

void LinearProgram::add_le(std::vector<Rational> row, const Rational& rhs) {
  for (auto& x : row) x = -x;
  add_ge(std::move(row), -rhs);
}

namespace {

// Tableau over y >= 0 with rows "T·y = rhs" and a reduced-cost row.
class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols)
      : m_(rows), n_(cols), t_(rows, cols + 1), cost_(cols + 1), basis_(rows) {}

  Rational& at(std::size_t i, std::size_t j) { return t_(i, j); }
  Rational& rhs(std::size_t i) { return t_(i, n_); }
  std::vector<std::size_t>& basis() { return basis_; }
  std::vector<Rational>& cost() { return cost_; }
  std::size_t rows() const { return m_; }

  void pivot(std::size_t r, std::size_t c) {
    Rational inv = 1 / t_(r, c);
    std::vector<std::size_t> nz;
    for (std::size_t j = 0; j <= n_; ++j) {
      if (t_(r, j) == 0) continue;
      t_(r, j) *= inv;
      nz.push_back(j);
    }
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r || t_(i, c) == 0) continue;
      Rational f = t_(i, c);
      for (std::size_t j : nz) t_(i, j) -= f * t_(r, j);
    }
    if (cost_[c] != 0) {
      Rational f = cost_[c];
      for (std::size_t j : nz) cost_[j] -= f * t_(r, j);
    }
    basis_[r] = c;
  }

  // Bland's rule over columns below `limit`; returns false if unbounded.
  bool optimize(std::size_t limit) {
    for (;;) {
      std::size_t enter = limit;
      for (std::size_t j = 0; j < limit; ++j)
        if (sgn(cost_[j]) > 0) {
          enter = j;
          break;
        }
      if (enter == limit) return true;
      std::size_t leave = m_;
      Rational best;
      for (std::size_t i = 0; i < m_; ++i) {
        if (sgn(t_(i, enter)) <= 0) continue;
        Rational ratio = t_(i, n_) / t_(i, enter);
        if (leave == m_ || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == m_) return false;
      pivot(leave, enter);
    }
  }

  void drop_row(std::size_t r) {
    Matrix<Rational> nt(m_ - 1, n_ + 1);
    for (std::size_t i = 0, k = 0; i < m_; ++i) {
      if (i == r) continue;
      for (std::size_t j = 0; j <= n_; ++j) nt(k, j) = t_(i, j);
      ++k;
    }
    t_ = std::move(nt);
    basis_.erase(basis_.begin() + static_cast<long>(r));
    --m_;
  }

 private:
  std::size_t m_, n_;
  Matrix<Rational> t_;
  std::vector<Rational> cost_;
  std::vector<std::size_t> basis_;
};

}  // namespace

LpResult solve_lp(const LinearProgram& lp) {
  const std::size_t nx = lp.variables();
  const std::size_t m1 = lp.eq.size(), m2 = lp.ge.size();
  const std::size_t m = m1 + m2;
  // Columns: x+ (nx), x- (nx), surplus (m2), artificial (m).
  const std::size_t real_cols = 2 * nx + m2;
  const std::size_t cols = real_cols + m;
  Tableau tab(m, cols);
  for (std::size_t i = 0; i < m; ++i) {
    const std::vector<Rational>& row = i < m1 ? lp.eq[i] : lp.ge[i - m1];
    Rational b = i < m1 ? lp.eq_rhs[i] : lp.ge_rhs[i - m1];
    int s = sgn(b) < 0 ? -1 : 1;
    for (std::size_t j = 0; j < nx; ++j) {
      if (row[j] == 0) continue;
      tab.at(i, j) = s * row[j];
      tab.at(i, nx + j) = -s * row[j];
    }
    if (i >= m1) tab.at(i, 2 * nx + (i - m1)) = -s;
    tab.at(i, real_cols + i) = 1;
    tab.rhs(i) = s * b;
    tab.basis()[i] = real_cols + i;
  }
  // Phase 1: maximize -sum(artificials).
  auto& cost = tab.cost();
  for (std::size_t j = 0; j <= cols; ++j) cost[j] = 0;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < real_cols; ++j)
      if (tab.at(i, j) != 0) cost[j] += tab.at(i, j);
  tab.optimize(cols);
  Rational infeas = 0;
  for (std::size_t i = 0; i < tab.rows(); ++i)
    if (tab.basis()[i] >= real_cols) infeas += tab.rhs(i);
  LpResult res;
  if (sgn(infeas) > 0) {
    res.status = LpStatus::Infeasible;
    return res;
  }
  for (std::size_t i = 0; i < tab.rows();) {
    if (tab.basis()[i] < real_cols) {
      ++i;
      continue;
    }
    std::size_t j = 0;
    while (j < real_cols && tab.at(i, j) == 0) ++j;
    if (j == real_cols) {
      tab.drop_row(i);
      continue;
    }
    tab.pivot(i, j);
    ++i;
  }
  // Phase 2.
  std::vector<Rational> c(cols);
  for (std::size_t j = 0; j < nx; ++j) {
    c[j] = lp.objective[j];
    c[nx + j] = -lp.objective[j];
  }
  for (std::size_t j = 0; j <= cols; ++j) cost[j] = j < cols ? c[j] : Rational(0);
  for (std::size_t i = 0; i < tab.rows(); ++i) {
    const Rational cb = c[tab.basis()[i]];
    if (cb == 0) continue;
    for (std::size_t j = 0; j <= cols; ++j)
      if (tab.at(i, j) != 0) cost[j] -= cb * tab.at(i, j);
  }
  if (!tab.optimize(real_cols)) {
    res.status = LpStatus::Unbounded;
    return res;
  }
  std::vector<Rational> y(cols);
  for (std::size_t i = 0; i < tab.rows(); ++i) y[tab.basis()[i]] = tab.rhs(i);
  res.status = LpStatus::Optimal;
  res.point.resize(nx);
  for (std::size_t j = 0; j < nx; ++j) res.point[j] = y[j] - y[nx + j];
  res.objective = 0;
  for (std::size_t j = 0; j < nx; ++j) res.objective += lp.objective[j] * res.point[j];
  return res;
}

}  // namespace wellround
