#pragma once

#include <vector>

#include "wellround/matrix.hpp"

namespace wellround {

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  std::vector<Rational> point;  // set when Optimal
  Rational objective;
};

// maximize c·x subject to eq·x = eq_rhs and ge·x >= ge_rhs, x free.
struct LinearProgram {
  std::vector<Rational> objective;
  std::vector<std::vector<Rational>> eq;
  std::vector<Rational> eq_rhs;
  std::vector<std::vector<Rational>> ge;
  std::vector<Rational> ge_rhs;

  explicit LinearProgram(std::size_t variables = 0) : objective(variables) {}
  std::size_t variables() const { return objective.size(); }
  void add_eq(std::vector<Rational> row, const Rational& rhs);
  void add_ge(std::vector<Rational> row, const Rational& rhs);
  void add_le(std::vector<Rational> row, const Rational& rhs);
};

// Dense two-phase simplex with Bland's rule; exact.
LpResult solve_lp(const LinearProgram& lp);

}  // namespace wellround
