#pragma once

#include <vector>

#include "wellround/rational_flag.hpp"

namespace wellround {

// A-orthogonal splitting of Q^n along a flag: V̌_j is the orthocomplement of
// V_{j-1} inside V_j. In the coordinates y = T·x the form is diagonal and
// block j occupies coordinates bounds[j] .. bounds[j+1]-1.
struct FlagSplitting {
  RatMatrix coords;                  // T
  RatMatrix coords_inverse;          // T⁻¹
  std::vector<Rational> weights;     // diagonal of the form in y-coordinates
  std::vector<std::size_t> bounds;   // 0 = b_0 < ... < b_l = n
  std::vector<RatMatrix> projectors; // π_j = T⁻¹ E_j T

  std::size_t blocks() const { return bounds.size() - 1; }
  // Squared length of the V̌_j component of v.
  Rational block_value(std::size_t j, const IntVec& v) const;
};

FlagSplitting flag_split(const GramForm& a, const RationalFlag& f);

// Squared block factors s_j² (the a_j² of the geodesic action), s_1² = 1.
class ScalingVector {
 public:
  explicit ScalingVector(std::vector<Rational> s_sq);
  static ScalingVector ones(std::size_t blocks);
  // From root coordinates ρ_j²: a_j² = (ρ_1²⋯ρ_{j-1}²)⁻¹.
  static ScalingVector from_rho(const std::vector<Rational>& rho_sq);

  const std::vector<Rational>& s_sq() const noexcept { return s_; }
  std::size_t size() const noexcept { return s_.size(); }
  std::vector<Rational> rho_sq() const;  // ρ_j² = s_j² / s_{j+1}²
  ScalingVector operator*(const ScalingVector& o) const;

 private:
  std::vector<Rational> s_;
};

GramForm scale_along_flag(const GramForm& a, const RationalFlag& f, const ScalingVector& s);

struct RetractionStage {
  IntMat span;                  // M^(i), saturated basis
  Rational mu_sq;               // μ_i²; 1 when no scaling happened
  std::vector<IntVec> tight;    // vectors outside M^(i) that reach value 1
};

struct RetractionTrace {
  GramForm start;               // normalized input
  std::vector<RetractionStage> stages;  // i = 1 .. n-1
  GramForm final_form;
  RationalFlag irredundant;     // flag of successive minima without repeats
  // Block factors realizing final_form from start along `irredundant`.
  ScalingVector composite() const;
};

// μ² at which scaling the A-orthocomplement of M lets a new vector reach the
// minimum. Requires minSq(A) = 1 with minimal vectors spanning M.
Rational stopping_mu(const GramForm& a, const IntMat& m, std::vector<IntVec>* tight = nullptr);

RetractionTrace retract(const GramForm& a);

// The interpolated homotopy r_t; μ_i is approximated from below by bisection so
// every entry is within `precision` of the true value. t = 0 and t = 1 are exact.
GramForm retract_path(const GramForm& a, const Rational& t, const Rational& precision);

struct OrthantBound {
  std::vector<Rational> t_sq;
  std::vector<Rational> alpha_sq;
  std::vector<Rational> beta_sq;
};

OrthantBound orthant_bound(const GramForm& a, const RationalFlag& f);

// Gram form of A restricted to the columns of m (a basis of a sublattice).
GramForm restrict_form(const GramForm& a, const IntMat& m);
// Gram form on the projection of Z^n onto the A-orthocomplement of V, in the
// coordinates of a complement basis; its minimum is the shortest projected vector.
GramForm projected_form(const GramForm& a, const IntMat& v_basis);

}  // namespace wellround
