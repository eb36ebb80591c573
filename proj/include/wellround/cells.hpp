#pragma once

#include <map>
#include <optional>
#include <vector>

#include "wellround/rational_flag.hpp"

namespace wellround {

// An open cell of W: the normalized forms whose minimal vectors are exactly
// `config`. The witness is one such form.
struct Cell {
  VectorConfig config;
  std::size_t dim = 0;
  GramForm witness = GramForm::identity(1);
  // Every w ∉ ±config with witness[w] <= cert_bound was checked to have value > 1.
  Rational cert_bound = 1;
};

// Coordinates on symmetric matrices: entries (i, j) with i <= j.
std::size_t sym_dim(std::size_t n);
// Row r with r·x = vᵀ X v for the symmetric X with coordinates x.
std::vector<Rational> sym_row(const IntVec& v);
RatMatrix sym_matrix(const std::vector<Rational>& x, std::size_t n);
std::vector<Rational> sym_coords(const RatMatrix& a);

std::size_t cell_dimension(const VectorConfig& s);

// LP with cutting planes over the affine space {A[v] = 1 : v ∈ S}.
Cell cell_from_config(const VectorConfig& s);

// Whether some form has minimal vectors exactly T, decided locally at a form
// whose minimal vectors contain T. Returns a direction D into that cell.
std::optional<std::vector<Rational>> star_direction(const VectorConfig& ambient,
                                                    const VectorConfig& t);
// A certified witness A + εD of the cell T in the star of `at`.
Cell cell_in_star(const Cell& at, const VectorConfig& t);

// Feasible spanning proper subsets of c.config, cached by configuration.
class StarOracle {
 public:
  bool feasible(const Cell& at, const VectorConfig& t);
  std::vector<VectorConfig> star(const Cell& at);

 private:
  std::map<VectorConfig, bool> cache_;
  std::map<VectorConfig, std::vector<VectorConfig>> stars_;
};

// Move from A (with minimal vectors ⊇ keep) along D until another vector
// becomes tight; returns the exit point.
GramForm ray_exit(const GramForm& a, const VectorConfig& keep, const std::vector<Rational>& d);
// The other endpoint of a 1-cell `edge` lying in the star of the 0-cell v.
Cell edge_endpoint(const Cell& vertex, const VectorConfig& edge);

// 0-cells in the closure of c.
std::vector<Cell> closure_vertices(const Cell& c, StarOracle& oracle);
// All cells in the closure of c other than c itself, by increasing dimension.
std::vector<Cell> cell_faces(const Cell& c);
// Cells of one dimension more having c in their closure.
std::vector<Cell> cell_cofaces(const Cell& c);

bool respects_flag(const VectorConfig& s, const RationalFlag& f);
inline bool respects_flag(const Cell& c, const RationalFlag& f) { return respects_flag(c.config, f); }
// Every flag whose members are spans of subsets of the configuration.
std::vector<RationalFlag> flags_respected_by(const Cell& c);

// The A_n root configuration {e_i} ∪ {e_i - e_j} as a 0-cell, moved by u.
Cell root_vertex(std::size_t n, const IntMat& u);

}  // namespace wellround
