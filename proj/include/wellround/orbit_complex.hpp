#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "wellround/cells.hpp"
#include "wellround/equivalence.hpp"

namespace wellround {

struct Coface {
  VectorConfig config;  // the coface as a subset of the face's configuration
  std::size_t orbit;    // its orbit
  IntMat via;           // via·config = cells[orbit].cell.config
};

struct CellOrbit {
  Cell cell;
  Stabilizer stabilizer;
  // Feasible spanning proper subsets of the configuration (respecting the
  // constraint flag, when present), by increasing dimension.
  std::vector<VectorConfig> star;
  std::vector<Coface> cofaces;  // the dimension-one-higher part of the star
};

struct EnumerationOptions {
  // The seed 0-cell is the A_n root configuration moved by this matrix (and by
  // an adapted basis of the constraint flag, when present).
  std::optional<IntMat> seed;
  std::size_t max_cells = 100000;
};

// Cells of W (or of W_F) modulo Γ (or Γ ∩ P_F).
class OrbitComplex {
 public:
  GroupSpec group;
  std::optional<RationalFlag> constraint;
  std::vector<CellOrbit> cells;  // sorted by dimension, then configuration

  ActingGroup acting() const { return ActingGroup{group, constraint}; }
  std::size_t n() const { return group.n; }
  std::size_t dimension() const;
  std::vector<std::size_t> counts_by_dim() const;
  // Orbit index and γ in the acting group with γ·s = cells[index].cell.config.
  // Throws IncompatibleComplexes when s is not a cell of this complex.
  std::pair<std::size_t, IntMat> locate(const VectorConfig& s) const;

  void build_index();

 private:
  std::vector<ConfigGeometry> geometry_;
  std::map<std::vector<std::int64_t>, std::vector<std::size_t>> by_key_;
  mutable std::map<VectorConfig, std::pair<std::size_t, IntMat>> located_;
};

OrbitComplex enumerate_W(const GroupSpec& group, const EnumerationOptions& options = {});
OrbitComplex subcomplex_WF(const GroupSpec& group, const RationalFlag& f,
                           const EnumerationOptions& options = {});
// Complex on given orbit representatives (as read back from a file); stabilizers,
// stars and cofaces are recomputed.
OrbitComplex assemble_complex(const GroupSpec& group, const std::optional<RationalFlag>& constraint,
                              std::vector<Cell> reps);

struct SmallEnoughReport {
  bool small_enough = true;
  // A cell respecting two distinct Γ-equivalent flags, when one exists.
  std::optional<std::size_t> cell;
  std::optional<RationalFlag> first, second;
  std::optional<IntMat> gamma;  // γ·first = second
};

SmallEnoughReport is_small_enough(const OrbitComplex& w);

}  // namespace wellround
