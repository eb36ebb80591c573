#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "wellround/group.hpp"

namespace wellround {

// Data of a spanning configuration S used by the equivalence search:
// Q_S = Σ vvᵀ is GL_n(Z)-covariant, so values vᵀ·adj(Q_S)·w are invariants.
struct ConfigGeometry {
  VectorConfig config;
  std::int64_t det_q = 0;
  IntMat adj_q;
  std::vector<IntVec> signed_vectors;  // v_0, -v_0, v_1, -v_1, ...
  std::vector<std::int64_t> gram;      // pairings of signed_vectors
  std::vector<std::int64_t> key;       // invariant prefilter

  explicit ConfigGeometry(const VectorConfig& s);
  std::int64_t pairing(std::size_t a, std::size_t b) const {
    return gram[a * signed_vectors.size() + b];
  }
};

// Calls visit(U) for every U ∈ GL_n(Z) with U·(±S) = ±T, until visit returns true.
void for_each_config_map(const ConfigGeometry& s, const ConfigGeometry& t,
                         const std::function<bool(const IntMat&)>& visit);

std::optional<IntMat> config_equiv(const ConfigGeometry& s, const ConfigGeometry& t,
                                   const ActingGroup& group);
std::optional<IntMat> config_equiv(const VectorConfig& s, const VectorConfig& t,
                                   const GroupSpec& group,
                                   const std::optional<RationalFlag>& constraint = std::nullopt);

struct Stabilizer {
  std::vector<IntMat> elements;
  std::vector<IntMat> generators;
  std::size_t order() const { return elements.size(); }
};

Stabilizer config_stabilizer(const ConfigGeometry& s, const ActingGroup& group);
Stabilizer config_stabilizer(const VectorConfig& s, const GroupSpec& group,
                             const std::optional<RationalFlag>& constraint = std::nullopt);

}  // namespace wellround
