#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "wellround/group.hpp"

namespace wellround {

struct FlagOrbitSet {
  std::size_t n = 0;
  GroupSpec group;
  std::vector<std::size_t> type;
  std::vector<RationalFlag> reps;
  std::size_t count() const { return reps.size(); }
};

RationalFlag standard_flag(std::size_t n, const std::vector<std::size_t>& dims);

// Γ-orbit representatives of flags with the given member dimensions. Level-N
// groups are handled through the finite model SL_n(Z/N)/P̄ where P̄ is the
// reduction of the integral parabolic P(Z).
FlagOrbitSet flag_orbits(const GroupSpec& group, const std::vector<std::size_t>& type);

// Some γ ∈ Γ with γ·from = to, or nullopt when the flags are Γ-inequivalent.
std::optional<IntMat> flag_carry(const RationalFlag& from, const RationalFlag& to,
                                 const GroupSpec& group);

// Index of the representative equivalent to f together with γ: γ·f = reps[index].
std::pair<std::size_t, IntMat> locate_flag(const RationalFlag& f, const FlagOrbitSet& orbits);

// One-member deletions with signs (-1)^position; needs at least two members.
std::vector<std::pair<RationalFlag, int>> subflags_with_signs(const RationalFlag& f);

// All strictly increasing dimension vectors of the given length in 1..n-1.
std::vector<std::vector<std::size_t>> flag_types(std::size_t n, std::size_t members);

// Lift a matrix over Z/N with determinant 1 to SL_n(Z).
IntMat lift_sl(const IntMat& residues, std::int64_t modulus);

// The ± normalized Plücker data of the first dims[j] columns of g mod N.
std::vector<std::int64_t> coset_key(const IntMat& g, const std::vector<std::size_t>& dims,
                                    std::int64_t modulus);

}  // namespace wellround
