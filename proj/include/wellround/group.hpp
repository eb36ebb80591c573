#pragma once

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "wellround/rational_flag.hpp"

namespace wellround {

enum class Family { GL, SL, Gamma0, Gamma1, GammaFull };

// Γ ⊆ GL_n(Z). Families with level > 1 live inside SL_n(Z).
struct GroupSpec {
  std::size_t n = 2;
  Family family = Family::SL;
  long level = 1;

  GroupSpec() = default;
  GroupSpec(std::size_t n_, Family f, long level_ = 1);

  static GroupSpec gl(std::size_t n) { return GroupSpec(n, Family::GL); }
  static GroupSpec sl(std::size_t n) { return GroupSpec(n, Family::SL); }
  static GroupSpec gamma0(std::size_t n, long N) { return GroupSpec(n, Family::Gamma0, N); }
  static GroupSpec gamma1(std::size_t n, long N) { return GroupSpec(n, Family::Gamma1, N); }
  static GroupSpec principal(std::size_t n, long N) { return GroupSpec(n, Family::GammaFull, N); }

  bool contains(const IntMat& u) const;
  // Whether Γ is normal in the level-1 group that contains it.
  bool is_normal_in_ambient() const;
  // The level-1 group (GL or SL) containing Γ.
  GroupSpec ambient() const;
  // Integer matrices of Γ whose reductions generate the image of Γ mod N.
  std::vector<IntMat> residue_generators() const;
  std::string name() const;

  bool operator==(const GroupSpec& o) const {
    return n == o.n && family == o.family && level == o.level;
  }
};

Family parse_family(const std::string& s);
std::string family_name(Family f);

// Γ, or Γ ∩ P when a parabolic flag constraint is present.
struct ActingGroup {
  GroupSpec spec;
  std::optional<RationalFlag> parabolic;

  bool contains(const IntMat& u) const {
    return spec.contains(u) && (!parabolic || in_parabolic(u, *parabolic));
  }
};

IntMat elementary(std::size_t n, std::size_t i, std::size_t j, std::int64_t k);
// Random word in elementary matrices; lies in SL_n(Z).
IntMat random_sl(std::size_t n, std::mt19937_64& rng, int length = 6);
// Random element of Γ (random word in generators of Γ).
IntMat random_element(const GroupSpec& g, std::mt19937_64& rng, int length = 6);

}  // namespace wellround
