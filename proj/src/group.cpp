#include "wellround/group.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

namespace wellround {

namespace {

std::int64_t mod(std::int64_t a, std::int64_t n) {
  std::int64_t r = a % n;
  return r < 0 ? r + n : r;
}

// Extended gcd: returns g and sets x, y with a·x + b·y = g.
std::int64_t ext_gcd(std::int64_t a, std::int64_t b, std::int64_t& x, std::int64_t& y) {
  if (b == 0) {
    x = a >= 0 ? 1 : -1;
    y = 0;
    return a >= 0 ? a : -a;
  }
  std::int64_t x1, y1;
  std::int64_t g = ext_gcd(b, a % b, x1, y1);
  x = y1;
  y = x1 - (a / b) * y1;
  return g;
}

}  // namespace

GroupSpec::GroupSpec(std::size_t n_, Family f, long level_) : n(n_), family(f), level(level_) {
  if (n < 1) throw InvalidArgument("group dimension must be positive");
  if (level < 1) throw InvalidArgument("level must be >= 1");
  if ((f == Family::GL || f == Family::SL) && level != 1)
    throw InvalidArgument("GL and SL have level 1");
}

bool GroupSpec::contains(const IntMat& u) const {
  if (u.rows() != n || u.cols() != n) return false;
  const std::int64_t d = determinant(u);
  if (family == Family::GL) return d == 1 || d == -1;
  if (d != 1) return false;
  const std::int64_t N = level;
  switch (family) {
    case Family::SL:
      return true;
    case Family::Gamma0:
      for (std::size_t j = 0; j + 1 < n; ++j)
        if (mod(u(n - 1, j), N) != 0) return false;
      return true;
    case Family::Gamma1:
      for (std::size_t j = 0; j + 1 < n; ++j)
        if (mod(u(n - 1, j), N) != 0) return false;
      return mod(u(n - 1, n - 1) - 1, N) == 0;
    case Family::GammaFull:
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (mod(u(i, j) - (i == j ? 1 : 0), N) != 0) return false;
      return true;
    default:
      return false;
  }
}

bool GroupSpec::is_normal_in_ambient() const {
  return family == Family::GL || family == Family::SL || family == Family::GammaFull || level == 1;
}

GroupSpec GroupSpec::ambient() const {
  return family == Family::GL ? GroupSpec::gl(n) : GroupSpec::sl(n);
}

IntMat elementary(std::size_t n, std::size_t i, std::size_t j, std::int64_t k) {
  IntMat e = IntMat::identity(n);
  e(i, j) += k;
  return e;
}

std::vector<IntMat> GroupSpec::residue_generators() const {
  std::vector<IntMat> gens;
  if (level == 1 && (family == Family::GL || family == Family::SL)) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) gens.push_back(elementary(n, i, j, 1));
    if (family == Family::GL) {
      IntMat r = IntMat::identity(n);
      r(0, 0) = -1;
      gens.push_back(r);
    }
    return gens;
  }
  const std::int64_t N = level;
  switch (family) {
    case Family::Gamma0:
    case Family::Gamma1:
      for (std::size_t i = 0; i + 1 < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (i != j) gens.push_back(elementary(n, i, j, 1));
      for (std::size_t j = 0; j + 1 < n; ++j) gens.push_back(elementary(n, n - 1, j, N));
      if (family == Family::Gamma0) {
        // Lifts of diag(u, 1, ..., 1, u^{-1}) for units u mod N.
        for (std::int64_t u = 2; u < N; ++u) {
          if (std::gcd(u, N) != 1) continue;
          std::int64_t x, y;
          ext_gcd(u, N, x, y);  // u·x + N·y = 1
          IntMat m = IntMat::identity(n);
          if (n == 1) continue;
          m(0, 0) = u;
          m(0, n - 1) = -y;
          m(n - 1, 0) = N;
          m(n - 1, n - 1) = x;
          gens.push_back(m);
        }
      }
      break;
    case Family::GammaFull:
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (i != j) gens.push_back(elementary(n, i, j, N));
      break;
    default:
      break;
  }
  return gens;
}

std::string family_name(Family f) {
  switch (f) {
    case Family::GL: return "GL";
    case Family::SL: return "SL";
    case Family::Gamma0: return "gamma0";
    case Family::Gamma1: return "gamma1";
    case Family::GammaFull: return "gamma";
  }
  return "?";
}

Family parse_family(const std::string& s) {
  std::string t = s;
  std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return std::tolower(c); });
  if (t == "gl") return Family::GL;
  if (t == "sl") return Family::SL;
  if (t == "gamma0") return Family::Gamma0;
  if (t == "gamma1") return Family::Gamma1;
  if (t == "gamma" || t == "gammafull" || t == "principal") return Family::GammaFull;
  throw InvalidArgument("unknown group family '" + s + "'");
}

std::string GroupSpec::name() const {
  std::string s = family_name(family) + "_" + std::to_string(n);
  if (level > 1) s += "(" + std::to_string(level) + ")";
  return s;
}

IntMat random_sl(std::size_t n, std::mt19937_64& rng, int length) {
  IntMat g = IntMat::identity(n);
  if (n < 2) return g;
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::uniform_int_distribution<int> sign(0, 1);
  for (int s = 0; s < length; ++s) {
    std::size_t i = pick(rng), j = pick(rng);
    if (i == j) continue;
    g = g * elementary(n, i, j, sign(rng) ? 1 : -1);
  }
  return g;
}

IntMat random_element(const GroupSpec& g, std::mt19937_64& rng, int length) {
  std::vector<IntMat> gens = g.residue_generators();
  if (g.level > 1 && g.family != Family::GammaFull) {
    // Include the congruence kernel so words are not confined to a small subgroup.
    for (std::size_t i = 0; i < g.n; ++i)
      for (std::size_t j = 0; j < g.n; ++j)
        if (i != j) gens.push_back(elementary(g.n, i, j, g.level));
  }
  IntMat x = IntMat::identity(g.n);
  if (gens.empty()) return x;
  std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
  std::uniform_int_distribution<int> inv(0, 1);
  for (int s = 0; s < length; ++s) {
    const IntMat& h = gens[pick(rng)];
    x = x * (inv(rng) ? h : unimodular_inverse(h));
  }
  return x;
}

}  // namespace wellround
