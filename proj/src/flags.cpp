#include "wellround/flags.hpp"

#include <map>
#include <numeric>

namespace wellround {

namespace {

std::int64_t mod(std::int64_t a, std::int64_t n) {
  std::int64_t r = a % n;
  return r < 0 ? r + n : r;
}

IntMat reduce_mod(const IntMat& g, std::int64_t n) {
  IntMat r = g;
  for (std::size_t i = 0; i < r.rows(); ++i)
    for (std::size_t j = 0; j < r.cols(); ++j) r(i, j) = mod(r(i, j), n);
  return r;
}

IntMat mul_mod(const IntMat& a, const IntMat& b, std::int64_t n) {
  IntMat c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      std::int64_t s = 0;
      for (std::size_t k = 0; k < a.cols(); ++k) s = mod(s + mod(a(i, k) * b(k, j), n), n);
      c(i, j) = s;
    }
  return c;
}

void combinations(std::size_t n, std::size_t d, std::size_t start, std::vector<std::size_t>& cur,
                  std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == d) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = start; i < n; ++i) {
    cur.push_back(i);
    combinations(n, d, i + 1, cur, out);
    cur.pop_back();
  }
}

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a < b)
      parent[b] = a;
    else
      parent[a] = b;
  }
};

// Block boundaries 0 = b_0 < d_1 < ... < d_{l-1} < n.
std::vector<std::size_t> block_bounds(const std::vector<std::size_t>& dims, std::size_t n) {
  std::vector<std::size_t> b{0};
  b.insert(b.end(), dims.begin(), dims.end());
  b.push_back(n);
  return b;
}

// Lift an element of the reduction of P(Z) (block upper triangular mod N with
// block determinants ±1) to P(Z) ∩ SL_n(Z).
IntMat lift_parabolic(const IntMat& h, const std::vector<std::size_t>& dims, std::int64_t n_mod) {
  const std::size_t n = h.rows();
  std::vector<std::size_t> b = block_bounds(dims, n);
  IntMat p(n, n);
  for (std::size_t blk = 0; blk + 1 < b.size(); ++blk) {
    const std::size_t s = b[blk], e = b[blk + 1];
    for (std::size_t i = s; i < e; ++i)
      for (std::size_t j = e; j < n; ++j) p(i, j) = h(i, j);
    IntMat diag = h.block(s, s, e - s, e - s);
    const std::int64_t det = mod(determinant(diag), n_mod);
    bool flip = false;
    if (det != mod(1, n_mod)) {
      if (det != mod(-1, n_mod)) throw InvalidArgument("residue matrix is not in the parabolic");
      flip = true;
      for (std::size_t i = 0; i < diag.rows(); ++i) diag(i, 0) = mod(-diag(i, 0), n_mod);
    }
    IntMat lifted = lift_sl(diag, n_mod);
    if (flip)
      for (std::size_t i = 0; i < lifted.rows(); ++i) lifted(i, 0) = -lifted(i, 0);
    for (std::size_t i = 0; i < e - s; ++i)
      for (std::size_t j = 0; j < e - s; ++j) p(s + i, s + j) = lifted(i, j);
  }
  if (determinant(p) != 1) throw InvalidArgument("parabolic lift has determinant -1");
  return p;
}

}  // namespace

RationalFlag standard_flag(std::size_t n, const std::vector<std::size_t>& dims) {
  return RationalFlag::standard(n, dims);
}

IntMat lift_sl(const IntMat& residues, std::int64_t modulus) {
  const std::size_t b = residues.rows();
  IntMat m = reduce_mod(residues, modulus);
  if (modulus == 1) return IntMat::identity(b);
  if (b == 1) {
    if (m(0, 0) != mod(1, modulus)) throw InvalidArgument("residue determinant is not 1");
    return IntMat::identity(1);
  }
  IntVec a = m.col(0);
  bool rest_zero = true;
  for (std::size_t i = 1; i < b; ++i) rest_zero = rest_zero && a[i] == 0;
  if (rest_zero) a[1] = modulus;
  std::int64_t g = 0;
  for (std::size_t i = 1; i < b; ++i) g = std::gcd(g, a[i]);
  std::int64_t k = 0;
  while (std::gcd(a[0] + k * modulus, g) != 1) {
    if (++k > 100000) throw InvalidArgument("residue column is not unimodular");
  }
  a[0] += k * modulus;
  IntMat col(b, 1);
  for (std::size_t i = 0; i < b; ++i) col(i, 0) = a[i];
  IntMat g1 = complete_basis(col);
  IntMat r = mul_mod(reduce_mod(unimodular_inverse(g1), modulus), m, modulus);
  IntMat sub = lift_sl(r.block(1, 1, b - 1, b - 1), modulus);
  IntMat l = IntMat::identity(b);
  for (std::size_t j = 1; j < b; ++j) l(0, j) = r(0, j);
  for (std::size_t i = 1; i < b; ++i)
    for (std::size_t j = 1; j < b; ++j) l(i, j) = sub(i - 1, j - 1);
  return g1 * l;
}

std::vector<std::int64_t> coset_key(const IntMat& g, const std::vector<std::size_t>& dims,
                                    std::int64_t modulus) {
  const std::size_t n = g.rows();
  std::vector<std::int64_t> key;
  for (auto d : dims) {
    std::vector<std::vector<std::size_t>> rows;
    std::vector<std::size_t> cur;
    combinations(n, d, 0, cur, rows);
    std::vector<std::int64_t> plus, minus;
    for (const auto& rs : rows) {
      IntMat sub(d, d);
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) sub(i, j) = mod(g(rs[i], j), modulus);
      std::int64_t m = mod(determinant(sub), modulus);
      plus.push_back(m);
      minus.push_back(mod(-m, modulus));
    }
    const auto& pick = minus < plus ? minus : plus;
    key.insert(key.end(), pick.begin(), pick.end());
    key.push_back(-1);
  }
  return key;
}

FlagOrbitSet flag_orbits(const GroupSpec& group, const std::vector<std::size_t>& type) {
  const std::size_t n = group.n;
  FlagOrbitSet out{n, group, type, {}};
  RationalFlag standard = standard_flag(n, type);
  if (group.level == 1) {
    out.reps.push_back(standard);
    return out;
  }
  const std::int64_t N = group.level;
  std::vector<IntMat> cosets;
  std::map<std::vector<std::int64_t>, std::size_t> index;
  cosets.push_back(reduce_mod(IntMat::identity(n), N));
  index[coset_key(cosets[0], type, N)] = 0;
  std::vector<IntMat> moves;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) moves.push_back(reduce_mod(elementary(n, i, j, 1), N));
  for (std::size_t head = 0; head < cosets.size(); ++head)
    for (const auto& e : moves) {
      IntMat g = mul_mod(e, cosets[head], N);
      auto key = coset_key(g, type, N);
      if (index.emplace(key, cosets.size()).second) cosets.push_back(g);
    }
  UnionFind uf(cosets.size());
  std::vector<IntMat> gens;
  for (const auto& h : group.residue_generators()) gens.push_back(reduce_mod(h, N));
  for (std::size_t c = 0; c < cosets.size(); ++c)
    for (const auto& h : gens) uf.unite(c, index.at(coset_key(mul_mod(h, cosets[c], N), type, N)));
  for (std::size_t c = 0; c < cosets.size(); ++c)
    if (uf.find(c) == c) out.reps.push_back(RationalFlag::from_basis(lift_sl(cosets[c], N), type));
  return out;
}

std::optional<IntMat> flag_carry(const RationalFlag& from, const RationalFlag& to,
                                 const GroupSpec& group) {
  if (from.n() != to.n() || from.dims() != to.dims()) return std::nullopt;
  const IntMat g_from = from.adapted_basis();
  const IntMat g_to = to.adapted_basis();
  if (group.level == 1) return IntMat(g_to * unimodular_inverse(g_from));
  const std::int64_t N = group.level;
  const std::vector<std::size_t> dims = from.dims();
  const IntMat from_res = reduce_mod(g_from, N);
  const auto target = coset_key(reduce_mod(g_to, N), dims, N);
  std::vector<IntMat> gens;
  for (const auto& h : group.residue_generators()) gens.push_back(reduce_mod(h, N));
  // Orbit search in the finite model, tracking the residue of the carrying element.
  std::map<std::vector<std::int64_t>, std::size_t> seen;
  std::vector<IntMat> elems{reduce_mod(IntMat::identity(from.n()), N)};
  seen[coset_key(from_res, dims, N)] = 0;
  std::optional<IntMat> found;
  if (seen.count(target)) found = elems[0];
  for (std::size_t head = 0; head < elems.size() && !found; ++head)
    for (const auto& h : gens) {
      IntMat e = mul_mod(h, elems[head], N);
      auto key = coset_key(mul_mod(e, from_res, N), dims, N);
      if (!seen.emplace(key, elems.size()).second) continue;
      elems.push_back(e);
      if (key == target) {
        found = e;
        break;
      }
    }
  if (!found) return std::nullopt;
  IntMat h = mul_mod(mul_mod(reduce_mod(unimodular_inverse(g_to), N), *found, N), from_res, N);
  IntMat p = lift_parabolic(h, dims, N);
  IntMat gamma = g_to * p * unimodular_inverse(g_from);
  if (!group.contains(gamma) || !(from.transformed(gamma) == to))
    throw InvalidArgument("flag carrying element failed verification");
  return gamma;
}

std::pair<std::size_t, IntMat> locate_flag(const RationalFlag& f, const FlagOrbitSet& orbits) {
  for (std::size_t i = 0; i < orbits.reps.size(); ++i)
    if (auto g = flag_carry(f, orbits.reps[i], orbits.group)) return {i, *g};
  throw InvalidArgument("flag is not equivalent to any representative: " + to_string(f));
}

std::vector<std::pair<RationalFlag, int>> subflags_with_signs(const RationalFlag& f) {
  if (f.length() < 2)
    throw NotApplicable("one-member deletions need a flag with at least two members");
  std::vector<std::pair<RationalFlag, int>> out;
  for (std::size_t i = 0; i < f.length(); ++i) out.emplace_back(f.without(i), i % 2 == 0 ? 1 : -1);
  return out;
}

std::vector<std::vector<std::size_t>> flag_types(std::size_t n, std::size_t members) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::vector<std::size_t>> combos;
  std::vector<std::size_t> cur;
  if (n < 2) return out;
  combinations(n - 1, members, 0, cur, combos);
  for (auto& c : combos) {
    for (auto& x : c) x += 1;
    out.push_back(c);
  }
  return out;
}

}  // namespace wellround
