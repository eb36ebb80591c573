#include "wellround/equivalence.hpp"

#include <algorithm>
#include <set>

namespace wellround {

ConfigGeometry::ConfigGeometry(const VectorConfig& s) : config(s) {
  const std::size_t n = s.dim();
  const std::size_t k = s.size();
  if (s.rank() != n) throw NotSpanning();
  RatMatrix q(n, n);
  for (const auto& v : s.vectors())
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) q(i, j) += Rational(static_cast<long>(v[i] * v[j]));
  Rational d = determinant(q);
  det_q = d.get_num().get_si();
  adj_q = to_int(inverse(q) * d);
  for (const auto& v : s.vectors()) {
    signed_vectors.push_back(v);
    IntVec m = v;
    for (auto& x : m) x = -x;
    signed_vectors.push_back(m);
  }
  const std::size_t m = signed_vectors.size();
  gram.resize(m * m);
  std::vector<IntVec> av;
  for (const auto& v : signed_vectors) av.push_back(apply_matrix(adj_q, v));
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) gram[a * m + b] = dot(signed_vectors[a], av[b]);
  std::vector<std::int64_t> diag, off;
  for (std::size_t i = 0; i < k; ++i) {
    diag.push_back(pairing(2 * i, 2 * i));
    for (std::size_t j = i + 1; j < k; ++j) off.push_back(std::abs(pairing(2 * i, 2 * j)));
  }
  std::sort(diag.begin(), diag.end());
  std::sort(off.begin(), off.end());
  key = {static_cast<std::int64_t>(n), static_cast<std::int64_t>(k), det_q};
  key.insert(key.end(), diag.begin(), diag.end());
  key.insert(key.end(), off.begin(), off.end());
}

void for_each_config_map(const ConfigGeometry& s, const ConfigGeometry& t,
                         const std::function<bool(const IntMat&)>& visit) {
  if (s.key != t.key) return;
  const std::size_t n = s.config.dim();
  // Basis of Q^n taken from S, greedily.
  std::vector<std::size_t> basis;
  std::vector<IntVec> chosen;
  for (std::size_t i = 0; i < s.config.size() && basis.size() < n; ++i) {
    chosen.push_back(s.config[i]);
    if (int_rank(chosen) == chosen.size())
      basis.push_back(2 * i);
    else
      chosen.pop_back();
  }
  RatMatrix b(n, n);
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t r = 0; r < n; ++r) b(r, c) = static_cast<long>(s.signed_vectors[basis[c]][r]);
  const RatMatrix binv = inverse(b);
  const std::size_t mt = t.signed_vectors.size();
  std::vector<std::size_t> img(n);
  bool stop = false;

  std::function<void(std::size_t)> assign = [&](std::size_t level) {
    if (stop) return;
    if (level == n) {
      IntMat u(n, n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          Rational x = 0;
          for (std::size_t c = 0; c < n; ++c) {
            std::int64_t tv = t.signed_vectors[img[c]][i];
            if (tv != 0 && binv(c, j) != 0) x += binv(c, j) * static_cast<long>(tv);
          }
          if (x.get_den() != 1) return;
          u(i, j) = x.get_num().get_si();
        }
      for (const auto& v : s.config.vectors())
        if (!t.config.contains(apply_matrix(u, v))) return;
      std::int64_t d = determinant(u);
      if (d != 1 && d != -1) return;
      if (visit(u)) stop = true;
      return;
    }
    const std::size_t bl = basis[level];
    for (std::size_t c = 0; c < mt && !stop; ++c) {
      if (t.pairing(c, c) != s.pairing(bl, bl)) continue;
      bool ok = true;
      for (std::size_t j = 0; j < level && ok; ++j)
        if (t.pairing(c, img[j]) != s.pairing(bl, basis[j])) ok = false;
      if (!ok) continue;
      img[level] = c;
      assign(level + 1);
    }
  };
  assign(0);
}

std::optional<IntMat> config_equiv(const ConfigGeometry& s, const ConfigGeometry& t,
                                   const ActingGroup& group) {
  std::optional<IntMat> found;
  for_each_config_map(s, t, [&](const IntMat& u) {
    if (!group.contains(u)) return false;
    found = u;
    return true;
  });
  return found;
}

std::optional<IntMat> config_equiv(const VectorConfig& s, const VectorConfig& t,
                                   const GroupSpec& group,
                                   const std::optional<RationalFlag>& constraint) {
  if (s.dim() != t.dim() || s.size() != t.size()) return std::nullopt;
  return config_equiv(ConfigGeometry(s), ConfigGeometry(t), ActingGroup{group, constraint});
}

namespace {

std::set<IntMat> closure_of(const std::vector<IntMat>& gens, std::size_t n) {
  std::set<IntMat> group{IntMat::identity(n)};
  std::vector<IntMat> frontier{IntMat::identity(n)};
  while (!frontier.empty()) {
    std::vector<IntMat> next;
    for (const auto& g : frontier)
      for (const auto& h : gens) {
        IntMat p = g * h;
        if (group.insert(p).second) next.push_back(p);
      }
    frontier = std::move(next);
  }
  return group;
}

}  // namespace

Stabilizer config_stabilizer(const ConfigGeometry& s, const ActingGroup& group) {
  Stabilizer st;
  for_each_config_map(s, s, [&](const IntMat& u) {
    if (group.contains(u)) st.elements.push_back(u);
    return false;
  });
  std::sort(st.elements.begin(), st.elements.end());
  const std::size_t n = s.config.dim();
  std::set<IntMat> generated{IntMat::identity(n)};
  for (const auto& g : st.elements) {
    if (generated.count(g)) continue;
    st.generators.push_back(g);
    generated = closure_of(st.generators, n);
  }
  return st;
}

Stabilizer config_stabilizer(const VectorConfig& s, const GroupSpec& group,
                             const std::optional<RationalFlag>& constraint) {
  return config_stabilizer(ConfigGeometry(s), ActingGroup{group, constraint});
}

}  // namespace wellround
