#include "wellround/orbit_complex.hpp"

#include <algorithm>

#include "wellround/flags.hpp"
#include "wellround/parallel.hpp"

namespace wellround {

std::size_t OrbitComplex::dimension() const {
  std::size_t d = 0;
  for (const auto& c : cells) d = std::max(d, c.cell.dim);
  return d;
}

std::vector<std::size_t> OrbitComplex::counts_by_dim() const {
  std::vector<std::size_t> out(dimension() + 1, 0);
  for (const auto& c : cells) ++out[c.cell.dim];
  return out;
}

void OrbitComplex::build_index() {
  geometry_.clear();
  by_key_.clear();
  located_.clear();
  for (std::size_t i = 0; i < cells.size(); ++i) {
    geometry_.emplace_back(cells[i].cell.config);
    by_key_[geometry_.back().key].push_back(i);
  }
}

std::pair<std::size_t, IntMat> OrbitComplex::locate(const VectorConfig& s) const {
  auto hit = located_.find(s);
  if (hit != located_.end()) return hit->second;
  if (s.dim() != n() || s.rank() != n()) throw IncompatibleComplexes("configuration is not a cell of W");
  ConfigGeometry g(s);
  auto it = by_key_.find(g.key);
  if (it != by_key_.end()) {
    ActingGroup act = acting();
    for (std::size_t i : it->second)
      if (auto u = config_equiv(g, geometry_[i], act)) {
        auto r = std::make_pair(i, *u);
        located_.emplace(s, r);
        return r;
      }
  }
  throw IncompatibleComplexes("configuration " + to_string(s) + " is not a cell of this complex");
}

namespace {

// Incremental orbit bookkeeping during enumeration.
class Builder {
 public:
  Builder(OrbitComplex& out, const EnumerationOptions& opt) : out_(out), opt_(opt) {}

  bool allowed(const VectorConfig& t) const {
    return !out_.constraint || respects_flag(t, *out_.constraint);
  }

  std::vector<VectorConfig> star(const Cell& c) {
    std::vector<VectorConfig> s;
    for (auto& t : oracle_.star(c))
      if (allowed(t)) s.push_back(std::move(t));
    return s;
  }

  // Index of the orbit of c; adds c as a new representative when needed.
  std::pair<std::size_t, bool> add(const Cell& c) {
    ConfigGeometry g(c.config);
    auto& bucket = by_key_[g.key];
    for (std::size_t i : bucket)
      if (config_equiv(g, geometry_[i], out_.acting())) return {i, false};
    if (reps_.size() >= opt_.max_cells) throw DimensionUnsupported("cell count exceeds the enumeration limit");
    bucket.push_back(reps_.size());
    geometry_.push_back(std::move(g));
    reps_.push_back(c);
    return {reps_.size() - 1, true};
  }

  void run(const Cell& seed) {
    if (!allowed(seed.config)) throw InvalidArgument("seed 0-cell does not respect the flag");
    add(seed);
    std::vector<std::size_t> vertices{0};
    for (std::size_t head = 0; head < vertices.size(); ++head) {
      Cell v = reps_[vertices[head]];
      for (const auto& e : star(v)) {
        if (cell_dimension(e) != 1) continue;
        auto [idx, fresh] = add(edge_endpoint(v, e));
        if (fresh) vertices.push_back(idx);
      }
    }
    for (std::size_t vi : vertices) {
      Cell v = reps_[vi];
      for (const auto& t : star(v)) {
        // Cheap test first: only build a witness for a new orbit.
        ConfigGeometry g(t);
        bool known = false;
        for (std::size_t i : by_key_[g.key])
          if (config_equiv(g, geometry_[i], out_.acting())) {
            known = true;
            break;
          }
        if (!known) add(cell_in_star(v, t));
      }
    }
  }

  void adopt(std::vector<Cell> reps) { reps_ = std::move(reps); }

  void finish() {
    std::vector<Cell> sorted = reps_;
    std::sort(sorted.begin(), sorted.end(), [](const Cell& a, const Cell& b) {
      return a.dim != b.dim ? a.dim < b.dim : a.config < b.config;
    });
    out_.cells.clear();
    for (auto& c : sorted) out_.cells.push_back(CellOrbit{std::move(c), {}, {}, {}});
    out_.build_index();
    ActingGroup act = out_.acting();
    const int workers = static_cast<int>(worker_count());
#pragma omp parallel for schedule(dynamic, 1) num_threads(workers)
    for (std::size_t i = 0; i < out_.cells.size(); ++i)
      out_.cells[i].stabilizer = config_stabilizer(ConfigGeometry(out_.cells[i].cell.config), act);
    for (auto& co : out_.cells) {
      co.star = star(co.cell);
      for (const auto& t : co.star) {
        if (cell_dimension(t) != co.cell.dim + 1) continue;
        auto [idx, via] = out_.locate(t);
        co.cofaces.push_back(Coface{t, idx, via});
      }
    }
  }

 private:
  OrbitComplex& out_;
  const EnumerationOptions& opt_;
  StarOracle oracle_;
  std::vector<Cell> reps_;
  std::vector<ConfigGeometry> geometry_;
  std::map<std::vector<std::int64_t>, std::vector<std::size_t>> by_key_;
};

OrbitComplex build(const GroupSpec& group, const std::optional<RationalFlag>& f,
                   const EnumerationOptions& options) {
  const std::size_t n = group.n;
  if (n < 2) throw DimensionUnsupported("n must be at least 2");
  OrbitComplex out;
  out.group = group;
  out.constraint = f;
  IntMat base = f ? f->adapted_basis() : IntMat::identity(n);
  IntMat seed = options.seed ? base * *options.seed : base;
  Builder b(out, options);
  b.run(root_vertex(n, seed));
  b.finish();
  return out;
}

}  // namespace

OrbitComplex enumerate_W(const GroupSpec& group, const EnumerationOptions& options) {
  return build(group, std::nullopt, options);
}

OrbitComplex subcomplex_WF(const GroupSpec& group, const RationalFlag& f,
                           const EnumerationOptions& options) {
  if (f.n() != group.n) throw DimensionMismatch("flag and group dimensions differ");
  if (f.empty()) throw InvalidArgument("flag has no proper members");
  return build(group, flag_canonical(f), options);
}

OrbitComplex assemble_complex(const GroupSpec& group, const std::optional<RationalFlag>& constraint,
                              std::vector<Cell> reps) {
  if (reps.empty()) throw InvalidArgument("complex has no cells");
  OrbitComplex out;
  out.group = group;
  out.constraint = constraint;
  EnumerationOptions options;
  Builder b(out, options);
  b.adopt(std::move(reps));
  b.finish();
  return out;
}

SmallEnoughReport is_small_enough(const OrbitComplex& w) {
  SmallEnoughReport rep;
  for (std::size_t i = 0; i < w.cells.size(); ++i) {
    auto flags = flags_respected_by(w.cells[i].cell);
    for (std::size_t a = 0; a < flags.size(); ++a)
      for (std::size_t b = a + 1; b < flags.size(); ++b) {
        if (flags[a].dims() != flags[b].dims()) continue;
        if (auto g = flag_carry(flags[a], flags[b], w.group)) {
          rep.small_enough = false;
          rep.cell = i;
          rep.first = flags[a];
          rep.second = flags[b];
          rep.gamma = *g;
          return rep;
        }
      }
  }
  return rep;
}

}  // namespace wellround
