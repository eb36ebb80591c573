#include "wellround/parallel.hpp"

#include <omp.h>

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <optional>
#include <string>

namespace wellround {

std::size_t worker_count() {
  if (const char* env = std::getenv("WELLROUND_THREADS")) {
    try {
      long v = std::stol(env);
      if (v > 0) return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
    }
  }
  return static_cast<std::size_t>(std::max(1, omp_get_max_threads()));
}

std::vector<IntVec> vectors_below_parallel(const GramForm& a, const Rational& bound,
                                           EnumerationMode mode) {
  if (sgn(bound) <= 0) throw InvalidArgument("enumeration bound must be positive");
  const std::int64_t top = last_coordinate_bound(a, bound);
  std::vector<std::vector<IntVec>> slices(static_cast<std::size_t>(top) + 1);
  // The LDLᵀ cache of `a` is filled at construction, so sharing it is read-only.
  const int workers = static_cast<int>(worker_count());
#pragma omp parallel for schedule(dynamic, 1) num_threads(workers)
  for (std::int64_t k = 0; k <= top; ++k) {
    auto& out = slices[static_cast<std::size_t>(k)];
    enumerate_slice(a, bound, k, [&](const IntVec& v, const Rational&) {
      IntVec c = canonical_sign(v);
      if (mode == EnumerationMode::Raw || is_primitive(c)) out.push_back(std::move(c));
    });
  }
  std::vector<IntVec> all;
  for (auto& s : slices) all.insert(all.end(), s.begin(), s.end());
  std::sort(all.begin(), all.end());
  return all;
}

std::vector<RetractionTrace> retract_batch(const std::vector<GramForm>& forms) {
  std::vector<std::optional<RetractionTrace>> out(forms.size());
  std::exception_ptr failure;
  const int workers = static_cast<int>(worker_count());
#pragma omp parallel for schedule(dynamic, 1) num_threads(workers)
  for (std::size_t i = 0; i < forms.size(); ++i) {
    try {
      out[i] = retract(forms[i]);
    } catch (...) {
#pragma omp critical
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  std::vector<RetractionTrace> result;
  result.reserve(forms.size());
  for (auto& t : out) result.push_back(std::move(*t));
  return result;
}

std::vector<RetractionTrace> retract_batch_serial(const std::vector<GramForm>& forms) {
  std::vector<RetractionTrace> result;
  result.reserve(forms.size());
  for (const auto& f : forms) result.push_back(retract(f));
  return result;
}

}  // namespace wellround
