#pragma once

#include <cstddef>
#include <vector>

#include "wellround/lattice.hpp"
#include "wellround/retraction.hpp"

namespace wellround {

// Worker cap: WELLROUND_THREADS when set to a positive integer, else the
// OpenMP default.
std::size_t worker_count();

// Same result as vectors_below, with the slices of the last coordinate
// distributed over workers. Output is sorted, so it never depends on scheduling.
std::vector<IntVec> vectors_below_parallel(const GramForm& a, const Rational& bound,
                                           EnumerationMode mode = EnumerationMode::Config);

// Retraction of many forms; element i of the result is retract(forms[i]).
std::vector<RetractionTrace> retract_batch(const std::vector<GramForm>& forms);
std::vector<RetractionTrace> retract_batch_serial(const std::vector<GramForm>& forms);

}  // namespace wellround
