#pragma once

#include <cstddef>
#include <vector>

#include "minsurf/holomorphic.hpp"

namespace minsurf {

/// Radical inverse of `index` in `base` (van der Corput).
double radical_inverse(std::size_t index, unsigned base);

/// `count` points of the 2-D Halton sequence (bases 2, 3) mapped onto the
/// domain rectangle, starting at sequence index `offset + 1`. Points closer
/// than `clearance` to a puncture are skipped and replaced by later ones.
std::vector<Complex> halton_points(const DomainSpec& domain, std::size_t count,
                                   std::size_t offset = 0, double clearance = -1.0);

/// Default puncture clearance: 2% of the shorter rectangle side.
double default_clearance(const DomainSpec& domain);

} // namespace minsurf
