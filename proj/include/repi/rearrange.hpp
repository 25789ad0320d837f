#pragma once

#include <string>

#include "repi/grid.hpp"
#include "repi/report.hpp"

namespace repi {

struct RearrangedDensity {
    GridDensity density; // symmetric about 0, non-increasing in |x|
    std::string source_ref;
};

/// Symmetric decreasing rearrangement of the cell values: the multiset of
/// samples is kept exactly (so every cell-measure Renyi integral is
/// conserved bit-for-bit) and laid out symmetrically about 0, largest at the
/// center, alternating right/left. Even-length grids center the two largest
/// cells around the midpoint. Inputs whose boundary cells carry mass should
/// be passed through zero_pad_edges first so the trapezoid rule agrees with
/// the cell measure.
RearrangedDensity rearrange(const GridDensity& g);

/// Wang-Madiman monotonicity: N_r(f * g) >= N_r(f^* * g^*). The margin is
/// relative to the left side.
VerificationReport rearrangement_monotonicity_check(const GridDensity& f, const GridDensity& g,
                                                    double r);

} // namespace repi
