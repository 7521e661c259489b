#pragma once

#include <cstddef>
#include <vector>

#include "seastate/random.hpp"
#include "seastate/seaway/sea_state.hpp"

namespace seastate::seaway {

/// Sampling box of the sea-state design.
struct SeaStateRanges {
  double hs_min = 0.5, hs_max = 10.5;
  double tz_min = 3.5, tz_max = 9.6;
  double beta_min = 0.0, beta_max = 360.0;  // half-open at beta_max
};

/// Latin hypercube design: every axis is cut into n equal strata, each
/// stratum holds exactly one point (uniform inside it), and strata are
/// paired across axes by independent random permutations.
std::vector<SeaState> lhs_sample(std::size_t n, Rng& rng, const SeaStateRanges& ranges = {});

}  // namespace seastate::seaway
