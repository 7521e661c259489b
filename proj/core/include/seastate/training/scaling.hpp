#pragma once

#include <array>

#include "seastate/seaway/sea_state.hpp"

namespace seastate::training {

/// Divisors mapping (Hs, Tz, beta) into roughly [0, 1].
inline constexpr std::array<double, 3> kTargetScale{15.0, 15.0, 360.0};

std::array<double, 3> scale_targets(const seaway::SeaState& state);
seaway::SeaState inverse_scale(const std::array<double, 3>& scaled);

}  // namespace seastate::training
