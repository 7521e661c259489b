#include "seastate/training/scaling.hpp"

namespace seastate::training {

std::array<double, 3> scale_targets(const seaway::SeaState& state) {
  return {state.hs / kTargetScale[0], state.tz / kTargetScale[1], state.beta / kTargetScale[2]};
}

seaway::SeaState inverse_scale(const std::array<double, 3>& scaled) {
  return {scaled[0] * kTargetScale[0], scaled[1] * kTargetScale[1], scaled[2] * kTargetScale[2]};
}

}  // namespace seastate::training
