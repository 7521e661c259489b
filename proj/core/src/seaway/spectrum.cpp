#include "seastate/seaway/spectrum.hpp"

#include <cmath>
#include <string>

#include "seastate/error.hpp"

namespace seastate::seaway {

double cos_deg(double deg) {
  double r = std::fmod(deg, 360.0);
  if (r < 0.0) r += 360.0;
  if (r == 0.0) return 1.0;
  if (r == 90.0 || r == 270.0) return 0.0;
  if (r == 180.0) return -1.0;
  return std::cos(deg_to_rad(r));
}

double sin_deg(double deg) { return cos_deg(deg - 90.0); }

bool SeaState::valid() const {
  return hs > 0.0 && tz > 0.0 && beta >= 0.0 && beta < 360.0 && std::isfinite(hs) &&
         std::isfinite(tz);
}

void require_valid(const SeaState& state) {
  if (!state.valid()) {
    throw ArgumentError("invalid sea state (hs=" + std::to_string(state.hs) +
                        ", tz=" + std::to_string(state.tz) +
                        ", beta=" + std::to_string(state.beta) + ")");
  }
}

double bretschneider_density(double omega, double hs, double tz) {
  if (!(omega > 0.0)) throw DomainError("spectral density requires omega > 0");
  if (!(hs >= 0.0) || !(tz > 0.0)) throw ArgumentError("spectral density requires hs >= 0, tz > 0");
  const double tz4 = tz * tz * tz * tz;
  const double w4 = omega * omega * omega * omega;
  return 124.0 * hs * hs / tz4 / (w4 * omega) * std::exp(-496.0 / (tz4 * w4));
}

double spectrum_m0(double hs, double tz) {
  if (!(hs >= 0.0) || !(tz > 0.0)) throw ArgumentError("spectrum_m0 requires hs >= 0, tz > 0");
  // A / (4 b) with A = 124 hs^2 / tz^4, b = 496 / tz^4.
  return hs * hs / 16.0;
}

double peak_frequency(double tz) {
  if (!(tz > 0.0)) throw ArgumentError("peak_frequency requires tz > 0");
  return std::pow(4.0 * 496.0 / (5.0 * std::pow(tz, 4)), 0.25);
}

double steepness_limit(double tz) {
  if (!(tz > 0.0)) throw ArgumentError("steepness_limit requires tz > 0");
  constexpr double kLow = 1.0 / 10.0;
  constexpr double kHigh = 1.0 / 15.0;
  if (tz <= 6.0) return kLow;
  if (tz >= 12.0) return kHigh;
  return kLow + (tz - 6.0) / 6.0 * (kHigh - kLow);
}

double steepness(const SeaState& state) {
  return 2.0 * kPi * state.hs / (kGravity * state.tz * state.tz);
}

bool steepness_ok(const SeaState& state) {
  return steepness(state) <= steepness_limit(state.tz);
}

}  // namespace seastate::seaway
