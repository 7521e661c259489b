#pragma once

namespace seastate::seaway {

inline constexpr double kGravity = 9.81;  // m/s^2
inline constexpr double kPi = 3.14159265358979323846;

/// 16.19 kn in m/s.
inline constexpr double kDefaultSpeed = 8.3295;

inline constexpr double deg_to_rad(double deg) { return deg * kPi / 180.0; }

/// Cosine and sine of an angle in degrees, exact at multiples of 90.
double cos_deg(double deg);
double sin_deg(double deg);

/// Ground-truth label of one record: significant wave height (m), zero
/// up-crossing period (s) and relative wave direction (deg, 180 = head seas).
struct SeaState {
  double hs = 0.0;
  double tz = 0.0;
  double beta = 0.0;

  /// hs > 0, tz > 0, 0 <= beta < 360.
  bool valid() const;

  friend bool operator==(const SeaState&, const SeaState&) = default;
};

/// Throws ArgumentError if `state` violates the SeaState invariants.
void require_valid(const SeaState& state);

}  // namespace seastate::seaway
