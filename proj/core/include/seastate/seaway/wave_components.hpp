#pragma once

#include <cstddef>
#include <vector>

#include "seastate/random.hpp"
#include "seastate/seaway/sea_state.hpp"

namespace seastate::seaway {

/// Partition of [omega_min, omega_max] into n intervals with one
/// representative frequency per interval (rad/s).
struct FrequencyGrid {
  std::vector<double> boundaries;  // n + 1, strictly increasing
  std::vector<double> centers;     // n, centers[i] in [boundaries[i], boundaries[i+1])
  std::vector<double> widths;      // n, boundaries[i+1] - boundaries[i]

  std::size_t size() const { return centers.size(); }
};

/// Random non-equidistant grid. Interior boundaries start equispaced and are
/// jittered uniformly within +-0.45 of the nominal spacing; each center is
/// drawn uniformly inside its interval. The end points are exact.
FrequencyGrid build_frequency_grid(std::size_t n, double omega_min, double omega_max, Rng& rng);

/// A_i = sqrt(2 S(center_i) width_i). Zero wherever the density underflows
/// and for hs = 0.
std::vector<double> component_amplitudes(const FrequencyGrid& grid, double hs, double tz);

/// Doppler-shifted frequency omega - omega^2 U / g cos(beta); beta in degrees,
/// 180 = head seas. Negative results occur in following seas at high omega.
double encounter_frequency(double omega, double speed, double beta_deg);

/// Deep-water dispersion k = omega^2 / g.
inline double wave_number(double omega) { return omega * omega / kGravity; }

/// One realization of a long-crested sea.
struct WaveComponents {
  std::vector<double> omega;
  std::vector<double> amp;
  std::vector<double> phase;  // [0, 2 pi)
  std::vector<double> omega_e;
  std::vector<double> wave_number;

  std::size_t size() const { return omega.size(); }
};

/// Draws a grid and phases from `rng` (grid first, then phases) and fills
/// amplitudes and encounter frequencies for `state` at forward speed `speed`.
WaveComponents realize_waves(const SeaState& state, double speed, std::size_t n, double omega_min,
                             double omega_max, Rng& rng);

/// Free-surface elevation at x = 0 for each time in `times`.
std::vector<double> elevation(const WaveComponents& waves, const std::vector<double>& times);

}  // namespace seastate::seaway
