#include "seastate/seaway/wave_components.hpp"

#include <cmath>

#include "seastate/error.hpp"
#include "seastate/seaway/spectrum.hpp"

namespace seastate::seaway {

FrequencyGrid build_frequency_grid(std::size_t n, double omega_min, double omega_max, Rng& rng) {
  if (n < 2) throw ArgumentError("frequency grid needs at least 2 intervals");
  if (!(omega_min >= 0.0) || !(omega_max > omega_min)) {
    throw ArgumentError("frequency grid needs 0 <= omega_min < omega_max");
  }
  constexpr double kJitter = 0.45;
  const double spacing = (omega_max - omega_min) / static_cast<double>(n);

  FrequencyGrid grid;
  grid.boundaries.resize(n + 1);
  grid.boundaries.front() = omega_min;
  grid.boundaries.back() = omega_max;
  for (std::size_t i = 1; i < n; ++i) {
    const double nominal = omega_min + spacing * static_cast<double>(i);
    grid.boundaries[i] = nominal + uniform(rng, -kJitter, kJitter) * spacing;
  }

  grid.centers.resize(n);
  grid.widths.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double lo = grid.boundaries[i];
    const double hi = grid.boundaries[i + 1];
    grid.widths[i] = hi - lo;
    grid.centers[i] = uniform(rng, lo, hi);
  }
  return grid;
}

std::vector<double> component_amplitudes(const FrequencyGrid& grid, double hs, double tz) {
  std::vector<double> amp(grid.size(), 0.0);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double w = grid.centers[i];
    if (w <= 0.0) continue;  // density limit at omega -> 0 is zero
    amp[i] = std::sqrt(2.0 * bretschneider_density(w, hs, tz) * grid.widths[i]);
  }
  return amp;
}

double encounter_frequency(double omega, double speed, double beta_deg) {
  return omega - omega * omega * speed / kGravity * cos_deg(beta_deg);
}

WaveComponents realize_waves(const SeaState& state, double speed, std::size_t n, double omega_min,
                             double omega_max, Rng& rng) {
  const FrequencyGrid grid = build_frequency_grid(n, omega_min, omega_max, rng);
  WaveComponents waves;
  waves.omega = grid.centers;
  waves.amp = component_amplitudes(grid, state.hs, state.tz);
  waves.phase.resize(n);
  waves.omega_e.resize(n);
  waves.wave_number.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    waves.phase[i] = 2.0 * kPi * uniform01(rng);
    waves.omega_e[i] = encounter_frequency(waves.omega[i], speed, state.beta);
    waves.wave_number[i] = wave_number(waves.omega[i]);
  }
  return waves;
}

std::vector<double> elevation(const WaveComponents& waves, const std::vector<double>& times) {
  std::vector<double> eta(times.size(), 0.0);
  for (std::size_t j = 0; j < times.size(); ++j) {
    double sum = 0.0;
    for (std::size_t i = 0; i < waves.size(); ++i) {
      sum += waves.amp[i] * std::cos(waves.omega[i] * times[j] + waves.phase[i]);
    }
    eta[j] = sum;
  }
  return eta;
}

}  // namespace seastate::seaway
