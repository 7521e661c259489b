#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "seastate/random.hpp"
#include "seastate/seaway/rao.hpp"
#include "seastate/seaway/sea_state.hpp"
#include "seastate/seaway/wave_components.hpp"

namespace seastate::seaway {

struct SignalParams {
  std::size_t grid_size = 500;
  double omega_min = 0.25;  // rad/s
  double omega_max = 4.0;   // rad/s
  double duration = 300.0;  // s
  double sample_rate = 5.0; // Hz

  /// round(duration * sample_rate) + 1, i.e. both end points are sampled.
  std::size_t n_samples() const;
};

/// Heave (m), pitch (deg) and roll (deg) time series with the sea state that
/// produced them.
struct MotionRecord {
  std::array<std::vector<double>, kDofCount> channels;
  double sample_rate = 5.0;
  SeaState label;
  double speed = kDefaultSpeed;
  std::uint64_t seed = 0;

  std::size_t n_samples() const { return channels[0].size(); }
  friend bool operator==(const MotionRecord&, const MotionRecord&) = default;
};

/// Responses for an already realized wave train:
///   R_d(t_j) = sum_i A_i |Phi_d| cos(omega_e,i t_j + eps_i + phi_d)
/// with Phi_d and phi_d evaluated at (|omega_e,i|, beta) and t_j = j / sample_rate.
std::array<std::vector<double>, kDofCount> response_series(const WaveComponents& waves,
                                                           double beta_deg,
                                                           const RaoSource& rao,
                                                           std::size_t n_samples,
                                                           double sample_rate);

/// Draws a wave realization from `seed` and computes the three motion
/// channels. Phases are shared across DOFs.
MotionRecord synthesize_motions(const SeaState& state, double speed, const RaoSource& rao,
                                const SignalParams& params, std::uint64_t seed);

/// Adds weight_k cos(theta) + quadrature_k sin(theta) with
/// theta = omega_k t_j + phase_k, t_j = j * dt, for every j < n_samples.
/// `quadrature` may be empty. Uses a phasor recurrence that is re-anchored
/// with exact trigonometry every few hundred steps.
void accumulate_cosines(const std::vector<double>& omega, const std::vector<double>& phase,
                        const std::vector<std::array<double, kDofCount>>& weight,
                        const std::vector<std::array<double, kDofCount>>& quadrature, double dt,
                        std::array<std::vector<double>, kDofCount>& out);

}  // namespace seastate::seaway
