#include "seastate/seaway/synthesis.hpp"

#include <cmath>

#include "seastate/error.hpp"

namespace seastate::seaway {

std::size_t SignalParams::n_samples() const {
  return static_cast<std::size_t>(std::llround(duration * sample_rate)) + 1;
}

void accumulate_cosines(const std::vector<double>& omega, const std::vector<double>& phase,
                        const std::vector<std::array<double, kDofCount>>& weight,
                        const std::vector<std::array<double, kDofCount>>& quadrature, double dt,
                        std::array<std::vector<double>, kDofCount>& out) {
  constexpr std::size_t kAnchor = 256;
  const std::size_t n_samples = out[0].size();
  const bool has_quad = !quadrature.empty();
  if (weight.size() != omega.size() || phase.size() != omega.size() ||
      (has_quad && quadrature.size() != omega.size())) {
    throw ArgumentError("component arrays differ in length");
  }
  for (std::size_t k = 0; k < omega.size(); ++k) {
    const auto& w = weight[k];
    const std::array<double, kDofCount> q = has_quad ? quadrature[k] : std::array<double, kDofCount>{};
    const bool quad = q[0] != 0.0 || q[1] != 0.0 || q[2] != 0.0;
    if (w[0] == 0.0 && w[1] == 0.0 && w[2] == 0.0 && !quad) continue;
    const double step_c = std::cos(omega[k] * dt);
    const double step_s = std::sin(omega[k] * dt);
    double c = 0.0;
    double s = 0.0;
    for (std::size_t j = 0; j < n_samples; ++j) {
      if (j % kAnchor == 0) {
        const double angle = omega[k] * (static_cast<double>(j) * dt) + phase[k];
        c = std::cos(angle);
        s = std::sin(angle);
      } else {
        const double nc = c * step_c - s * step_s;
        s = s * step_c + c * step_s;
        c = nc;
      }
      if (quad) {
        out[0][j] += w[0] * c + q[0] * s;
        out[1][j] += w[1] * c + q[1] * s;
        out[2][j] += w[2] * c + q[2] * s;
      } else {
        out[0][j] += w[0] * c;
        out[1][j] += w[1] * c;
        out[2][j] += w[2] * c;
      }
    }
  }
}

std::array<std::vector<double>, kDofCount> response_series(const WaveComponents& waves,
                                                           double beta_deg,
                                                           const RaoSource& rao,
                                                           std::size_t n_samples,
                                                           double sample_rate) {
  if (!(sample_rate > 0.0) || n_samples == 0) {
    throw ArgumentError("response series needs sample_rate > 0 and at least one sample");
  }
  // A response phase phi turns cos(x) into cos(phi) cos(x) - sin(phi) sin(x).
  // Phases of exactly 0 or pi keep the pure cosine path.
  std::vector<std::array<double, kDofCount>> weight(waves.size());
  std::vector<std::array<double, kDofCount>> quadrature;
  for (std::size_t i = 0; i < waves.size(); ++i) {
    const double we = std::abs(waves.omega_e[i]);
    for (std::size_t d = 0; d < kDofCount; ++d) {
      const Dof dof = static_cast<Dof>(d);
      const double a = waves.amp[i] * transfer_amplitude(rao, dof, we, beta_deg);
      const double phi = transfer_phase(rao, dof, we, beta_deg);
      if (phi == 0.0) {
        weight[i][d] = a;
      } else if (phi == kPi) {
        weight[i][d] = -a;
      } else {
        weight[i][d] = a * std::cos(phi);
        if (quadrature.empty()) quadrature.resize(waves.size());
        quadrature[i][d] = -a * std::sin(phi);
      }
    }
  }
  std::array<std::vector<double>, kDofCount> out;
  for (auto& ch : out) ch.assign(n_samples, 0.0);
  accumulate_cosines(waves.omega_e, waves.phase, weight, quadrature, 1.0 / sample_rate, out);
  return out;
}

MotionRecord synthesize_motions(const SeaState& state, double speed, const RaoSource& rao,
                                const SignalParams& params, std::uint64_t seed) {
  require_valid(state);
  if (!(speed >= 0.0)) throw ArgumentError("forward speed must be >= 0");
  if (!(params.duration * params.sample_rate >= 1.0)) {
    throw ArgumentError("duration * sample_rate must be >= 1");
  }
  Rng rng(seed);
  const WaveComponents waves = realize_waves(state, speed, params.grid_size, params.omega_min,
                                             params.omega_max, rng);
  MotionRecord record;
  record.channels = response_series(waves, state.beta, rao, params.n_samples(), params.sample_rate);
  record.sample_rate = params.sample_rate;
  record.label = state;
  record.speed = speed;
  record.seed = seed;
  return record;
}

}  // namespace seastate::seaway
