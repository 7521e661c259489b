#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "seastate/nets/network.hpp"
#include "seastate/training/samples.hpp"

namespace seastate::training {

/// Scaled-space errors per target (Hs, Tz, beta) plus their means. The
/// physical MAE undoes the target scaling (m, s, deg).
struct Metrics {
  std::size_t count = 0;
  std::array<double, 3> mse{};
  std::array<double, 3> mae{};
  double mse_avg = 0.0;
  double mae_avg = 0.0;
  std::array<double, 3> mae_physical{};

  /// Exactly the keys mse_hs, mse_tz, mse_beta, mae_hs, mae_tz, mae_beta,
  /// mse_avg, mae_avg.
  std::string to_json() const;
  /// count, mae_hs_m, mae_tz_s, mae_beta_deg.
  std::string physical_json() const;
};

/// `pred` and `target` are [n x 3] row-major; throws ArgumentError when
/// empty and ShapeError when lengths differ.
Metrics compute_metrics(std::span<const float> pred, std::span<const float> target);

/// Infer-mode predictions [n x 3], evaluated in batches.
template <typename T>
std::vector<float> predict(nets::Network<T>& model, const SampleSet& set,
                           std::size_t batch_size = 32);

template <typename T>
Metrics evaluate(nets::Network<T>& model, const SampleSet& set, std::size_t batch_size = 32);

/// MSE on `eval` of always predicting the mean target of `reference`.
double mean_predictor_mse(const SampleSet& reference, const SampleSet& eval);

}  // namespace seastate::training
