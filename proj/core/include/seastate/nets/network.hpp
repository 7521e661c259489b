#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>

#include "seastate/nets/layers.hpp"

namespace seastate::nets {

enum class ModelKind { at_nn, cnn_reg };

std::string_view kind_name(ModelKind kind);
/// Throws ArgumentError for unknown names.
ModelKind parse_kind(std::string_view name);

/// Motion channels per record (heave, pitch, roll).
inline constexpr std::size_t kChannels = 3;
/// Regression targets (Hs, Tz, beta).
inline constexpr std::size_t kTargets = 3;
/// Initial bias of the output layer. A zero bias leaves the final RELU dead
/// for any output whose pre-activation starts negative on most inputs.
inline constexpr double kOutputBiasInit = 0.5;
/// Scale of the output layer's Glorot weights. Small initial outputs keep
/// the first updates from chasing the random initial predictions.
inline constexpr double kOutputWeightGain = 0.1;

/// A regression network mapping [batch x 3 x L] motions to [batch x 3]
/// scaled targets. The forward pass is split at the first dropout layer:
/// features() is deterministic in every mode, head() holds the stochastic
/// and batch-statistics layers.
template <typename T>
class Network {
 public:
  virtual ~Network() = default;

  virtual ModelKind kind() const = 0;
  virtual std::size_t signal_length() const = 0;
  virtual double dropout_p() const = 0;
  /// Architecture config as a JSON object.
  virtual std::string config_json() const = 0;

  virtual ad::Tensor<T> features(ad::Tape<T>& tape, const ad::Tensor<T>& batch) = 0;
  virtual ad::Tensor<T> head(ad::Tape<T>& tape, const ad::Tensor<T>& features, RunMode mode,
                             Rng& rng) = 0;

  ad::Tensor<T> forward(ad::Tape<T>& tape, const ad::Tensor<T>& batch, RunMode mode, Rng& rng) {
    return head(tape, features(tape, batch), mode, rng);
  }

  ParameterStore<T>& parameters() { return store_; }
  const ParameterStore<T>& parameters() const { return store_; }

  /// Per-channel multipliers applied to the raw motions before the first
  /// layer. Persisted with the parameters; 1 after construction.
  std::span<T> input_scale() { return input_scale_.values(); }
  std::span<const T> input_scale() const { return input_scale_.values(); }

 protected:
  Network() { input_scale_ = store_.constant("input.scale", {kChannels}, T(1), false); }

  /// Validates [batch x 3 x L] and returns the scaled input as
  /// [batch x 1 x 3 x L].
  ad::Tensor<T> prepare_input(const ad::Tensor<T>& batch) const;

  ParameterStore<T> store_;
  ad::Tensor<T> input_scale_;
};

extern template class Network<float>;
extern template class Network<double>;

}  // namespace seastate::nets
