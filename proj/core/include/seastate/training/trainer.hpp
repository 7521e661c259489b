#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string_view>
#include <vector>

#include "seastate/nets/network.hpp"
#include "seastate/training/augment.hpp"
#include "seastate/training/optimizer.hpp"
#include "seastate/training/samples.hpp"

namespace seastate::training {

struct TrainConfig {
  OptimizerConfig optimizer;
  AugmentKind augmentation = AugmentKind::none;
  std::size_t slice_size = 32;
  std::size_t batch_size = 32;
  std::size_t max_epochs = 250;
  std::size_t patience = 10;
  /// When positive, each input channel is scaled by input_gain / rms of
  /// that channel over the training split before training starts.
  double input_gain = 0.0;
  std::uint64_t seed = 0;

  void validate() const;
};

struct EpochRecord {
  std::size_t epoch = 0;  // 1-based
  double train_mse = 0.0;
  double val_mse = 0.0;
  double seconds = 0.0;
};

enum class StopReason { early_stop, max_epochs };
std::string_view stop_reason_name(StopReason reason);

struct TrainLog {
  double initial_val_mse = 0.0;
  std::vector<EpochRecord> epochs;
  StopReason stop = StopReason::max_epochs;
  std::size_t best_epoch = 0;
  double best_val_mse = 0.0;

  /// Header epoch,train_mse,val_mse,seconds.
  void write_csv(std::ostream& out) const;
};

using EpochCallback = std::function<void(const EpochRecord&)>;

/// Mini-batch training with early stopping on validation MSE. Patience
/// counts epochs without a strict improvement; the parameters of the best
/// epoch are restored before returning. Throws ArgumentError on empty
/// splits and DivergenceError on a non-finite loss.
template <typename T>
TrainLog train(nets::Network<T>& model, const SampleSet& train_set, const SampleSet& val_set,
               const TrainConfig& cfg, const EpochCallback& on_epoch = {});

/// Scales each input channel of `model` to gain / rms(channel) of `set`.
template <typename T>
void fit_input_scale(nets::Network<T>& model, const SampleSet& set, double gain);

}  // namespace seastate::training
