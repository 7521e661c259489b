#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

#include "seastate/nets/at_nn.hpp"
#include "seastate/nets/cnn_reg.hpp"
#include "seastate/seaway/dataset.hpp"
#include "seastate/training/samples.hpp"
#include "seastate/training/trainer.hpp"
#include "seastate/uncertainty/mc_dropout.hpp"

namespace seastate::cli {

/// Everything a run needs. Defaults follow the best AT-NN setup: batch-wise
/// augmentation, ADAM at 5e-4, batch 32, early stopping after 10 epochs.
///
/// One master seed drives every stream: the dataset uses it directly, the
/// split, weight init, training and MC passes use derive_seed(seed, k) with
/// k = 1, 2, 3, 4.
struct RunConfig {
  static training::TrainConfig default_training() {
    training::TrainConfig t;
    t.augmentation = training::AugmentKind::batch_wise;
    t.input_gain = 5.0;
    return t;
  }

  std::uint64_t seed = 1;
  std::size_t workers = 1;

  struct Paths {
    std::string rao;         // empty: closed-form surrogate
    std::string dataset;
    std::string checkpoint;
  } paths;

  struct Rao {
    std::size_t headings = 36;
    std::size_t frequencies = 201;
    double omega_max = 20.0;
    bool phase = true;
  } rao;

  seaway::DatasetParams dataset;
  nets::ModelKind model_kind = nets::ModelKind::at_nn;
  nets::AtNnConfig at_nn;
  nets::CnnRegConfig cnn_reg;
  training::TrainConfig training = default_training();
  training::SplitSpec split;
  std::size_t mc_passes = 256;

  /// Parses a config document over the defaults. Unknown keys and
  /// ill-typed values throw ArgumentError.
  static RunConfig from_json(const std::string& text);
  static RunConfig load(const std::string& path);
  /// Full effective config; from_json(to_json()) reproduces it.
  std::string to_json() const;

  /// Propagates seed, workers and the dataset signal length into the
  /// module configs, then validates them.
  void finalize();

  std::uint64_t split_seed() const;
  std::uint64_t init_seed() const;
  std::uint64_t train_seed() const;
  std::uint64_t mc_seed() const;
  std::size_t signal_length() const { return dataset.signal.n_samples(); }
};

}  // namespace seastate::cli
