#include "seastate/training/trainer.hpp"

#include <chrono>
#include <cmath>
#include <ostream>

#include "seastate/error.hpp"
#include "seastate/training/loss.hpp"
#include "seastate/training/metrics.hpp"

namespace seastate::training {

void TrainConfig::validate() const {
  optimizer.validate();
  if (batch_size < 2) throw ArgumentError("batch size must be >= 2");
  if (max_epochs < 1) throw ArgumentError("max_epochs must be >= 1");
  if (patience < 1) throw ArgumentError("patience must be >= 1");
  if (slice_size < 1) throw ArgumentError("slice size must be >= 1");
  if (!(input_gain >= 0.0) || !std::isfinite(input_gain)) {
    throw ArgumentError("input gain must be finite and non-negative");
  }
}

std::string_view stop_reason_name(StopReason reason) {
  return reason == StopReason::early_stop ? "early_stop" : "max_epochs";
}

void TrainLog::write_csv(std::ostream& out) const {
  out << "epoch,train_mse,val_mse,seconds\n";
  const auto precision = out.precision(9);
  for (const auto& e : epochs) {
    out << e.epoch << ',' << e.train_mse << ',' << e.val_mse << ',' << e.seconds << '\n';
  }
  out.precision(precision);
}

template <typename T>
void fit_input_scale(nets::Network<T>& model, const SampleSet& set, double gain) {
  const auto rms = channel_rms(set);
  auto scale = model.input_scale();
  for (std::size_t c = 0; c < scale.size(); ++c) {
    scale[c] = rms[c] > 0.0 ? static_cast<T>(gain / rms[c]) : T(1);
  }
}

namespace {

/// Shuffled batches; a trailing batch of one sample joins the previous one
/// because batch statistics need two rows.
std::vector<std::vector<std::size_t>> make_batches(std::size_t n, std::size_t batch_size, Rng& rng) {
  const auto order = random_permutation(rng, n);
  std::vector<std::vector<std::size_t>> batches;
  for (std::size_t start = 0; start < n; start += batch_size) {
    const std::size_t end = std::min(n, start + batch_size);
    if (end - start == 1 && !batches.empty()) {
      batches.back().push_back(order[start]);
    } else {
      batches.emplace_back(order.begin() + static_cast<std::ptrdiff_t>(start),
                           order.begin() + static_cast<std::ptrdiff_t>(end));
    }
  }
  return batches;
}

template <typename T>
double validation_mse(nets::Network<T>& model, const SampleSet& set, std::size_t batch_size) {
  return evaluate(model, set, batch_size).mse_avg;
}

}  // namespace

template <typename T>
TrainLog train(nets::Network<T>& model, const SampleSet& train_set, const SampleSet& val_set,
               const TrainConfig& cfg, const EpochCallback& on_epoch) {
  cfg.validate();
  if (train_set.size() < 2) throw ArgumentError("training split needs at least 2 samples");
  if (val_set.empty()) throw ArgumentError("validation split is empty");
  if (train_set.length != model.signal_length() || val_set.length != model.signal_length()) {
    throw ShapeError("sample length does not match the model input length");
  }
  if (cfg.input_gain > 0.0) fit_input_scale(model, train_set, cfg.input_gain);

  const auto aug = AugmentationMode::covering(cfg.augmentation, train_set.length, cfg.slice_size);
  Rng shuffle_rng(derive_seed(cfg.seed, 1));
  Rng augment_rng(derive_seed(cfg.seed, 2));
  Rng dropout_rng(derive_seed(cfg.seed, 3));
  Optimizer<T> opt(cfg.optimizer, model.parameters().trainable());

  TrainLog log;
  log.initial_val_mse = validation_mse(model, val_set, cfg.batch_size);
  log.best_val_mse = log.initial_val_mse;
  auto best = model.parameters().snapshot();
  std::size_t stale = 0;
  const auto t0 = std::chrono::steady_clock::now();

  for (std::size_t epoch = 1; epoch <= cfg.max_epochs; ++epoch) {
    double loss_sum = 0.0;
    std::size_t seen = 0;
    for (const auto& idx : make_batches(train_set.size(), cfg.batch_size, shuffle_rng)) {
      auto x = batch_inputs<T>(train_set, idx);
      if (cfg.augmentation != AugmentKind::none) {
        x = crop_time(augment_batch(x, aug, augment_rng), train_set.length);
      }
      const auto y = batch_targets<T>(train_set, idx);
      ad::Tape<T> tape;
      auto pred = model.forward(tape, x, nets::RunMode::train, dropout_rng);
      auto loss = mse_loss(tape, pred, y);
      const double value = static_cast<double>(loss.item());
      if (!std::isfinite(value)) {
        throw DivergenceError(static_cast<int>(epoch), "training loss became non-finite");
      }
      opt.zero_grad();
      tape.backward(loss);
      opt.step();
      loss_sum += value * static_cast<double>(idx.size());
      seen += idx.size();
    }
    EpochRecord rec;
    rec.epoch = epoch;
    rec.train_mse = loss_sum / static_cast<double>(seen);
    rec.val_mse = validation_mse(model, val_set, cfg.batch_size);
    rec.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!std::isfinite(rec.val_mse)) {
      throw DivergenceError(static_cast<int>(epoch), "validation loss became non-finite");
    }
    log.epochs.push_back(rec);
    if (on_epoch) on_epoch(rec);

    if (log.best_epoch == 0 || rec.val_mse < log.best_val_mse) {
      log.best_epoch = epoch;
      log.best_val_mse = rec.val_mse;
      best = model.parameters().snapshot();
      stale = 0;
    } else if (++stale >= cfg.patience) {
      log.stop = StopReason::early_stop;
      break;
    }
  }
  model.parameters().restore(best);
  return log;
}

template TrainLog train(nets::Network<float>&, const SampleSet&, const SampleSet&,
                        const TrainConfig&, const EpochCallback&);
template TrainLog train(nets::Network<double>&, const SampleSet&, const SampleSet&,
                        const TrainConfig&, const EpochCallback&);
template void fit_input_scale(nets::Network<float>&, const SampleSet&, double);
template void fit_input_scale(nets::Network<double>&, const SampleSet&, double);

}  // namespace seastate::training
