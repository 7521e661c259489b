#include "seastate/training/metrics.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "seastate/error.hpp"
#include "seastate/training/scaling.hpp"

namespace seastate::training {

std::string Metrics::to_json() const {
  nlohmann::ordered_json j;
  j["mse_hs"] = mse[0];
  j["mse_tz"] = mse[1];
  j["mse_beta"] = mse[2];
  j["mae_hs"] = mae[0];
  j["mae_tz"] = mae[1];
  j["mae_beta"] = mae[2];
  j["mse_avg"] = mse_avg;
  j["mae_avg"] = mae_avg;
  return j.dump(2);
}

std::string Metrics::physical_json() const {
  nlohmann::ordered_json j;
  j["count"] = count;
  j["mae_hs_m"] = mae_physical[0];
  j["mae_tz_s"] = mae_physical[1];
  j["mae_beta_deg"] = mae_physical[2];
  return j.dump(2);
}

Metrics compute_metrics(std::span<const float> pred, std::span<const float> target) {
  if (pred.size() != target.size() || pred.size() % 3 != 0) {
    throw ShapeError("prediction and target sizes differ");
  }
  if (pred.empty()) throw ArgumentError("cannot evaluate an empty split");
  Metrics m;
  m.count = pred.size() / 3;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    const double e = static_cast<double>(pred[i]) - static_cast<double>(target[i]);
    m.mse[i % 3] += e * e;
    m.mae[i % 3] += std::abs(e);
  }
  for (std::size_t p = 0; p < 3; ++p) {
    m.mse[p] /= static_cast<double>(m.count);
    m.mae[p] /= static_cast<double>(m.count);
    m.mae_physical[p] = m.mae[p] * kTargetScale[p];
  }
  m.mse_avg = (m.mse[0] + m.mse[1] + m.mse[2]) / 3.0;
  m.mae_avg = (m.mae[0] + m.mae[1] + m.mae[2]) / 3.0;
  return m;
}

template <typename T>
std::vector<float> predict(nets::Network<T>& model, const SampleSet& set, std::size_t batch_size) {
  if (batch_size == 0) throw ArgumentError("batch size must be positive");
  std::vector<float> out;
  out.reserve(set.size() * 3);
  std::vector<std::size_t> idx(set.size());
  std::iota(idx.begin(), idx.end(), 0);
  ad::Tape<T> tape(false);
  Rng unused(0);
  for (std::size_t start = 0; start < idx.size(); start += batch_size) {
    const std::size_t n = std::min(batch_size, idx.size() - start);
    auto x = batch_inputs<T>(set, std::span(idx).subspan(start, n));
    auto y = model.forward(tape, x, nets::RunMode::infer, unused);
    for (T v : y.values()) out.push_back(static_cast<float>(v));
  }
  return out;
}

template <typename T>
Metrics evaluate(nets::Network<T>& model, const SampleSet& set, std::size_t batch_size) {
  if (set.empty()) throw ArgumentError("cannot evaluate an empty split");
  const auto pred = predict(model, set, batch_size);
  return compute_metrics(pred, set.targets);
}

double mean_predictor_mse(const SampleSet& reference, const SampleSet& eval) {
  if (reference.empty() || eval.empty()) throw ArgumentError("mean predictor needs samples");
  std::array<double, 3> mean{};
  for (std::size_t i = 0; i < reference.targets.size(); ++i) mean[i % 3] += reference.targets[i];
  for (auto& m : mean) m /= static_cast<double>(reference.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < eval.targets.size(); ++i) {
    const double e = eval.targets[i] - mean[i % 3];
    acc += e * e;
  }
  return acc / static_cast<double>(eval.targets.size());
}

template std::vector<float> predict(nets::Network<float>&, const SampleSet&, std::size_t);
template std::vector<float> predict(nets::Network<double>&, const SampleSet&, std::size_t);
template Metrics evaluate(nets::Network<float>&, const SampleSet&, std::size_t);
template Metrics evaluate(nets::Network<double>&, const SampleSet&, std::size_t);

}  // namespace seastate::training
