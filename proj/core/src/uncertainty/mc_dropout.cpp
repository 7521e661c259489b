#include "seastate/uncertainty/mc_dropout.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <thread>

#include "seastate/error.hpp"

namespace seastate::uncertainty {

void McConfig::validate() const {
  if (passes < 2) throw ArgumentError("MC dropout needs at least 2 passes");
  if (workers < 1) throw ArgumentError("workers must be >= 1");
  if (batch_size < 1) throw ArgumentError("batch size must be >= 1");
}

namespace {

/// Statistics of one sample from its feature row. Deviations are taken
/// from the first pass so identical passes give sigma exactly 0.
template <typename T>
SampleUncertainty sample_stats(nets::Network<T>& model, std::span<const T> features,
                               std::size_t passes, std::uint64_t stream) {
  const std::size_t f = features.size();
  ad::Tape<T> tape(false);
  Rng unused(0);
  SampleUncertainty s;

  ad::Tensor<T> one({1, f}, std::vector<T>(features.begin(), features.end()));
  const auto det = model.head(tape, one, nets::RunMode::infer, unused);
  for (std::size_t p = 0; p < 3; ++p) s.deterministic[p] = static_cast<double>(det[p]);

  std::vector<T> rows(passes * f);
  for (std::size_t r = 0; r < passes; ++r) std::copy(features.begin(), features.end(), rows.begin() + static_cast<std::ptrdiff_t>(r * f));
  Rng rng(stream);
  const auto out = model.head(tape, ad::Tensor<T>({passes, f}, std::move(rows)),
                              nets::RunMode::mc_dropout, rng);
  for (std::size_t p = 0; p < 3; ++p) {
    const double anchor = static_cast<double>(out[p]);
    double sum = 0.0;
    for (std::size_t r = 0; r < passes; ++r) sum += static_cast<double>(out[r * 3 + p]) - anchor;
    const double shift = sum / static_cast<double>(passes);
    double sq = 0.0;
    for (std::size_t r = 0; r < passes; ++r) {
      const double d = static_cast<double>(out[r * 3 + p]) - anchor - shift;
      sq += d * d;
    }
    s.mu[p] = anchor + shift;
    s.sigma[p] = std::sqrt(sq / static_cast<double>(passes));
  }
  return s;
}

}  // namespace

template <typename T>
std::vector<SampleUncertainty> mc_dropout_predict(nets::Network<T>& model,
                                                  const training::SampleSet& set,
                                                  const McConfig& cfg) {
  cfg.validate();
  const std::size_t n = set.size();
  std::vector<SampleUncertainty> out(n);
  const std::size_t n_batches = (n + cfg.batch_size - 1) / cfg.batch_size;

  auto run_batch = [&](std::size_t b) {
    const std::size_t start = b * cfg.batch_size;
    const std::size_t count = std::min(cfg.batch_size, n - start);
    std::vector<std::size_t> idx(count);
    std::iota(idx.begin(), idx.end(), start);
    ad::Tape<T> tape(false);
    const auto feats = model.features(tape, training::batch_inputs<T>(set, idx));
    const std::size_t f = feats.size() / count;
    for (std::size_t i = 0; i < count; ++i) {
      out[start + i] = sample_stats(model, feats.values().subspan(i * f, f), cfg.passes,
                                    derive_seed(cfg.seed, start + i));
    }
  };

  const std::size_t workers = std::min(cfg.workers, std::max<std::size_t>(n_batches, 1));
  if (workers <= 1) {
    for (std::size_t b = 0; b < n_batches; ++b) run_batch(b);
    return out;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t b = w; b < n_batches; b += workers) run_batch(b);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

CoverageTable coverage_stats(std::span<const SampleUncertainty> samples,
                             std::span<const std::array<double, 3>> truths) {
  if (samples.size() != truths.size()) {
    throw ArgumentError("coverage needs one truth per sample");
  }
  CoverageTable table;
  table.count = samples.size();
  if (samples.empty()) return table;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    for (std::size_t k = 0; k < kMaxSigma; ++k) {
      const double width = static_cast<double>(k + 1);
      bool all = true;
      for (std::size_t p = 0; p < 3; ++p) {
        const bool inside =
            std::abs(truths[i][p] - samples[i].mu[p]) <= width * samples[i].sigma[p];
        if (inside) table.per_parameter[p][k] += 1.0;
        all = all && inside;
      }
      if (all) table.joint[k] += 1.0;
    }
  }
  const double n = static_cast<double>(samples.size());
  for (auto& v : table.joint) v /= n;
  for (auto& row : table.per_parameter) {
    for (auto& v : row) v /= n;
  }
  return table;
}

std::string UncertaintyReport::to_json() const {
  using nlohmann::ordered_json;
  ordered_json j;
  j["n_passes"] = n_passes;
  j["seed"] = seed;
  j["dropout_p"] = dropout_p;
  if (degenerate()) j["warning"] = "model has no active dropout; sigma is 0 for every sample";
  ordered_json cov;
  cov["count"] = coverage.count;
  std::vector<int> ns(kMaxSigma);
  std::iota(ns.begin(), ns.end(), 1);
  cov["n"] = ns;
  cov["joint"] = coverage.joint;
  cov["hs"] = coverage.per_parameter[0];
  cov["tz"] = coverage.per_parameter[1];
  cov["beta"] = coverage.per_parameter[2];
  j["coverage"] = cov;
  ordered_json rows = ordered_json::array();
  for (std::size_t i = 0; i < samples.size(); ++i) {
    ordered_json r;
    r["index"] = i;
    if (i < truths.size()) r["truth"] = truths[i];
    r["deterministic"] = samples[i].deterministic;
    r["mu"] = samples[i].mu;
    r["sigma"] = samples[i].sigma;
    rows.push_back(std::move(r));
  }
  j["samples"] = std::move(rows);
  return j.dump(2);
}

void UncertaintyReport::write_csv(std::ostream& out) const {
  static constexpr const char* kNames[3] = {"hs", "tz", "beta"};
  out << "sample,parameter,truth,deterministic,mu,sigma\n";
  const auto precision = out.precision(9);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    for (std::size_t p = 0; p < 3; ++p) {
      out << i << ',' << kNames[p] << ',' << (i < truths.size() ? truths[i][p] : 0.0) << ','
          << samples[i].deterministic[p] << ',' << samples[i].mu[p] << ',' << samples[i].sigma[p]
          << '\n';
    }
  }
  out.precision(precision);
}

template <typename T>
UncertaintyReport run_uncertainty(nets::Network<T>& model, const training::SampleSet& set,
                                  const McConfig& cfg) {
  if (set.empty()) throw ArgumentError("uncertainty needs at least one sample");
  UncertaintyReport report;
  report.n_passes = cfg.passes;
  report.seed = cfg.seed;
  report.dropout_p = model.dropout_p();
  report.samples = mc_dropout_predict(model, set, cfg);
  for (std::size_t i = 0; i < set.size(); ++i) {
    report.truths.push_back({set.targets[i * 3], set.targets[i * 3 + 1], set.targets[i * 3 + 2]});
  }
  report.coverage = coverage_stats(report.samples, report.truths);
  return report;
}

template std::vector<SampleUncertainty> mc_dropout_predict(nets::Network<float>&,
                                                           const training::SampleSet&,
                                                           const McConfig&);
template std::vector<SampleUncertainty> mc_dropout_predict(nets::Network<double>&,
                                                           const training::SampleSet&,
                                                           const McConfig&);
template UncertaintyReport run_uncertainty(nets::Network<float>&, const training::SampleSet&,
                                           const McConfig&);
template UncertaintyReport run_uncertainty(nets::Network<double>&, const training::SampleSet&,
                                           const McConfig&);

}  // namespace seastate::uncertainty
