#include "commands.hpp"

#include "json.hpp"

#include <fstream>
#include <ostream>

#include "seastate/error.hpp"
#include "seastate/nets/at_nn.hpp"
#include "seastate/nets/checkpoint.hpp"
#include "seastate/nets/cnn_reg.hpp"
#include "seastate/training/scaling.hpp"

namespace seastate::cli {

namespace {

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out) throw IoError("failed writing " + path.string());
}

const std::string& require_path(const std::string& value, const char* what) {
  if (value.empty()) throw ArgumentError(std::string("no ") + what + " given");
  return value;
}

training::SampleSet load_samples(const RunConfig& cfg) {
  const auto records = seaway::read_dataset(require_path(cfg.paths.dataset, "dataset"));
  auto set = training::make_samples(records);
  if (set.empty()) throw DataError("dataset " + cfg.paths.dataset + " has no records");
  return set;
}

std::vector<std::size_t> select_split(const RunConfig& cfg, std::size_t n, const std::string& split) {
  if (split == "all") {
    std::vector<std::size_t> all(n);
    for (std::size_t i = 0; i < n; ++i) all[i] = i;
    return all;
  }
  const auto parts = training::split_indices(n, cfg.split);
  if (split == "train") return parts.train;
  if (split == "val") return parts.val;
  if (split == "test") return parts.test;
  throw ArgumentError("unknown split: " + split + " (train, val, test, all)");
}

std::unique_ptr<nets::Network<float>> load_model(const RunConfig& cfg, std::size_t length) {
  auto model = nets::load_checkpoint<float>(require_path(cfg.paths.checkpoint, "checkpoint"),
                                            cfg.model_kind);
  if (model->signal_length() != length) {
    throw DataError("checkpoint expects " + std::to_string(model->signal_length()) +
                    "-sample signals, dataset has " + std::to_string(length));
  }
  return model;
}

}  // namespace

void prepare_run_dir(const RunConfig& cfg, const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());
  write_text(dir / kConfigFile, cfg.to_json());
}

seaway::RaoSource rao_source(const RunConfig& cfg) {
  if (cfg.paths.rao.empty()) return seaway::SurrogateRao{cfg.rao.phase};
  return seaway::load_rao_file(cfg.paths.rao);
}

fs::path cmd_gen_rao(const RunConfig& cfg, const fs::path& out) {
  prepare_run_dir(cfg, out);
  const auto table = seaway::make_surrogate_table(cfg.rao.headings, cfg.rao.frequencies,
                                                  cfg.rao.omega_max, cfg.rao.phase);
  const fs::path path = out / kRaoFile;
  seaway::save_rao_file(table, path);
  return path;
}

seaway::DatasetSummary cmd_gen_dataset(const RunConfig& cfg, const fs::path& out) {
  RunConfig effective = cfg;
  effective.paths.dataset = (out / kDatasetFile).string();
  prepare_run_dir(effective, out);
  const auto summary = seaway::generate_dataset(cfg.dataset, rao_source(cfg), out / kDatasetFile);
  nlohmann::ordered_json j;
  j["requested"] = summary.requested;
  j["retained"] = summary.retained;
  j["written"] = summary.written;
  j["seed"] = summary.seed;
  j["n_samples"] = cfg.dataset.signal.n_samples();
  write_text(out / kSummaryFile, j.dump(2) + "\n");
  return summary;
}

TrainOutcome cmd_train(const RunConfig& cfg, const fs::path& out, std::ostream& log) {
  const auto set = load_samples(cfg);
  if (set.length != cfg.signal_length()) {
    throw DataError("dataset records have " + std::to_string(set.length) +
                    " samples but dataset.signal implies " + std::to_string(cfg.signal_length()));
  }
  RunConfig effective = cfg;
  effective.paths.checkpoint = (out / kCheckpointFile).string();
  prepare_run_dir(effective, out);

  const auto parts = training::split_indices(set.size(), cfg.split);
  const auto train_set = training::subset(set, parts.train);
  const auto val_set = training::subset(set, parts.val);
  const auto test_set = training::subset(set, parts.test);
  if (train_set.size() < 2 || val_set.empty() || test_set.empty()) {
    throw DataError("dataset of " + std::to_string(set.size()) + " records is too small to split");
  }

  Rng init(cfg.init_seed());
  std::unique_ptr<nets::Network<float>> model;
  if (cfg.model_kind == nets::ModelKind::at_nn) {
    model = std::make_unique<nets::AtNn<float>>(cfg.at_nn, init);
  } else {
    model = std::make_unique<nets::CnnReg<float>>(cfg.cnn_reg, init);
  }
  log << "training " << nets::kind_name(cfg.model_kind) << " with "
      << model->parameters().count() << " parameters on " << train_set.size() << " records\n";

  TrainOutcome outcome;
  outcome.log = training::train(*model, train_set, val_set, cfg.training,
                                [&](const training::EpochRecord& r) {
                                  log << "epoch " << r.epoch << " train " << r.train_mse
                                      << " val " << r.val_mse << '\n';
                                });
  outcome.checkpoint = out / kCheckpointFile;
  nets::save_checkpoint(*model, outcome.checkpoint);
  {
    std::ofstream csv(out / kTrainLogFile, std::ios::trunc);
    if (!csv) throw IoError("cannot write training log");
    outcome.log.write_csv(csv);
  }
  outcome.val = training::evaluate(*model, val_set);
  outcome.test = training::evaluate(*model, test_set);

  nlohmann::ordered_json j;
  j["stop_reason"] = std::string(training::stop_reason_name(outcome.log.stop));
  j["epochs"] = outcome.log.epochs.size();
  j["best_epoch"] = outcome.log.best_epoch;
  j["initial_val_mse"] = outcome.log.initial_val_mse;
  j["best_val_mse"] = outcome.log.best_val_mse;
  j["val"] = nlohmann::ordered_json::parse(outcome.val.to_json());
  j["test"] = nlohmann::ordered_json::parse(outcome.test.to_json());
  j["mean_predictor_test_mse"] = training::mean_predictor_mse(train_set, test_set);
  write_text(out / kSummaryFile, j.dump(2) + "\n");
  log << "stopped (" << training::stop_reason_name(outcome.log.stop) << ") best epoch "
      << outcome.log.best_epoch << " val mse " << outcome.log.best_val_mse << '\n';
  return outcome;
}

training::Metrics cmd_eval(const RunConfig& cfg, const std::string& split, const fs::path& out) {
  const auto set = load_samples(cfg);
  const auto idx = select_split(cfg, set.size(), split);
  if (idx.empty()) throw DataError("split " + split + " is empty");
  auto model = load_model(cfg, set.length);
  const auto metrics = training::evaluate(*model, training::subset(set, idx));
  prepare_run_dir(cfg, out);
  write_text(out / kMetricsFile, metrics.to_json() + "\n");
  write_text(out / kPhysicalMetricsFile, metrics.physical_json() + "\n");
  return metrics;
}

std::vector<std::array<double, 3>> cmd_predict(const RunConfig& cfg, std::optional<std::size_t> index,
                                               const fs::path& out) {
  auto set = load_samples(cfg);
  if (index) {
    if (*index >= set.size()) {
      throw ArgumentError("record index " + std::to_string(*index) + " out of range (" +
                          std::to_string(set.size()) + " records)");
    }
    const std::size_t i = *index;
    set = training::subset(set, std::span<const std::size_t>(&i, 1));
  }
  auto model = load_model(cfg, set.length);
  const auto pred = training::predict(*model, set);
  std::vector<std::array<double, 3>> physical;
  for (std::size_t i = 0; i < pred.size() / 3; ++i) {
    const auto s = training::inverse_scale({pred[i * 3], pred[i * 3 + 1], pred[i * 3 + 2]});
    physical.push_back({s.hs, s.tz, s.beta});
  }
  if (!out.empty()) {
    prepare_run_dir(cfg, out);
    std::ofstream csv(out / kPredictionsFile, std::ios::trunc);
    if (!csv) throw IoError("cannot write predictions");
    csv.precision(9);
    csv << "record,hs_m,tz_s,beta_deg\n";
    for (std::size_t i = 0; i < physical.size(); ++i) {
      csv << (index ? *index : i) << ',' << physical[i][0] << ',' << physical[i][1] << ','
          << physical[i][2] << '\n';
    }
  }
  return physical;
}

uncertainty::UncertaintyReport cmd_uncertainty(const RunConfig& cfg, const std::string& split,
                                               const fs::path& out, std::ostream& log) {
  const auto set = load_samples(cfg);
  const auto idx = select_split(cfg, set.size(), split);
  if (idx.empty()) throw DataError("split " + split + " is empty");
  auto model = load_model(cfg, set.length);
  uncertainty::McConfig mc;
  mc.passes = cfg.mc_passes;
  mc.seed = cfg.mc_seed();
  mc.workers = cfg.workers;
  const auto report = uncertainty::run_uncertainty(*model, training::subset(set, idx), mc);
  if (report.degenerate()) log << "warning: model has no active dropout; every sigma is 0\n";
  prepare_run_dir(cfg, out);
  write_text(out / kUncertaintyFile, report.to_json() + "\n");
  std::ofstream csv(out / kUncertaintyCsvFile, std::ios::trunc);
  if (!csv) throw IoError("cannot write uncertainty table");
  report.write_csv(csv);
  return report;
}

}  // namespace seastate::cli
