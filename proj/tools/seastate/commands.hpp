#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "run_config.hpp"
#include "seastate/training/metrics.hpp"

namespace seastate::cli {

namespace fs = std::filesystem;

/// File names inside a run directory.
inline constexpr const char* kConfigFile = "config.json";
inline constexpr const char* kRaoFile = "rao.json";
inline constexpr const char* kDatasetFile = "dataset.jsonl";
inline constexpr const char* kSummaryFile = "summary.json";
inline constexpr const char* kCheckpointFile = "checkpoint.bin";
inline constexpr const char* kTrainLogFile = "train_log.csv";
inline constexpr const char* kMetricsFile = "metrics.json";
inline constexpr const char* kPhysicalMetricsFile = "metrics_physical.json";
inline constexpr const char* kPredictionsFile = "predictions.csv";
inline constexpr const char* kUncertaintyFile = "uncertainty.json";
inline constexpr const char* kUncertaintyCsvFile = "uncertainty.csv";

/// Creates `dir` and writes the effective config into it.
void prepare_run_dir(const RunConfig& cfg, const fs::path& dir);

seaway::RaoSource rao_source(const RunConfig& cfg);

fs::path cmd_gen_rao(const RunConfig& cfg, const fs::path& out);
seaway::DatasetSummary cmd_gen_dataset(const RunConfig& cfg, const fs::path& out);

struct TrainOutcome {
  training::TrainLog log;
  training::Metrics val;
  training::Metrics test;
  fs::path checkpoint;
};
TrainOutcome cmd_train(const RunConfig& cfg, const fs::path& out, std::ostream& log);

/// `split` is train, val, test or all.
training::Metrics cmd_eval(const RunConfig& cfg, const std::string& split, const fs::path& out);

/// Physical (Hs m, Tz s, beta deg) per record; every record unless `index`.
std::vector<std::array<double, 3>> cmd_predict(const RunConfig& cfg, std::optional<std::size_t> index,
                                               const fs::path& out);

uncertainty::UncertaintyReport cmd_uncertainty(const RunConfig& cfg, const std::string& split,
                                               const fs::path& out, std::ostream& log);

}  // namespace seastate::cli
