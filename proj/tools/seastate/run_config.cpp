#include "run_config.hpp"

#include "json.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "seastate/error.hpp"
#include "seastate/nets/config_io.hpp"

namespace seastate::cli {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

void reject_unknown(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) throw ArgumentError(where + " must be an object");
  for (const auto& [key, value] : j.items()) {
    if (!allowed.count(key)) {
      throw ArgumentError("unknown config key: " + (where.empty() ? key : where + "." + key));
    }
  }
}

template <typename V>
void read(const json& j, const char* key, V& out, const std::string& where) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<V>();
  } catch (const json::exception&) {
    throw ArgumentError("bad value for " + (where.empty() ? "" : where + ".") + key);
  }
}

void read_range(const json& j, const char* key, double& lo, double& hi) {
  if (!j.contains(key)) return;
  std::vector<double> v;
  read(j, key, v, "dataset.ranges");
  if (v.size() != 2 || !(v[0] < v[1])) {
    throw ArgumentError(std::string("dataset.ranges.") + key + " must be [lo, hi] with lo < hi");
  }
  lo = v[0];
  hi = v[1];
}

}  // namespace

RunConfig RunConfig::from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ArgumentError(std::string("config is not valid JSON: ") + e.what());
  }
  reject_unknown(j, {"seed", "workers", "paths", "rao", "dataset", "model", "training", "split",
                     "uncertainty"},
                 "");
  RunConfig c;
  read(j, "seed", c.seed, "");
  read(j, "workers", c.workers, "");

  if (j.contains("paths")) {
    const auto& p = j.at("paths");
    reject_unknown(p, {"rao", "dataset", "checkpoint"}, "paths");
    read(p, "rao", c.paths.rao, "paths");
    read(p, "dataset", c.paths.dataset, "paths");
    read(p, "checkpoint", c.paths.checkpoint, "paths");
  }
  if (j.contains("rao")) {
    const auto& r = j.at("rao");
    reject_unknown(r, {"headings", "frequencies", "omega_max", "phase"}, "rao");
    read(r, "headings", c.rao.headings, "rao");
    read(r, "frequencies", c.rao.frequencies, "rao");
    read(r, "omega_max", c.rao.omega_max, "rao");
    read(r, "phase", c.rao.phase, "rao");
  }
  if (j.contains("dataset")) {
    const auto& d = j.at("dataset");
    reject_unknown(d, {"n_lhs", "max_records", "speed_mps", "signal", "ranges"}, "dataset");
    read(d, "n_lhs", c.dataset.n_lhs, "dataset");
    read(d, "max_records", c.dataset.max_records, "dataset");
    read(d, "speed_mps", c.dataset.speed, "dataset");
    if (d.contains("signal")) {
      const auto& s = d.at("signal");
      reject_unknown(s, {"grid_size", "omega_min", "omega_max", "duration_s", "sample_rate_hz"},
                     "dataset.signal");
      read(s, "grid_size", c.dataset.signal.grid_size, "dataset.signal");
      read(s, "omega_min", c.dataset.signal.omega_min, "dataset.signal");
      read(s, "omega_max", c.dataset.signal.omega_max, "dataset.signal");
      read(s, "duration_s", c.dataset.signal.duration, "dataset.signal");
      read(s, "sample_rate_hz", c.dataset.signal.sample_rate, "dataset.signal");
    }
    if (d.contains("ranges")) {
      const auto& r = d.at("ranges");
      reject_unknown(r, {"hs", "tz", "beta"}, "dataset.ranges");
      read_range(r, "hs", c.dataset.ranges.hs_min, c.dataset.ranges.hs_max);
      read_range(r, "tz", c.dataset.ranges.tz_min, c.dataset.ranges.tz_max);
      read_range(r, "beta", c.dataset.ranges.beta_min, c.dataset.ranges.beta_max);
    }
  }
  if (j.contains("model")) {
    const auto& m = j.at("model");
    reject_unknown(m, {"kind", "at_nn", "cnn_reg"}, "model");
    if (m.contains("kind")) {
      std::string kind;
      read(m, "kind", kind, "model");
      c.model_kind = nets::parse_kind(kind);
    }
    // The input length always follows dataset.signal.
    for (const char* key : {"at_nn", "cnn_reg"}) {
      if (m.contains(key) && m.at(key).is_object() && m.at(key).contains("signal_length")) {
        throw ArgumentError(std::string("unknown config key: model.") + key +
                            ".signal_length (set dataset.signal instead)");
      }
    }
    // Parsed against a long placeholder length; finalize() checks the
    // real one.
    constexpr std::size_t kParseLength = std::size_t{1} << 20;
    json at = m.value("at_nn", json::object());
    at["signal_length"] = kParseLength;
    json cnn = m.value("cnn_reg", json::object());
    cnn["signal_length"] = kParseLength;
    try {
      c.at_nn = nets::at_nn_config_from_json(at.dump());
      c.cnn_reg = nets::cnn_reg_config_from_json(cnn.dump());
    } catch (const ArgumentError& e) {
      throw ArgumentError(std::string("model: ") + e.what());
    }
  }
  if (j.contains("training")) {
    const auto& t = j.at("training");
    reject_unknown(t, {"optimizer", "learning_rate", "batch_size", "max_epochs", "patience",
                       "augmentation", "slice_size", "input_gain"},
                   "training");
    if (t.contains("optimizer")) {
      std::string name;
      read(t, "optimizer", name, "training");
      c.training.optimizer.kind = training::parse_optimizer(name);
    }
    read(t, "learning_rate", c.training.optimizer.learning_rate, "training");
    read(t, "batch_size", c.training.batch_size, "training");
    read(t, "max_epochs", c.training.max_epochs, "training");
    read(t, "patience", c.training.patience, "training");
    if (t.contains("augmentation")) {
      std::string name;
      read(t, "augmentation", name, "training");
      c.training.augmentation = training::parse_augment_kind(name);
    }
    read(t, "slice_size", c.training.slice_size, "training");
    read(t, "input_gain", c.training.input_gain, "training");
  }
  if (j.contains("split")) {
    const auto& s = j.at("split");
    reject_unknown(s, {"train", "val", "test"}, "split");
    read(s, "train", c.split.train, "split");
    read(s, "val", c.split.val, "split");
    read(s, "test", c.split.test, "split");
  }
  if (j.contains("uncertainty")) {
    const auto& u = j.at("uncertainty");
    reject_unknown(u, {"passes"}, "uncertainty");
    read(u, "passes", c.mc_passes, "uncertainty");
  }
  return c;
}

RunConfig RunConfig::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open config " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_json(buf.str());
}

std::string RunConfig::to_json() const {
  ordered_json j;
  j["seed"] = seed;
  j["workers"] = workers;
  j["paths"] = {{"rao", paths.rao}, {"dataset", paths.dataset}, {"checkpoint", paths.checkpoint}};
  j["rao"] = {{"headings", rao.headings},
              {"frequencies", rao.frequencies},
              {"omega_max", rao.omega_max},
              {"phase", rao.phase}};
  ordered_json d;
  d["n_lhs"] = dataset.n_lhs;
  d["max_records"] = dataset.max_records;
  d["speed_mps"] = dataset.speed;
  d["signal"] = {{"grid_size", dataset.signal.grid_size},
                 {"omega_min", dataset.signal.omega_min},
                 {"omega_max", dataset.signal.omega_max},
                 {"duration_s", dataset.signal.duration},
                 {"sample_rate_hz", dataset.signal.sample_rate}};
  d["ranges"] = {{"hs", {dataset.ranges.hs_min, dataset.ranges.hs_max}},
                 {"tz", {dataset.ranges.tz_min, dataset.ranges.tz_max}},
                 {"beta", {dataset.ranges.beta_min, dataset.ranges.beta_max}}};
  j["dataset"] = d;
  auto at = json::parse(nets::to_json(at_nn));
  at.erase("signal_length");
  auto cnn = json::parse(nets::to_json(cnn_reg));
  cnn.erase("signal_length");
  j["model"] = {{"kind", std::string(nets::kind_name(model_kind))}, {"at_nn", at}, {"cnn_reg", cnn}};
  j["training"] = {{"optimizer", std::string(training::optimizer_name(training.optimizer.kind))},
                   {"learning_rate", training.optimizer.learning_rate},
                   {"batch_size", training.batch_size},
                   {"max_epochs", training.max_epochs},
                   {"patience", training.patience},
                   {"augmentation", std::string(training::augment_kind_name(training.augmentation))},
                   {"slice_size", training.slice_size},
                   {"input_gain", training.input_gain}};
  j["split"] = {{"train", split.train}, {"val", split.val}, {"test", split.test}};
  j["uncertainty"] = {{"passes", mc_passes}};
  return j.dump(2) + "\n";
}

void RunConfig::finalize() {
  if (workers < 1) throw ArgumentError("workers must be >= 1");
  if (dataset.signal.grid_size < 2) throw ArgumentError("dataset.signal.grid_size must be >= 2");
  if (!(dataset.signal.duration * dataset.signal.sample_rate >= 1.0)) {
    throw ArgumentError("dataset.signal needs duration_s * sample_rate_hz >= 1");
  }
  dataset.seed = seed;
  dataset.workers = workers;
  at_nn.signal_length = signal_length();
  cnn_reg.signal_length = signal_length();
  training.seed = train_seed();
  split.seed = split_seed();
  if (model_kind == nets::ModelKind::at_nn) {
    at_nn.validate();
  } else {
    cnn_reg.validate();
  }
  training.validate();
  split.validate();
  if (mc_passes < 2) throw ArgumentError("uncertainty.passes must be >= 2");
}

std::uint64_t RunConfig::split_seed() const { return derive_seed(seed, 1); }
std::uint64_t RunConfig::init_seed() const { return derive_seed(seed, 2); }
std::uint64_t RunConfig::train_seed() const { return derive_seed(seed, 3); }
std::uint64_t RunConfig::mc_seed() const { return derive_seed(seed, 4); }

}  // namespace seastate::cli
