#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "commands.hpp"
#include "seastate/error.hpp"

namespace {

namespace cli = seastate::cli;

enum Exit { kOk = 0, kFailure = 1, kConfig = 2, kData = 3, kDivergence = 4 };

struct Common {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> workers;
  std::string out;
  std::string dataset;
  std::string checkpoint;
  std::string rao;
};

void add_common(CLI::App* cmd, Common& c, bool out_required) {
  cmd->add_option("--config", c.config, "Run config (JSON)")->check(CLI::ExistingFile);
  cmd->add_option("--seed", c.seed, "Master seed");
  cmd->add_option("--workers", c.workers, "Worker threads (1 = bit-exact serial)")
      ->check(CLI::PositiveNumber);
  auto* out = cmd->add_option("--out", c.out, "Output directory");
  if (out_required) out->required();
}

cli::RunConfig resolve(const Common& c) {
  cli::RunConfig cfg = c.config.empty() ? cli::RunConfig{} : cli::RunConfig::load(c.config);
  if (c.seed) cfg.seed = *c.seed;
  if (c.workers) cfg.workers = *c.workers;
  if (!c.dataset.empty()) cfg.paths.dataset = c.dataset;
  if (!c.checkpoint.empty()) cfg.paths.checkpoint = c.checkpoint;
  if (!c.rao.empty()) cfg.paths.rao = c.rao;
  cfg.finalize();
  return cfg;
}

void print_metrics(const seastate::training::Metrics& m) {
  std::cout << m.to_json() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sea state estimation from ship motions: data synthesis, training, evaluation"};
  app.require_subcommand(1);

  Common c;
  std::string split = "test";
  std::optional<std::size_t> index;
  std::optional<std::size_t> passes;

  auto* gen_rao = app.add_subcommand("gen-rao", "Write the surrogate RAO table");
  add_common(gen_rao, c, true);

  auto* gen_dataset = app.add_subcommand("gen-dataset", "Synthesize a motion dataset");
  add_common(gen_dataset, c, true);
  gen_dataset->add_option("--rao", c.rao, "RAO table file (default: closed-form surrogate)")
      ->check(CLI::ExistingFile);

  auto* train = app.add_subcommand("train", "Train a model on a dataset");
  add_common(train, c, true);
  train->add_option("--dataset", c.dataset, "Dataset file")->check(CLI::ExistingFile);

  auto* eval = app.add_subcommand("eval", "Evaluate a checkpoint on a dataset split");
  add_common(eval, c, true);
  eval->add_option("--dataset", c.dataset, "Dataset file")->check(CLI::ExistingFile);
  eval->add_option("--checkpoint", c.checkpoint, "Checkpoint file")->check(CLI::ExistingFile);
  eval->add_option("--split", split, "train, val, test or all")
      ->check(CLI::IsMember({"train", "val", "test", "all"}));

  auto* predict = app.add_subcommand("predict", "Predict sea states for dataset records");
  add_common(predict, c, false);
  predict->add_option("--dataset", c.dataset, "Dataset file")->check(CLI::ExistingFile);
  predict->add_option("--checkpoint", c.checkpoint, "Checkpoint file")->check(CLI::ExistingFile);
  predict->add_option("--index", index, "Record (line) index; default every record");

  auto* unc = app.add_subcommand("uncertainty", "MC-dropout uncertainty and coverage");
  add_common(unc, c, true);
  unc->add_option("--dataset", c.dataset, "Dataset file")->check(CLI::ExistingFile);
  unc->add_option("--checkpoint", c.checkpoint, "Checkpoint file")->check(CLI::ExistingFile);
  unc->add_option("--split", split, "train, val, test or all")
      ->check(CLI::IsMember({"train", "val", "test", "all"}));
  unc->add_option("--passes", passes, "Stochastic passes per sample")->check(CLI::Range(2, 1 << 20));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfig;
  }

  try {
    auto cfg = resolve(c);
    if (passes) cfg.mc_passes = *passes;
    if (*gen_rao) {
      std::cout << cli::cmd_gen_rao(cfg, c.out).string() << '\n';
    } else if (*gen_dataset) {
      const auto s = cli::cmd_gen_dataset(cfg, c.out);
      std::cout << "requested " << s.requested << " retained " << s.retained << " written "
                << s.written << '\n';
    } else if (*train) {
      const auto r = cli::cmd_train(cfg, c.out, std::cerr);
      print_metrics(r.test);
    } else if (*eval) {
      print_metrics(cli::cmd_eval(cfg, split, c.out));
    } else if (*predict) {
      std::cout << "hs_m,tz_s,beta_deg\n";
      for (const auto& p : cli::cmd_predict(cfg, index, c.out)) {
        std::cout << p[0] << ',' << p[1] << ',' << p[2] << '\n';
      }
    } else if (*unc) {
      const auto r = cli::cmd_uncertainty(cfg, split, c.out, std::cerr);
      std::cout << "joint coverage n=1..5:";
      for (double v : r.coverage.joint) std::cout << ' ' << v;
      std::cout << '\n';
    }
  } catch (const seastate::DivergenceError& e) {
    std::cerr << "error: diverged at epoch " << e.epoch() << ": " << e.what() << '\n';
    return kDivergence;
  } catch (const seastate::DataError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kData;
  } catch (const seastate::IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kData;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfig;
  } catch (const std::domain_error& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kOk;
}
