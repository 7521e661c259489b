#include "seastate/seaway/dataset.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <thread>

#include "json.hpp"
#include "seastate/error.hpp"
#include "seastate/seaway/spectrum.hpp"

namespace seastate::seaway {

namespace {

using ordered_json = nlohmann::ordered_json;

// Records synthesized per batch before they are written out.
constexpr std::size_t kChunk = 64;

void synthesize_chunk(const std::vector<SeaState>& states, std::size_t begin, std::size_t end,
                      const DatasetParams& params, const RaoSource& rao,
                      std::vector<MotionRecord>& out) {
  const std::size_t workers = std::max<std::size_t>(1, std::min(params.workers, end - begin));
  auto run = [&](std::size_t w) {
    for (std::size_t i = begin + w; i < end; i += workers) {
      out[i - begin] = synthesize_motions(states[i], params.speed, rao, params.signal,
                                          record_seed(params.seed, i));
    }
  };
  if (workers == 1) {
    run(0);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(run, w);
  for (auto& t : pool) t.join();
}

}  // namespace

std::uint64_t record_seed(std::uint64_t master, std::size_t index) {
  return derive_seed(master, static_cast<std::uint64_t>(index) + 1);
}

std::vector<SeaState> design_states(const DatasetParams& params, std::size_t* retained) {
  Rng rng(derive_seed(params.seed, 0));
  std::vector<SeaState> states;
  for (const auto& s : lhs_sample(params.n_lhs, rng, params.ranges)) {
    if (steepness_ok(s)) states.push_back(s);
  }
  if (retained) *retained = states.size();
  if (params.max_records > 0 && states.size() > params.max_records) {
    states.resize(params.max_records);
  }
  return states;
}

DatasetSummary generate_dataset(const DatasetParams& params, const RaoSource& rao,
                                std::ostream& out) {
  DatasetSummary summary;
  summary.requested = params.n_lhs;
  summary.seed = params.seed;
  const auto states = design_states(params, &summary.retained);
  if (states.empty()) throw DataError("no sea state survived the steepness filter");

  std::vector<MotionRecord> chunk;
  for (std::size_t begin = 0; begin < states.size(); begin += kChunk) {
    const std::size_t end = std::min(states.size(), begin + kChunk);
    chunk.assign(end - begin, MotionRecord{});
    synthesize_chunk(states, begin, end, params, rao, chunk);
    for (const auto& record : chunk) out << record_to_json(record) << '\n';
    if (!out) throw IoError("failed writing dataset");
  }
  summary.written = states.size();
  return summary;
}

DatasetSummary generate_dataset(const DatasetParams& params, const RaoSource& rao,
                                const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write dataset " + path.string());
  return generate_dataset(params, rao, out);
}

std::string record_to_json(const MotionRecord& record) {
  ordered_json doc;
  doc["hs"] = record.label.hs;
  doc["tz"] = record.label.tz;
  doc["beta"] = record.label.beta;
  doc["speed_mps"] = record.speed;
  doc["sample_rate_hz"] = record.sample_rate;
  doc["seed"] = record.seed;
  for (std::size_t d = 0; d < kDofCount; ++d) {
    doc[std::string(kDofNames[d])] = record.channels[d];
  }
  return doc.dump();
}

MotionRecord record_from_json(const std::string& line) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(line);
  } catch (const ordered_json::exception& e) {
    throw DataError(std::string("dataset line is not valid JSON: ") + e.what());
  }
  MotionRecord record;
  try {
    record.label = {doc.at("hs").get<double>(), doc.at("tz").get<double>(),
                    doc.at("beta").get<double>()};
    record.speed = doc.at("speed_mps").get<double>();
    record.sample_rate = doc.at("sample_rate_hz").get<double>();
    record.seed = doc.at("seed").get<std::uint64_t>();
    for (std::size_t d = 0; d < kDofCount; ++d) {
      record.channels[d] = doc.at(std::string(kDofNames[d])).get<std::vector<double>>();
    }
  } catch (const ordered_json::exception& e) {
    throw DataError(std::string("malformed dataset record: ") + e.what());
  }
  const std::size_t n = record.channels[0].size();
  if (n == 0 || record.channels[1].size() != n || record.channels[2].size() != n) {
    throw DataError("dataset record channels must be non-empty and equally long");
  }
  for (const auto& ch : record.channels) {
    for (double v : ch) {
      if (!std::isfinite(v)) throw DataError("dataset record contains non-finite samples");
    }
  }
  return record;
}

std::vector<MotionRecord> read_dataset(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open dataset " + path.string());
  std::vector<MotionRecord> records;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    records.push_back(record_from_json(line));
  }
  return records;
}

void write_dataset(const std::vector<MotionRecord>& records, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write dataset " + path.string());
  for (const auto& r : records) out << record_to_json(r) << '\n';
  if (!out) throw IoError("failed writing dataset " + path.string());
}

}  // namespace seastate::seaway
