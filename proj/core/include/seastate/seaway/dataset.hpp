#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "seastate/seaway/lhs.hpp"
#include "seastate/seaway/rao.hpp"
#include "seastate/seaway/synthesis.hpp"

namespace seastate::seaway {

struct DatasetParams {
  std::size_t n_lhs = 20000;     // LHS design size before the steepness filter
  std::size_t max_records = 0;   // 0 = keep every retained state
  double speed = kDefaultSpeed;  // m/s
  SignalParams signal;
  SeaStateRanges ranges;
  std::uint64_t seed = 1;
  std::size_t workers = 1;
};

struct DatasetSummary {
  std::size_t requested = 0;  // LHS design size
  std::size_t retained = 0;   // states passing the steepness filter
  std::size_t written = 0;    // records in the file (retained, capped by max_records)
  std::uint64_t seed = 0;
};

/// States that the generator would synthesize for `params`: the LHS design
/// filtered by steepness_ok, in design order, capped by max_records.
/// `retained` receives the uncapped filtered count.
std::vector<SeaState> design_states(const DatasetParams& params, std::size_t* retained = nullptr);

/// Per-record generation seed, a function of the master seed and the record
/// index only.
std::uint64_t record_seed(std::uint64_t master, std::size_t index);

/// Synthesizes one record per design state and streams them as JSON lines.
/// Output is identical for any worker count. Throws DataError when no state
/// survives the filter.
DatasetSummary generate_dataset(const DatasetParams& params, const RaoSource& rao, std::ostream& out);
DatasetSummary generate_dataset(const DatasetParams& params, const RaoSource& rao,
                                const std::filesystem::path& path);

/// One JSON-lines record: hs, tz, beta, speed_mps, sample_rate_hz, seed,
/// heave, pitch, roll.
std::string record_to_json(const MotionRecord& record);
MotionRecord record_from_json(const std::string& line);

std::vector<MotionRecord> read_dataset(const std::filesystem::path& path);
void write_dataset(const std::vector<MotionRecord>& records, const std::filesystem::path& path);

}  // namespace seastate::seaway
