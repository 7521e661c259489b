#include "seastate/seaway/rao.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "seastate/error.hpp"
#include "seastate/seaway/sea_state.hpp"

namespace seastate::seaway {

namespace {

bool strictly_increasing(const std::vector<double>& axis) {
  return std::adjacent_find(axis.begin(), axis.end(),
                            [](double a, double b) { return !(a < b); }) == axis.end();
}

double wrap_degrees(double deg) {
  double w = std::fmod(deg, 360.0);
  if (w < 0.0) w += 360.0;
  return w >= 360.0 ? 0.0 : w;
}

double band(double r) {
  const double r2 = r * r;
  return r2 / (1.0 + r2 * r2);
}

}  // namespace

RaoTable::RaoTable(std::vector<double> freq_axis, std::vector<double> heading_axis,
                   DofGrids amplitude, DofGrids phase)
    : freq_axis_(std::move(freq_axis)),
      heading_axis_(std::move(heading_axis)),
      amplitude_(std::move(amplitude)),
      phase_(std::move(phase)) {
  if (freq_axis_.size() < 2 || !strictly_increasing(freq_axis_)) {
    throw DataError("RAO frequency axis must have >= 2 strictly increasing values");
  }
  if (heading_axis_.empty() || !strictly_increasing(heading_axis_) ||
      heading_axis_.front() < 0.0 || heading_axis_.back() >= 360.0) {
    throw DataError("RAO heading axis must be strictly increasing within [0, 360)");
  }
  const std::size_t expected = freq_axis_.size() * heading_axis_.size();
  for (std::size_t d = 0; d < kDofCount; ++d) {
    if (amplitude_[d].size() != expected) {
      throw DataError("RAO amplitude grid for " + std::string(kDofNames[d]) +
                      " does not match the axes");
    }
    for (double v : amplitude_[d]) {
      if (!std::isfinite(v) || v < 0.0) {
        throw DataError("RAO amplitudes must be finite and nonnegative");
      }
    }
  }
  const bool any_phase = std::any_of(phase_.begin(), phase_.end(),
                                     [](const auto& g) { return !g.empty(); });
  if (any_phase) {
    for (std::size_t d = 0; d < kDofCount; ++d) {
      if (phase_[d].size() != expected) {
        throw DataError("RAO phase grid for " + std::string(kDofNames[d]) +
                        " does not match the axes");
      }
      for (double v : phase_[d]) {
        if (!std::isfinite(v)) throw DataError("RAO phases must be finite");
      }
    }
  }
}

double RaoTable::phase_at(Dof dof, std::size_t freq_index, std::size_t heading_index) const {
  if (!has_phase()) return 0.0;
  return phase_[static_cast<std::size_t>(dof)][freq_index * heading_axis_.size() + heading_index];
}

double RaoTable::at(Dof dof, std::size_t freq_index, std::size_t heading_index) const {
  return amplitude_[static_cast<std::size_t>(dof)][freq_index * heading_axis_.size() + heading_index];
}

double RaoTable::lookup(Dof dof, double omega_e, double beta_deg) const {
  return interpolate(amplitude_[static_cast<std::size_t>(dof)], omega_e, beta_deg);
}

double RaoTable::phase_lookup(Dof dof, double omega_e, double beta_deg) const {
  if (!has_phase()) return 0.0;
  return interpolate(phase_[static_cast<std::size_t>(dof)], omega_e, beta_deg);
}

double RaoTable::interpolate(const std::vector<double>& grid, double omega_e,
                             double beta_deg) const {
  // Frequency bracket, clamped to the edges.
  std::size_t f0 = 0;
  double tf = 0.0;
  if (omega_e <= freq_axis_.front()) {
    f0 = 0;
  } else if (omega_e >= freq_axis_.back()) {
    f0 = freq_axis_.size() - 2;
    tf = 1.0;
  } else {
    const auto it = std::upper_bound(freq_axis_.begin(), freq_axis_.end(), omega_e);
    f0 = static_cast<std::size_t>(it - freq_axis_.begin()) - 1;
    tf = (omega_e - freq_axis_[f0]) / (freq_axis_[f0 + 1] - freq_axis_[f0]);
  }

  // Heading bracket on the circle.
  const std::size_t nh = heading_axis_.size();
  const double beta = wrap_degrees(beta_deg);
  std::size_t h0 = 0;
  std::size_t h1 = 0;
  double th = 0.0;
  if (nh > 1) {
    const auto it = std::upper_bound(heading_axis_.begin(), heading_axis_.end(), beta);
    if (it == heading_axis_.begin() || it == heading_axis_.end()) {
      // Between the last heading and the first one + 360.
      h0 = nh - 1;
      h1 = 0;
      const double lo = heading_axis_.back();
      const double hi = heading_axis_.front() + 360.0;
      const double b = beta < lo ? beta + 360.0 : beta;
      th = (b - lo) / (hi - lo);
    } else {
      h1 = static_cast<std::size_t>(it - heading_axis_.begin());
      h0 = h1 - 1;
      th = (beta - heading_axis_[h0]) / (heading_axis_[h1] - heading_axis_[h0]);
    }
  }

  const double v00 = grid[f0 * nh + h0];
  const double v01 = grid[f0 * nh + h1];
  const double v10 = grid[(f0 + 1) * nh + h0];
  const double v11 = grid[(f0 + 1) * nh + h1];
  const double lo = v00 + th * (v01 - v00);
  const double hi = v10 + th * (v11 - v10);
  return lo + tf * (hi - lo);
}

double surrogate_rao(Dof dof, double omega_e, double beta_deg) {
  if (!(omega_e >= 0.0)) throw ArgumentError("surrogate_rao requires omega_e >= 0");
  switch (dof) {
    case Dof::heave:
      return band(omega_e / 0.9);
    case Dof::pitch:
      return 1.4 * std::abs(cos_deg(beta_deg)) * band(omega_e / 1.1);
    case Dof::roll: {
      const double r = omega_e / 0.55;
      const double r2 = r * r;
      const double resonance = r2 / std::sqrt((1.0 - r2) * (1.0 - r2) + 0.04 * r2);
      return std::min(6.0, 3.0 * std::abs(sin_deg(beta_deg)) * resonance);
    }
  }
  return 0.0;
}

double surrogate_phase(Dof dof, double beta_deg) {
  switch (dof) {
    case Dof::pitch:
      return cos_deg(beta_deg) > 0.0 ? kPi : 0.0;
    case Dof::roll:
      return sin_deg(beta_deg) < 0.0 ? kPi : 0.0;
    default:
      return 0.0;
  }
}

double transfer_amplitude(const RaoSource& source, Dof dof, double omega_e, double beta_deg) {
  if (const auto* table = std::get_if<RaoTable>(&source)) {
    return table->lookup(dof, omega_e, beta_deg);
  }
  return surrogate_rao(dof, omega_e, beta_deg);
}

double transfer_phase(const RaoSource& source, Dof dof, double omega_e, double beta_deg) {
  if (const auto* table = std::get_if<RaoTable>(&source)) {
    return table->phase_lookup(dof, omega_e, beta_deg);
  }
  return std::get<SurrogateRao>(source).phase ? surrogate_phase(dof, beta_deg) : 0.0;
}

RaoTable make_surrogate_table(std::size_t n_headings, std::size_t n_freq, double omega_max,
                              bool with_phase) {
  if (n_headings < 1 || n_freq < 2 || !(omega_max > 0.0)) {
    throw ArgumentError("surrogate table needs >= 1 heading, >= 2 frequencies, omega_max > 0");
  }
  std::vector<double> freq(n_freq);
  for (std::size_t i = 0; i < n_freq; ++i) {
    freq[i] = omega_max * static_cast<double>(i) / static_cast<double>(n_freq - 1);
  }
  std::vector<double> headings(n_headings);
  for (std::size_t j = 0; j < n_headings; ++j) {
    headings[j] = 360.0 * static_cast<double>(j) / static_cast<double>(n_headings);
  }
  DofGrids amp;
  DofGrids phase;
  for (std::size_t d = 0; d < kDofCount; ++d) {
    amp[d].resize(n_freq * n_headings);
    if (with_phase) phase[d].resize(n_freq * n_headings);
    for (std::size_t i = 0; i < n_freq; ++i) {
      for (std::size_t j = 0; j < n_headings; ++j) {
        amp[d][i * n_headings + j] = surrogate_rao(static_cast<Dof>(d), freq[i], headings[j]);
        if (with_phase) phase[d][i * n_headings + j] = surrogate_phase(static_cast<Dof>(d), headings[j]);
      }
    }
  }
  return RaoTable(std::move(freq), std::move(headings), std::move(amp), std::move(phase));
}

RaoTable parse_rao_json(const std::string& text) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw DataError(std::string("RAO file is not valid JSON: ") + e.what());
  }
  try {
    auto freq = doc.at("freq_axis").get<std::vector<double>>();
    auto headings = doc.at("heading_axis").get<std::vector<double>>();
    auto read_grid = [&](const std::string& key) {
      const auto rows = doc.at(key).get<std::vector<std::vector<double>>>();
      if (rows.size() != freq.size()) {
        throw DataError("RAO " + key + " row count does not match freq_axis");
      }
      std::vector<double> grid;
      for (const auto& row : rows) {
        if (row.size() != headings.size()) {
          throw DataError("RAO " + key + " column count does not match heading_axis");
        }
        grid.insert(grid.end(), row.begin(), row.end());
      }
      return grid;
    };
    DofGrids amp;
    DofGrids phase;
    for (std::size_t d = 0; d < kDofCount; ++d) {
      const std::string name(kDofNames[d]);
      amp[d] = read_grid(name);
      if (doc.contains(name + "_phase")) phase[d] = read_grid(name + "_phase");
    }
    return RaoTable(std::move(freq), std::move(headings), std::move(amp), std::move(phase));
  } catch (const json::exception& e) {
    throw DataError(std::string("malformed RAO file: ") + e.what());
  }
}

std::string rao_to_json(const RaoTable& table) {
  nlohmann::json doc;
  doc["freq_axis"] = table.freq_axis();
  doc["heading_axis"] = table.heading_axis();
  const std::size_t nf = table.freq_axis().size();
  const std::size_t nh = table.heading_axis().size();
  for (std::size_t d = 0; d < kDofCount; ++d) {
    std::vector<std::vector<double>> rows(nf, std::vector<double>(nh));
    std::vector<std::vector<double>> phases(nf, std::vector<double>(nh));
    for (std::size_t i = 0; i < nf; ++i) {
      for (std::size_t j = 0; j < nh; ++j) {
        rows[i][j] = table.at(static_cast<Dof>(d), i, j);
        phases[i][j] = table.phase_at(static_cast<Dof>(d), i, j);
      }
    }
    doc[std::string(kDofNames[d])] = rows;
    if (table.has_phase()) doc[std::string(kDofNames[d]) + "_phase"] = phases;
  }
  return doc.dump();
}

RaoTable load_rao_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open RAO file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_rao_json(buf.str());
}

void save_rao_file(const RaoTable& table, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write RAO file " + path.string());
  out << rao_to_json(table) << '\n';
  if (!out) throw IoError("failed writing RAO file " + path.string());
}

}  // namespace seastate::seaway
