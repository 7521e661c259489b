#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace seastate::seaway {

enum class Dof : std::size_t { heave = 0, pitch = 1, roll = 2 };

inline constexpr std::size_t kDofCount = 3;
inline constexpr std::array<std::string_view, kDofCount> kDofNames = {"heave", "pitch", "roll"};

using DofGrids = std::array<std::vector<double>, kDofCount>;

/// Response amplitude operators on an (encounter frequency x heading) grid.
/// Heave in m/m, pitch and roll in deg/m. Optional response phases (rad)
/// live on the same grid; without them every phase is 0.
class RaoTable {
 public:
  /// Grids are row-major |freq_axis| x |heading_axis|. Validates the
  /// invariants and throws DataError on violation.
  RaoTable(std::vector<double> freq_axis, std::vector<double> heading_axis, DofGrids amplitude,
           DofGrids phase = {});

  const std::vector<double>& freq_axis() const { return freq_axis_; }
  const std::vector<double>& heading_axis() const { return heading_axis_; }
  bool has_phase() const { return !phase_[0].empty(); }
  double at(Dof dof, std::size_t freq_index, std::size_t heading_index) const;
  double phase_at(Dof dof, std::size_t freq_index, std::size_t heading_index) const;

  /// Bilinear interpolation; omega_e is clamped to the axis range and the
  /// heading interpolates across the 360 -> 0 seam.
  double lookup(Dof dof, double omega_e, double beta_deg) const;
  double phase_lookup(Dof dof, double omega_e, double beta_deg) const;

  friend bool operator==(const RaoTable&, const RaoTable&) = default;

 private:
  double interpolate(const std::vector<double>& grid, double omega_e, double beta_deg) const;

  std::vector<double> freq_axis_;
  std::vector<double> heading_axis_;
  DofGrids amplitude_;
  DofGrids phase_;
};

inline double rao_lookup(const RaoTable& table, Dof dof, double omega_e, double beta_deg) {
  return table.lookup(dof, omega_e, beta_deg);
}

/// Closed-form stand-in for strip-theory transfer functions. With
/// r = omega_e / omega_d and B(r) = r^2 / (1 + r^4):
///   heave = B(r), omega_d = 0.9
///   pitch = 1.4 |cos beta| B(r), omega_d = 1.1
///   roll  = min(6, 3 |sin beta| r^2 / sqrt((1 - r^2)^2 + (0.2 r)^2)), omega_d = 0.55
double surrogate_rao(Dof dof, double omega_e, double beta_deg);

/// Response phase of the surrogate, 0 or pi: pitch is inverted in following
/// seas (cos beta > 0) and roll when waves come from port (sin beta < 0).
/// Heave is always in phase.
double surrogate_phase(Dof dof, double beta_deg);

struct SurrogateRao {
  /// false reproduces amplitude-only responses (every phase 0).
  bool phase = true;
};

/// Where transfer functions come from during synthesis.
using RaoSource = std::variant<SurrogateRao, RaoTable>;

double transfer_amplitude(const RaoSource& source, Dof dof, double omega_e, double beta_deg);
double transfer_phase(const RaoSource& source, Dof dof, double omega_e, double beta_deg);

/// Samples the surrogate on a table grid: `n_headings` evenly spaced headings
/// over [0, 360) and `n_freq` evenly spaced frequencies over [0, omega_max].
RaoTable make_surrogate_table(std::size_t n_headings = 36, std::size_t n_freq = 201,
                              double omega_max = 20.0, bool with_phase = true);

/// RAO file: JSON object with `freq_axis`, `heading_axis` and one 2-D array
/// per DOF (`heave`, `pitch`, `roll`), rows indexed by frequency. Optional
/// `heave_phase`, `pitch_phase`, `roll_phase` arrays hold phases in rad.
RaoTable load_rao_file(const std::filesystem::path& path);
void save_rao_file(const RaoTable& table, const std::filesystem::path& path);
RaoTable parse_rao_json(const std::string& text);
std::string rao_to_json(const RaoTable& table);

}  // namespace seastate::seaway
