#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "seastate/nets/network.hpp"
#include "seastate/training/samples.hpp"

namespace seastate::uncertainty {

inline constexpr std::size_t kMaxSigma = 5;

/// Scaled-space statistics for one input.
struct SampleUncertainty {
  std::array<double, 3> deterministic{};  // dropout off
  std::array<double, 3> mu{};             // mean of the stochastic passes
  std::array<double, 3> sigma{};          // population standard deviation
};

/// Fraction of samples whose truth lies within mu +- n sigma, for
/// n = 1..kMaxSigma: jointly for all three targets and per target.
struct CoverageTable {
  std::size_t count = 0;
  std::array<double, kMaxSigma> joint{};
  std::array<std::array<double, kMaxSigma>, 3> per_parameter{};
};

struct McConfig {
  std::size_t passes = 256;
  std::uint64_t seed = 0;
  std::size_t workers = 1;
  std::size_t batch_size = 32;

  void validate() const;
};

/// Runs `passes` forward passes with dropout active and batch norm on its
/// running statistics, plus one deterministic pass, for every sample of
/// `set`. Sample i draws its dropout masks from derive_seed(seed, i), so the
/// result does not depend on the worker count.
template <typename T>
std::vector<SampleUncertainty> mc_dropout_predict(nets::Network<T>& model,
                                                  const training::SampleSet& set,
                                                  const McConfig& cfg);

/// Throws ArgumentError when lengths differ.
CoverageTable coverage_stats(std::span<const SampleUncertainty> samples,
                             std::span<const std::array<double, 3>> truths);

struct UncertaintyReport {
  std::size_t n_passes = 0;
  std::uint64_t seed = 0;
  double dropout_p = 0.0;
  std::vector<SampleUncertainty> samples;
  std::vector<std::array<double, 3>> truths;
  CoverageTable coverage;

  /// True when the model has no active dropout and every sigma is 0.
  bool degenerate() const { return dropout_p == 0.0; }
  std::string to_json() const;
  /// Header sample,parameter,truth,deterministic,mu,sigma.
  void write_csv(std::ostream& out) const;
};

template <typename T>
UncertaintyReport run_uncertainty(nets::Network<T>& model, const training::SampleSet& set,
                                  const McConfig& cfg);

}  // namespace seastate::uncertainty
