#include "seastate/seaway/lhs.hpp"

#include "seastate/error.hpp"

namespace seastate::seaway {

namespace {

std::vector<double> stratified_axis(std::size_t n, double lo, double hi, Rng& rng) {
  const auto perm = random_permutation(rng, n);
  std::vector<double> values(n);
  const double width = (hi - lo) / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    values[i] = lo + width * (static_cast<double>(perm[i]) + uniform01(rng));
    if (values[i] >= hi) values[i] = lo + width * static_cast<double>(perm[i]);
  }
  return values;
}

}  // namespace

std::vector<SeaState> lhs_sample(std::size_t n, Rng& rng, const SeaStateRanges& ranges) {
  if (n < 1) throw ArgumentError("LHS needs at least one sample");
  const auto hs = stratified_axis(n, ranges.hs_min, ranges.hs_max, rng);
  const auto tz = stratified_axis(n, ranges.tz_min, ranges.tz_max, rng);
  const auto beta = stratified_axis(n, ranges.beta_min, ranges.beta_max, rng);
  std::vector<SeaState> states(n);
  for (std::size_t i = 0; i < n; ++i) states[i] = {hs[i], tz[i], beta[i]};
  return states;
}

}  // namespace seastate::seaway
