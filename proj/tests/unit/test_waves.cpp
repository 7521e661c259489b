#include "doctest.h"

#include <cmath>

#include "seastate/error.hpp"
#include "seastate/seaway/spectrum.hpp"
#include "seastate/seaway/wave_components.hpp"

using namespace seastate;
using namespace seastate::seaway;

TEST_SUITE("seaway") {

TEST_CASE("encounter frequency") {
  CHECK(encounter_frequency(0.6, kDefaultSpeed, 90.0) == 0.6);
  CHECK(encounter_frequency(0.6, kDefaultSpeed, 180.0) == doctest::Approx(0.9056697247706422).epsilon(1e-12));
  CHECK(encounter_frequency(0.6, kDefaultSpeed, 0.0) == doctest::Approx(0.2943302752293578).epsilon(1e-12));
  CHECK(encounter_frequency(1.0, kDefaultSpeed, 60.0) == doctest::Approx(0.5754587155963302).epsilon(1e-12));
  CHECK(encounter_frequency(0.6, 0.0, 0.0) == 0.6);
  CHECK(encounter_frequency(3.0, kDefaultSpeed, 0.0) < 0.0);
}

TEST_CASE("degree trigonometry is exact on the axes") {
  CHECK(cos_deg(90.0) == 0.0);
  CHECK(cos_deg(270.0) == 0.0);
  CHECK(cos_deg(-90.0) == 0.0);
  CHECK(cos_deg(180.0) == -1.0);
  CHECK(cos_deg(720.0) == 1.0);
  CHECK(sin_deg(90.0) == 1.0);
  CHECK(sin_deg(180.0) == 0.0);
  CHECK(cos_deg(60.0) == doctest::Approx(0.5));
  CHECK(sin_deg(210.0) == doctest::Approx(-0.5));
  for (double w : {0.1, 1.3, 3.7}) CHECK(encounter_frequency(w, kDefaultSpeed, 90.0) == w);
}

TEST_CASE("frequency grid partitions the band") {
  Rng rng(7);
  const auto grid = build_frequency_grid(500, 0.25, 4.0, rng);
  REQUIRE(grid.size() == 500);
  CHECK(grid.boundaries.front() == 0.25);
  CHECK(grid.boundaries.back() == 4.0);
  double total = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CHECK(grid.boundaries[i] < grid.boundaries[i + 1]);
    CHECK(grid.centers[i] >= grid.boundaries[i]);
    CHECK(grid.centers[i] < grid.boundaries[i + 1]);
    total += grid.widths[i];
  }
  CHECK(total == doctest::Approx(3.75));
  CHECK_THROWS_AS(build_frequency_grid(1, 0.25, 4.0, rng), ArgumentError);
  CHECK_THROWS_AS(build_frequency_grid(10, 4.0, 0.25, rng), ArgumentError);
}

TEST_CASE("component amplitudes carry the spectral energy") {
  Rng rng(3);
  const auto grid = build_frequency_grid(2000, 0.1, 6.0, rng);
  const auto amp = component_amplitudes(grid, 3.0, 6.0);
  double energy = 0.0;
  for (double a : amp) energy += 0.5 * a * a;
  CHECK(energy == doctest::Approx(spectrum_m0(3.0, 6.0)).epsilon(0.02));
  for (double a : component_amplitudes(grid, 0.0, 6.0)) CHECK(a == 0.0);
}

TEST_CASE("wave realization is reproducible") {
  Rng a(11), b(11);
  const auto wa = realize_waves({2.0, 6.0, 120.0}, kDefaultSpeed, 100, 0.25, 4.0, a);
  const auto wb = realize_waves({2.0, 6.0, 120.0}, kDefaultSpeed, 100, 0.25, 4.0, b);
  CHECK(wa.phase == wb.phase);
  CHECK(wa.omega == wb.omega);
  for (std::size_t i = 0; i < wa.size(); ++i) {
    CHECK(wa.phase[i] >= 0.0);
    CHECK(wa.phase[i] < 2.0 * kPi);
    CHECK(wa.omega_e[i] == encounter_frequency(wa.omega[i], kDefaultSpeed, 120.0));
    CHECK(wa.wave_number[i] == doctest::Approx(wa.omega[i] * wa.omega[i] / kGravity));
  }
}

}
