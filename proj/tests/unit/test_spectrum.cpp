#include "doctest.h"

#include <cmath>

#include "seastate/error.hpp"
#include "seastate/seaway/spectrum.hpp"

using namespace seastate;
using namespace seastate::seaway;

TEST_SUITE("seaway") {

TEST_CASE("bretschneider density matches reference values") {
  CHECK(bretschneider_density(1.1158, 3.0, 4.0) == doctest::Approx(0.7221734266429148).epsilon(1e-12));
  CHECK(bretschneider_density(0.8, 6.0, 9.0) == doctest::Approx(1.7264270006382423).epsilon(1e-12));
  CHECK(bretschneider_density(2.0, 1.0, 4.0) == doctest::Approx(0.01341038956635016).epsilon(1e-12));
  CHECK(bretschneider_density(1.0, 0.0, 4.0) == 0.0);
}

TEST_CASE("bretschneider density rejects bad arguments") {
  CHECK_THROWS_AS(bretschneider_density(0.0, 3.0, 4.0), DomainError);
  CHECK_THROWS_AS(bretschneider_density(-1.0, 3.0, 4.0), DomainError);
  CHECK_THROWS_AS(bretschneider_density(1.0, -1.0, 4.0), ArgumentError);
  CHECK_THROWS_AS(bretschneider_density(1.0, 3.0, 0.0), ArgumentError);
}

TEST_CASE("zeroth moment and peak") {
  CHECK(spectrum_m0(3.0, 6.0) == doctest::Approx(0.5625));
  CHECK(spectrum_m0(0.0, 6.0) == 0.0);
  CHECK(peak_frequency(4.0) == doctest::Approx(1.115791181090294).epsilon(1e-12));
  // The density is maximal at the peak.
  const double wp = peak_frequency(4.0);
  CHECK(bretschneider_density(wp, 3.0, 4.0) > bretschneider_density(wp * 1.01, 3.0, 4.0));
  CHECK(bretschneider_density(wp, 3.0, 4.0) > bretschneider_density(wp * 0.99, 3.0, 4.0));
}

TEST_CASE("steepness limit and filter") {
  CHECK(steepness_limit(4.0) == doctest::Approx(0.1));
  CHECK(steepness_limit(6.0) == doctest::Approx(0.1));
  CHECK(steepness_limit(9.0) == doctest::Approx(0.08333333333333334));
  CHECK(steepness_limit(12.0) == doctest::Approx(1.0 / 15.0));
  CHECK(steepness_limit(13.0) == doctest::Approx(1.0 / 15.0));
  CHECK(steepness({3.0, 4.0, 0.0}) == doctest::Approx(0.1200914622931878));
  CHECK_FALSE(steepness_ok({3.0, 4.0, 0.0}));
  CHECK(steepness({0.5, 9.6, 0.0}) == doctest::Approx(0.003474868700613073));
  CHECK(steepness_ok({0.5, 9.6, 0.0}));
}

TEST_CASE("sea state validity") {
  CHECK(SeaState{1.0, 5.0, 0.0}.valid());
  CHECK_FALSE(SeaState{0.0, 5.0, 0.0}.valid());
  CHECK_FALSE(SeaState{1.0, 5.0, 360.0}.valid());
  CHECK_THROWS_AS(require_valid({1.0, -5.0, 10.0}), ArgumentError);
}

}
