#include "doctest.h"

#include <cmath>

#include "seastate/error.hpp"
#include "seastate/seaway/rao.hpp"
#include "seastate/seaway/sea_state.hpp"

using namespace seastate;
using namespace seastate::seaway;

TEST_SUITE("seaway") {

TEST_CASE("surrogate amplitudes match reference values") {
  CHECK(surrogate_rao(Dof::heave, 0.9, 0.0) == doctest::Approx(0.5));
  CHECK(surrogate_rao(Dof::pitch, 0.8, 30.0) == doctest::Approx(0.5010994832507537).epsilon(1e-12));
  CHECK(surrogate_rao(Dof::pitch, 0.8, 90.0) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(surrogate_rao(Dof::roll, 0.3, 90.0) == doctest::Approx(1.255538973711711).epsilon(1e-12));
  CHECK(surrogate_rao(Dof::roll, 0.55, 90.0) == 6.0);
  CHECK(surrogate_rao(Dof::roll, 1.0, 45.0) == doctest::Approx(3.0041900117810365).epsilon(1e-12));
  CHECK(surrogate_rao(Dof::roll, 0.5, 0.0) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(surrogate_rao(Dof::heave, 0.0, 0.0) == 0.0);
}

TEST_CASE("surrogate phases") {
  CHECK(surrogate_phase(Dof::heave, 30.0) == 0.0);
  CHECK(surrogate_phase(Dof::pitch, 30.0) == doctest::Approx(kPi));
  CHECK(surrogate_phase(Dof::pitch, 150.0) == 0.0);
  CHECK(surrogate_phase(Dof::roll, 90.0) == 0.0);
  CHECK(surrogate_phase(Dof::roll, 270.0) == doctest::Approx(kPi));
  CHECK(transfer_phase(SurrogateRao{false}, Dof::roll, 0.5, 270.0) == 0.0);
  CHECK(transfer_phase(SurrogateRao{true}, Dof::roll, 0.5, 270.0) == doctest::Approx(kPi));
}

TEST_CASE("table lookup reproduces grid nodes and interpolates") {
  const RaoTable table = make_surrogate_table(36, 201, 20.0);
  REQUIRE(table.heading_axis().size() == 36);
  REQUIRE(table.freq_axis().size() == 201);
  CHECK(table.has_phase());
  const double w = table.freq_axis()[8];
  const double b = table.heading_axis()[4];
  CHECK(table.lookup(Dof::pitch, w, b) == doctest::Approx(surrogate_rao(Dof::pitch, w, b)));
  // Heave does not depend on heading, so interpolation in beta is exact.
  CHECK(table.lookup(Dof::heave, w, 17.0) == doctest::Approx(surrogate_rao(Dof::heave, w, 17.0)));
  // Wrap-around between the last heading and 360.
  const double last = table.heading_axis().back();
  const double mid = 0.5 * (last + 360.0);
  const double expect = 0.5 * (table.lookup(Dof::roll, w, last) + table.lookup(Dof::roll, w, 0.0));
  CHECK(table.lookup(Dof::roll, w, mid) == doctest::Approx(expect));
  // Frequency clamps at the axis ends.
  CHECK(table.lookup(Dof::heave, 50.0, 0.0) == doctest::Approx(table.at(Dof::heave, 200, 0)));
}

TEST_CASE("rao json round trip") {
  const RaoTable table = make_surrogate_table(12, 21, 4.0);
  const RaoTable back = parse_rao_json(rao_to_json(table));
  CHECK(back == table);
  const RaoTable plain = make_surrogate_table(12, 21, 4.0, false);
  CHECK_FALSE(plain.has_phase());
  CHECK(parse_rao_json(rao_to_json(plain)) == plain);
}

TEST_CASE("invalid tables are rejected") {
  DofGrids amp{std::vector<double>(4, 1.0), std::vector<double>(4, 1.0),
               std::vector<double>(4, 1.0)};
  CHECK_NOTHROW(RaoTable({0.0, 1.0}, {0.0, 180.0}, amp));
  CHECK_THROWS_AS(RaoTable({1.0, 0.0}, {0.0, 180.0}, amp), DataError);
  CHECK_THROWS_AS(RaoTable({0.0, 1.0}, {0.0, 360.0}, amp), DataError);
  DofGrids negative = amp;
  negative[1][2] = -1.0;
  CHECK_THROWS_AS(RaoTable({0.0, 1.0}, {0.0, 180.0}, negative), DataError);
  DofGrids short_grid = amp;
  short_grid[2].pop_back();
  CHECK_THROWS_AS(RaoTable({0.0, 1.0}, {0.0, 180.0}, short_grid), DataError);
  CHECK_THROWS_AS(parse_rao_json("{\"freq_axis\": [0, 1]}"), DataError);
  CHECK_THROWS_AS(parse_rao_json("not json"), DataError);
}

}
