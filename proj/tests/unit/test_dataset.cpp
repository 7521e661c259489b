#include "doctest.h"

#include <algorithm>
#include <set>
#include <sstream>

#include "seastate/error.hpp"
#include "seastate/random.hpp"
#include "seastate/seaway/dataset.hpp"
#include "seastate/seaway/lhs.hpp"
#include "seastate/seaway/spectrum.hpp"

using namespace seastate;
using namespace seastate::seaway;

TEST_SUITE("seaway") {

TEST_CASE("latin hypercube puts one point in every stratum") {
  Rng rng(5);
  const std::size_t n = 200;
  const SeaStateRanges r;
  const auto design = lhs_sample(n, rng, r);
  REQUIRE(design.size() == n);
  std::set<std::size_t> hs, tz, beta;
  for (const auto& s : design) {
    hs.insert(static_cast<std::size_t>((s.hs - r.hs_min) / (r.hs_max - r.hs_min) * n));
    tz.insert(static_cast<std::size_t>((s.tz - r.tz_min) / (r.tz_max - r.tz_min) * n));
    beta.insert(static_cast<std::size_t>((s.beta - r.beta_min) / (r.beta_max - r.beta_min) * n));
    CHECK(s.beta < 360.0);
  }
  CHECK(hs.size() == n);
  CHECK(tz.size() == n);
  CHECK(beta.size() == n);
}

TEST_CASE("default design retains the expected share") {
  DatasetParams params;
  std::size_t retained = 0;
  const auto states = design_states(params, &retained);
  CHECK(retained >= 11000);
  CHECK(retained <= 15000);
  CHECK(states.size() == retained);
  for (const auto& s : states) CHECK(steepness_ok(s));
  params.max_records = 100;
  CHECK(design_states(params).size() == 100);
}

TEST_CASE("dataset output is independent of the worker count") {
  DatasetParams params;
  params.n_lhs = 40;
  params.max_records = 12;
  params.signal.duration = 20.0;
  params.seed = 77;
  std::ostringstream serial, parallel, again;
  const auto summary = generate_dataset(params, SurrogateRao{}, serial);
  generate_dataset(params, SurrogateRao{}, again);
  params.workers = 3;
  generate_dataset(params, SurrogateRao{}, parallel);
  CHECK(summary.written == 12);
  CHECK(serial.str() == again.str());
  CHECK(serial.str() == parallel.str());
}

TEST_CASE("record json round trip") {
  SignalParams p;
  p.duration = 10.0;
  const MotionRecord r = synthesize_motions({1.5, 6.0, 200.0}, kDefaultSpeed, SurrogateRao{}, p, 3);
  const MotionRecord back = record_from_json(record_to_json(r));
  CHECK(back == r);
  CHECK_THROWS_AS(record_from_json("{\"hs\": 1}"), DataError);
  CHECK_THROWS_AS(record_from_json("[1, 2"), DataError);
}

TEST_CASE("record seeds are distinct") {
  std::set<std::uint64_t> seeds;
  for (std::size_t i = 0; i < 1000; ++i) seeds.insert(record_seed(1, i));
  CHECK(seeds.size() == 1000);
  CHECK(record_seed(1, 5) != record_seed(2, 5));
}

}
