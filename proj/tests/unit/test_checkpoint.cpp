#include "doctest.h"

#include <sstream>

#include "seastate/error.hpp"
#include "seastate/nets/at_nn.hpp"
#include "seastate/nets/checkpoint.hpp"
#include "seastate/nets/cnn_reg.hpp"
#include "support/gradcheck.hpp"

using namespace seastate;
using namespace seastate::nets;
using seastate::testing::random_tensor;

namespace {

AtNnConfig tiny_at_nn() {
  AtNnConfig c;
  c.signal_length = 12;
  c.token_size = 4;
  c.n_embeddings = 4;
  c.n_blocks = 1;
  c.head_widths = {5, 3};
  return c;
}

std::string serialized(const Network<float>& model) {
  std::ostringstream out(std::ios::binary);
  write_checkpoint(model, out);
  return out.str();
}

std::vector<float> infer(Network<float>& model, const ad::Tensor<float>& x) {
  ad::Tape<float> tape(false);
  Rng rng(0);
  const auto y = model.forward(tape, x, RunMode::infer, rng);
  return {y.values().begin(), y.values().end()};
}

}  // namespace

TEST_SUITE("nets") {

TEST_CASE("checkpoint round trip is bit identical") {
  Rng rng(1);
  AtNn<float> model(tiny_at_nn(), rng);
  model.input_scale()[1] = 2.5f;
  // Move the running statistics away from their initial values.
  auto x = random_tensor<float>({4, 3, 12}, rng);
  {
    ad::Tape<float> tape(false);
    Rng drop(2);
    model.forward(tape, x, RunMode::train, drop);
  }
  const std::string bytes = serialized(model);
  std::istringstream in(bytes, std::ios::binary);
  auto loaded = read_checkpoint<float>(in, ModelKind::at_nn);
  REQUIRE(loaded);
  CHECK(loaded->kind() == ModelKind::at_nn);
  CHECK(loaded->config_json() == model.config_json());
  CHECK(loaded->input_scale()[1] == 2.5f);
  CHECK(infer(*loaded, x) == infer(model, x));
  CHECK(serialized(*loaded) == bytes);
}

TEST_CASE("cnn checkpoint round trip") {
  Rng rng(2);
  CnnRegConfig cfg;
  cfg.signal_length = 60;
  cfg.kappa = 2;
  CnnReg<float> model(cfg, rng);
  const std::string bytes = serialized(model);
  std::istringstream in(bytes, std::ios::binary);
  auto loaded = read_checkpoint<float>(in);
  auto x = random_tensor<float>({2, 3, 60}, rng);
  CHECK(infer(*loaded, x) == infer(model, x));
}

TEST_CASE("damaged checkpoints are rejected") {
  Rng rng(3);
  AtNn<float> model(tiny_at_nn(), rng);
  const std::string bytes = serialized(model);
  const auto fails = [](const std::string& data, std::optional<ModelKind> kind = std::nullopt) {
    std::istringstream in(data, std::ios::binary);
    CHECK_THROWS_AS(read_checkpoint<float>(in, kind), DataError);
  };
  fails(bytes, ModelKind::cnn_reg);
  fails(bytes.substr(0, bytes.size() - 3));
  fails(bytes + "x");
  fails(bytes.substr(0, bytes.find('\n')));
  fails("");
  fails("garbage\n");
  std::string version = bytes;
  const auto pos = version.find("\"format_version\":1");
  REQUIRE(pos != std::string::npos);
  version.replace(pos, 18, "\"format_version\":7");
  fails(version);
  std::string renamed = bytes;
  const auto name = renamed.find("dense0.weight");
  REQUIRE(name != std::string::npos);
  renamed[name] = 'D';
  fails(renamed);
}

TEST_CASE("build network from config") {
  Rng rng(4);
  auto net = build_network<float>(ModelKind::cnn_reg, "{\"signal_length\": 60, \"kappa\": 3}", rng);
  CHECK(net->kind() == ModelKind::cnn_reg);
  CHECK(net->signal_length() == 60);
  CHECK_THROWS_AS(build_network<float>(ModelKind::at_nn, "{\"token_size\": \"x\"}", rng),
                  ArgumentError);
}

}
