#include "seastate/nets/config_io.hpp"

#include "json.hpp"

#include <set>

#include "seastate/error.hpp"

namespace seastate::nets {

using nlohmann::json;

namespace {

json parse_object(std::string_view text, const std::set<std::string>& allowed,
                  const char* what) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ArgumentError(std::string(what) + " config is not valid JSON: " + e.what());
  }
  if (!j.is_object()) throw ArgumentError(std::string(what) + " config must be an object");
  for (const auto& [key, value] : j.items()) {
    if (!allowed.count(key)) throw ArgumentError(std::string("unknown ") + what + " key: " + key);
  }
  return j;
}

template <typename V>
void read(const json& j, const char* key, V& out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<V>();
  } catch (const json::exception& e) {
    throw ArgumentError(std::string("bad value for ") + key + ": " + e.what());
  }
}

}  // namespace

std::string to_json(const AtNnConfig& cfg) {
  json j = json::object();
  j["signal_length"] = cfg.signal_length;
  j["token_size"] = cfg.token_size;
  j["n_embeddings"] = cfg.n_embeddings;
  j["n_blocks"] = cfg.n_blocks;
  j["n_heads"] = cfg.mha.n_heads;
  j["d_k"] = cfg.mha.d_k;
  j["d_k_from_tokens"] = cfg.d_k_from_tokens;
  j["head_widths"] = cfg.head_widths;
  j["dropout_p"] = cfg.dropout_p;
  return j.dump();
}

std::string to_json(const CnnRegConfig& cfg) {
  json j = json::object();
  j["signal_length"] = cfg.signal_length;
  j["kappa"] = cfg.kappa;
  j["pool_window"] = cfg.pool_window;
  j["dropout_p"] = cfg.dropout_p;
  return j.dump();
}

AtNnConfig at_nn_config_from_json(std::string_view text) {
  const json j = parse_object(text,
                              {"signal_length", "token_size", "n_embeddings", "n_blocks", "n_heads",
                               "d_k", "d_k_from_tokens", "head_widths", "dropout_p"},
                              "at_nn");
  AtNnConfig cfg;
  read(j, "signal_length", cfg.signal_length);
  read(j, "token_size", cfg.token_size);
  read(j, "n_embeddings", cfg.n_embeddings);
  read(j, "n_blocks", cfg.n_blocks);
  read(j, "n_heads", cfg.mha.n_heads);
  read(j, "d_k", cfg.mha.d_k);
  read(j, "d_k_from_tokens", cfg.d_k_from_tokens);
  read(j, "head_widths", cfg.head_widths);
  read(j, "dropout_p", cfg.dropout_p);
  cfg.validate();
  return cfg;
}

CnnRegConfig cnn_reg_config_from_json(std::string_view text) {
  const json j =
      parse_object(text, {"signal_length", "kappa", "pool_window", "dropout_p"}, "cnn_reg");
  CnnRegConfig cfg;
  read(j, "signal_length", cfg.signal_length);
  read(j, "kappa", cfg.kappa);
  read(j, "pool_window", cfg.pool_window);
  read(j, "dropout_p", cfg.dropout_p);
  cfg.validate();
  return cfg;
}

}  // namespace seastate::nets
