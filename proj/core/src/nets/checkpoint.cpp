#include "seastate/nets/checkpoint.hpp"

#include "json.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <iterator>
#include <ostream>

#include "seastate/error.hpp"
#include "seastate/nets/at_nn.hpp"
#include "seastate/nets/cnn_reg.hpp"
#include "seastate/nets/config_io.hpp"

namespace seastate::nets {

using nlohmann::json;

namespace {

std::uint32_t to_little(std::uint32_t v) {
  if constexpr (std::endian::native == std::endian::big) return __builtin_bswap32(v);
  return v;
}

}  // namespace

template <typename T>
std::unique_ptr<Network<T>> build_network(ModelKind kind, const std::string& config_json,
                                          Rng& rng) {
  if (kind == ModelKind::at_nn) {
    return std::make_unique<AtNn<T>>(at_nn_config_from_json(config_json), rng);
  }
  return std::make_unique<CnnReg<T>>(cnn_reg_config_from_json(config_json), rng);
}

template <typename T>
void write_checkpoint(const Network<T>& model, std::ostream& out) {
  json manifest = json::object();
  manifest["format_version"] = kCheckpointVersion;
  manifest["kind"] = std::string(kind_name(model.kind()));
  manifest["config"] = json::parse(model.config_json());
  json params = json::array();
  std::size_t offset = 0;
  for (const auto& e : model.parameters().entries()) {
    params.push_back({{"name", e.name},
                      {"shape", e.tensor.shape()},
                      {"offset", offset},
                      {"trainable", e.trainable}});
    offset += e.tensor.size();
  }
  manifest["parameters"] = params;
  manifest["blob_values"] = offset;
  out << manifest.dump() << '\n';

  std::vector<std::uint32_t> blob;
  blob.reserve(offset);
  for (const auto& e : model.parameters().entries()) {
    for (T v : e.tensor.values()) blob.push_back(to_little(std::bit_cast<std::uint32_t>(static_cast<float>(v))));
  }
  out.write(reinterpret_cast<const char*>(blob.data()),
            static_cast<std::streamsize>(blob.size() * sizeof(std::uint32_t)));
  if (!out) throw IoError("failed writing checkpoint");
}

template <typename T>
void save_checkpoint(const Network<T>& model, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  write_checkpoint(model, out);
}

template <typename T>
std::unique_ptr<Network<T>> read_checkpoint(std::istream& in, std::optional<ModelKind> expected) {
  std::string line;
  if (!std::getline(in, line)) throw DataError("checkpoint is empty");
  json manifest;
  try {
    manifest = json::parse(line);
  } catch (const json::exception& e) {
    throw DataError(std::string("checkpoint manifest is not valid JSON: ") + e.what());
  }
  std::unique_ptr<Network<T>> model;
  std::size_t total = 0;
  try {
    if (manifest.at("format_version").get<int>() != kCheckpointVersion) {
      throw DataError("unsupported checkpoint format_version " +
                      manifest.at("format_version").dump());
    }
    const ModelKind kind = parse_kind(manifest.at("kind").get<std::string>());
    if (expected && *expected != kind) {
      throw DataError("checkpoint holds a " + std::string(kind_name(kind)) + " model, expected " +
                      std::string(kind_name(*expected)));
    }
    Rng rng(0);
    model = build_network<T>(kind, manifest.at("config").dump(), rng);
    const auto& params = manifest.at("parameters");
    const auto& entries = model->parameters().entries();
    if (!params.is_array() || params.size() != entries.size()) {
      throw DataError("checkpoint parameter list does not match the architecture");
    }
    for (std::size_t i = 0; i < entries.size(); ++i) {
      const auto& p = params[i];
      if (p.at("name").get<std::string>() != entries[i].name ||
          p.at("shape").get<ad::Shape>() != entries[i].tensor.shape()) {
        throw DataError("checkpoint parameter " + std::to_string(i) + " (" +
                        p.at("name").get<std::string>() + ") does not match the architecture");
      }
      if (p.at("offset").get<std::size_t>() != total) {
        throw DataError("checkpoint offsets do not partition the blob at " +
                        entries[i].name);
      }
      total += entries[i].tensor.size();
    }
    if (manifest.at("blob_values").get<std::size_t>() != total) {
      throw DataError("checkpoint blob size disagrees with the parameter list");
    }
  } catch (const json::exception& e) {
    throw DataError(std::string("malformed checkpoint manifest: ") + e.what());
  } catch (const ArgumentError& e) {
    throw DataError(std::string("invalid checkpoint config: ") + e.what());
  }

  std::vector<std::uint32_t> blob(total);
  in.read(reinterpret_cast<char*>(blob.data()),
          static_cast<std::streamsize>(total * sizeof(std::uint32_t)));
  if (static_cast<std::size_t>(in.gcount()) != total * sizeof(std::uint32_t)) {
    throw DataError("checkpoint blob is truncated");
  }
  if (in.peek() != std::char_traits<char>::eof()) throw DataError("checkpoint has trailing bytes");

  std::size_t k = 0;
  for (auto& e : model->parameters().entries()) {
    auto dst = const_cast<ad::Tensor<T>&>(e.tensor).values();
    for (auto& v : dst) v = static_cast<T>(std::bit_cast<float>(to_little(blob[k++])));
  }
  return model;
}

template <typename T>
std::unique_ptr<Network<T>> load_checkpoint(const std::filesystem::path& path,
                                            std::optional<ModelKind> expected) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open checkpoint " + path.string());
  return read_checkpoint<T>(in, expected);
}

#define SEASTATE_INSTANTIATE_CHECKPOINT(T)                                                      \
  template std::unique_ptr<Network<T>> build_network<T>(ModelKind, const std::string&, Rng&);   \
  template void write_checkpoint(const Network<T>&, std::ostream&);                             \
  template void save_checkpoint(const Network<T>&, const std::filesystem::path&);               \
  template std::unique_ptr<Network<T>> read_checkpoint<T>(std::istream&,                        \
                                                          std::optional<ModelKind>);            \
  template std::unique_ptr<Network<T>> load_checkpoint<T>(const std::filesystem::path&,         \
                                                          std::optional<ModelKind>);

SEASTATE_INSTANTIATE_CHECKPOINT(float)
SEASTATE_INSTANTIATE_CHECKPOINT(double)

#undef SEASTATE_INSTANTIATE_CHECKPOINT

}  // namespace seastate::nets
