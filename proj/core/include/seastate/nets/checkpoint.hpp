#pragma once

#include <filesystem>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>

#include "seastate/nets/network.hpp"

namespace seastate::nets {

inline constexpr int kCheckpointVersion = 1;

/// Builds an untrained network of `kind` from its JSON config.
template <typename T>
std::unique_ptr<Network<T>> build_network(ModelKind kind, const std::string& config_json,
                                          Rng& rng);

/// Layout: one line of JSON manifest, a newline, then every parameter (in
/// manifest order) as little-endian float32. The manifest lists kind,
/// config, format_version and each parameter's name, shape and element
/// offset.
template <typename T>
void write_checkpoint(const Network<T>& model, std::ostream& out);
template <typename T>
void save_checkpoint(const Network<T>& model, const std::filesystem::path& path);

/// Throws DataError on version mismatch, truncation, any manifest/blob
/// inconsistency or when the stored kind differs from `expected`.
template <typename T>
std::unique_ptr<Network<T>> read_checkpoint(std::istream& in,
                                            std::optional<ModelKind> expected = std::nullopt);
template <typename T>
std::unique_ptr<Network<T>> load_checkpoint(const std::filesystem::path& path,
                                            std::optional<ModelKind> expected = std::nullopt);

}  // namespace seastate::nets
