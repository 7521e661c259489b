#pragma once

#include <string>
#include <string_view>

#include "seastate/nets/at_nn.hpp"
#include "seastate/nets/cnn_reg.hpp"

namespace seastate::nets {

std::string to_json(const AtNnConfig& cfg);
std::string to_json(const CnnRegConfig& cfg);

/// Missing keys keep their defaults; unknown keys and wrong types throw
/// ArgumentError. The result is validated.
AtNnConfig at_nn_config_from_json(std::string_view text);
CnnRegConfig cnn_reg_config_from_json(std::string_view text);

}  // namespace seastate::nets
