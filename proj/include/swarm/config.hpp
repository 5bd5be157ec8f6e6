#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "swarm/params.hpp"

namespace swarm {

// Line-based `key = value` format: `#` starts a comment, blank lines are
// skipped, keys are dot-namespaced (field.width, behavior.theta,
// dynamics.rho, run.seed, palette.channel0, ...). Unknown or duplicate
// keys and out-of-range values are ConfigErrors naming the line and key;
// missing keys take the documented defaults.
SimParams parse_config(std::string_view text);

// DataError when the file cannot be read; parse errors as above.
SimParams load_config_file(const std::filesystem::path& path);

// Emits every key explicitly; parse_config(serialize_config(p)) == p.
std::string serialize_config(const SimParams& params);

}  // namespace swarm
