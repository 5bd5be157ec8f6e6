#pragma once

#include <stdexcept>
#include <string>

namespace swarm {

// Raised for malformed or out-of-range configuration, carrying enough
// context (line number, key) for a useful CLI diagnostic.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Raised for unreadable, truncated, or corrupt data files (snapshots,
// golden fixtures).
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace swarm
