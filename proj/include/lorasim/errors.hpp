#pragma once

#include <stdexcept>
#include <string>

namespace lorasim {

/// Invalid or inconsistent experiment configuration (bad file, bad key,
/// out-of-range value, unsupported combination).
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace lorasim
