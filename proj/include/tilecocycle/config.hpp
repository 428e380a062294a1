#pragma once

#include "tilecocycle/symbolic.hpp"
#include "tilecocycle/systems.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace tc {

struct ConfigError {
  std::string pointer;  // JSON-pointer-style location
  std::string message;
};

class ConfigParseError : public std::runtime_error {
 public:
  explicit ConfigParseError(std::vector<ConfigError> errors);
  const std::vector<ConfigError>& errors() const { return errors_; }

 private:
  std::vector<ConfigError> errors_;
};

struct RunConfig {
  SubstitutionSystem system;
  MeasureSampler sampler;
  nlohmann::json experiment;  // command-specific parameters, validated per command
  std::string config_text;    // raw document, hashed into output manifests
};

// Parses and validates; collects every schema error before throwing.
RunConfig parse_config(const std::string& text);

}  // namespace tc
