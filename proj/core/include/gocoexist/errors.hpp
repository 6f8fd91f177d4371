#pragma once

#include <stdexcept>
#include <string>

namespace gocoexist {

/// Raised when an operation is called outside its mathematical domain
/// (probability out of range, empty batch, non-normalized vector, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised when a configuration value violates a constraint. `key()` names the
/// offending dotted key, e.g. `radio.bandwidth_hz`.
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(std::string key, const std::string& what)
      : std::invalid_argument(key.empty() ? what : key + ": " + what), key_(std::move(key)) {}

  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

}  // namespace gocoexist
