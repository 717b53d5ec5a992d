// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The lorasim Authors

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lorasim {

/// Precondition violated by a caller-supplied value.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A nearest-gateway query ran against an empty gateway set.
class NoGatewayError : public std::runtime_error {
 public:
  NoGatewayError() : std::runtime_error("no gateway in realization") {}
};

/// Bad configuration: unknown key, malformed value, or a violated invariant.
/// `line` is 0 when the problem is not tied to a document line.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, std::size_t line, const std::string& message)
      : std::runtime_error(format(key, line, message)),
        key_(std::move(key)),
        message_(message),
        line_(line) {}

  const std::string& key() const noexcept { return key_; }
  const std::string& message() const noexcept { return message_; }
  std::size_t line() const noexcept { return line_; }

 private:
  static std::string format(const std::string& key, std::size_t line, const std::string& message) {
    std::string out;
    if (line != 0) out += "line " + std::to_string(line) + ": ";
    if (!key.empty()) out += "'" + key + "': ";
    return out + message;
  }

  std::string key_;
  std::string message_;
  std::size_t line_;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace lorasim
