// Copyright 2026 The cvgauss Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace cvgauss {

/// Invalid experiment configuration. `line` is 0 when the error does not come
/// from a file.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, std::size_t line, const std::string& message)
      : std::runtime_error(format(key, line, message)), key_(std::move(key)), line_(line), message_(message) {}

  const std::string& key() const { return key_; }
  std::size_t line() const { return line_; }
  const std::string& message() const { return message_; }

 private:
  static std::string format(const std::string& key, std::size_t line, const std::string& message) {
    std::string out;
    if (line > 0) out += "line " + std::to_string(line) + ": ";
    if (!key.empty()) out += "'" + key + "': ";
    return out + message;
  }

  std::string key_;
  std::size_t line_;
  std::string message_;
};

}  // namespace cvgauss
