// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DMC_ERROR_H_
#define DMC_ERROR_H_

#include <stdexcept>
#include <string>

namespace dmc {

// Broad failure classes; the CLI maps each onto a process exit code.
enum class ErrorKind {
  kConfig,   // invalid configuration or arguments
  kData,     // malformed or inconsistent input data
  kRefusal,  // a size bound was exceeded
  kNumeric,  // non-finite values or dimension mismatches in the scorer
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

inline Error ConfigError(const std::string& message) {
  return Error(ErrorKind::kConfig, message);
}
inline Error DataError(const std::string& message) {
  return Error(ErrorKind::kData, message);
}
inline Error RefusalError(const std::string& message) {
  return Error(ErrorKind::kRefusal, message);
}
inline Error NumericError(const std::string& message) {
  return Error(ErrorKind::kNumeric, message);
}

// 0 success, 2 config, 3 data, 4 refusal. Numeric failures count as data.
inline int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kConfig:
      return 2;
    case ErrorKind::kData:
    case ErrorKind::kNumeric:
      return 3;
    case ErrorKind::kRefusal:
      return 4;
  }
  return 1;
}

}  // namespace dmc

#endif  // DMC_ERROR_H_
