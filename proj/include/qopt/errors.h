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


#ifndef QOPT_ERRORS_H_
#define QOPT_ERRORS_H_

#include <stdexcept>
#include <string>

namespace qopt {

// Broad failure classes. The CLI maps them onto process exit codes.
enum class ErrorCode {
  kUsage,          // bad configuration or arguments
  kData,           // unreadable or unusable input data
  kSolverRefusal,  // instance outside the exact solver's limits
  kUnsupported,    // operation not defined for the given objective
  kNumeric,        // training diverged
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

inline Error UsageError(const std::string& m) { return {ErrorCode::kUsage, m}; }
inline Error DataError(const std::string& m) { return {ErrorCode::kData, m}; }

}  // namespace qopt

#endif  // QOPT_ERRORS_H_
