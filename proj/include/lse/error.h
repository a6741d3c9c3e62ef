// Copyright 2026 The LSE Authors.
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

#ifndef LSE_ERROR_H_
#define LSE_ERROR_H_

#include <stdexcept>
#include <string>

namespace lse {

enum class ErrorCode {
  kInvalidArgument,
  kQueryBeforeFirstRound,
  kStepTooLarge,
  kDegenerateDirection,
  kInteriorViolation,
  kBudgetExhausted,
  kNoCrossingDetected,
  kIdenticalColumns,
  kRankDeficient,
  kNullSpaceEmpty,
  kDimensionTooLarge,
  kRankTooLow,
  kAmbiguousSign,
  kBurnInBudgetExceeded,
  kCrossingFailed,
  kSpecInvalid,
  kUnknownFixture,
  kSchemaViolation,
  kEmptyRegion,
  kConfigViolation,
  kIterationCapExceeded,
  kEstimatedPolytopeEmpty,
};

const char* ErrorCodeName(ErrorCode code);

// All library failures are reported through this type; `code()` identifies
// the failure class, `what()` carries the diagnostic.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace lse

#endif  // LSE_ERROR_H_
