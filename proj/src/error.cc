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

#include "lse/error.h"

namespace lse {

const char* ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kQueryBeforeFirstRound: return "QueryBeforeFirstRound";
    case ErrorCode::kStepTooLarge: return "StepTooLarge";
    case ErrorCode::kDegenerateDirection: return "DegenerateDirection";
    case ErrorCode::kInteriorViolation: return "InteriorViolation";
    case ErrorCode::kBudgetExhausted: return "BudgetExhausted";
    case ErrorCode::kNoCrossingDetected: return "NoCrossingDetected";
    case ErrorCode::kIdenticalColumns: return "IdenticalColumns";
    case ErrorCode::kRankDeficient: return "RankDeficient";
    case ErrorCode::kNullSpaceEmpty: return "NullSpaceEmpty";
    case ErrorCode::kDimensionTooLarge: return "DimensionTooLarge";
    case ErrorCode::kRankTooLow: return "RankTooLow";
    case ErrorCode::kAmbiguousSign: return "AmbiguousSign";
    case ErrorCode::kBurnInBudgetExceeded: return "BurnInBudgetExceeded";
    case ErrorCode::kCrossingFailed: return "CrossingFailed";
    case ErrorCode::kSpecInvalid: return "SpecInvalid";
    case ErrorCode::kUnknownFixture: return "UnknownFixture";
    case ErrorCode::kSchemaViolation: return "SchemaViolation";
    case ErrorCode::kEmptyRegion: return "EmptyRegion";
    case ErrorCode::kConfigViolation: return "ConfigViolation";
    case ErrorCode::kIterationCapExceeded: return "IterationCapExceeded";
    case ErrorCode::kEstimatedPolytopeEmpty: return "EstimatedPolytopeEmpty";
  }
  return "Unknown";
}

}  // namespace lse
