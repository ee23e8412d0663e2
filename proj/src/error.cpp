/*
 * Copyright 2026 The boosthpo Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "boosthpo/error.hpp"

namespace boosthpo {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kIo: return "Io";
    case ErrorCode::kConfig: return "Config";
    case ErrorCode::kEmptyDataset: return "EmptyDataset";
    case ErrorCode::kMalformedLine: return "MalformedLine";
    case ErrorCode::kNonIntegerLabel: return "NonIntegerLabel";
    case ErrorCode::kFractionOutOfRange: return "FractionOutOfRange";
    case ErrorCode::kBadShape: return "BadShape";
    case ErrorCode::kNonFiniteMargin: return "NonFiniteMargin";
    case ErrorCode::kBadRates: return "BadRates";
    case ErrorCode::kObjectiveMismatch: return "ObjectiveMismatch";
    case ErrorCode::kNonFiniteFeature: return "NonFiniteFeature";
    case ErrorCode::kBadModel: return "BadModel";
    case ErrorCode::kSingleClass: return "SingleClass";
    case ErrorCode::kNotAProbability: return "NotAProbability";
    case ErrorCode::kRelevanceOutOfRange: return "RelevanceOutOfRange";
    case ErrorCode::kOutOfRange: return "OutOfRange";
    case ErrorCode::kTooFewTrials: return "TooFewTrials";
    case ErrorCode::kTooManyWorkers: return "TooManyWorkers";
    case ErrorCode::kStaleEpoch: return "StaleEpoch";
    case ErrorCode::kRendezvousTimeout: return "RendezvousTimeout";
    case ErrorCode::kWorkerCrash: return "WorkerCrash";
    case ErrorCode::kNoRecords: return "NoRecords";
  }
  return "Unknown";
}

}  // namespace boosthpo
