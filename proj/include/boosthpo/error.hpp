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

#ifndef BOOSTHPO_ERROR_HPP_
#define BOOSTHPO_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace boosthpo {

// Every failure surfaced by the library carries one of these codes so that
// callers (and the CLI exit-code mapping) can dispatch without parsing text.
enum class ErrorCode {
  kInvalidArgument,
  kIo,
  kConfig,
  // datasets
  kEmptyDataset,
  kMalformedLine,
  kNonIntegerLabel,
  kFractionOutOfRange,
  kBadShape,
  // gbdt
  kNonFiniteMargin,
  kBadRates,
  kObjectiveMismatch,
  kNonFiniteFeature,
  kBadModel,
  // metrics
  kSingleClass,
  kNotAProbability,
  kRelevanceOutOfRange,
  // bayesopt
  kOutOfRange,
  kTooFewTrials,
  // orchestrator
  kTooManyWorkers,
  kStaleEpoch,
  kRendezvousTimeout,
  kWorkerCrash,
  kNoRecords,
};

std::string_view ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace boosthpo

#endif  // BOOSTHPO_ERROR_HPP_
