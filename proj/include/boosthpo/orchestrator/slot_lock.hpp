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

#ifndef BOOSTHPO_ORCHESTRATOR_SLOT_LOCK_HPP_
#define BOOSTHPO_ORCHESTRATOR_SLOT_LOCK_HPP_

#include <chrono>
#include <filesystem>
#include <string>

namespace boosthpo::orch {

inline constexpr const char* kHostIdEnv = "BOOSTHPO_HOST_ID";

struct SlotAssignment {
  std::string host_id;
  std::size_t slot = 0;
  std::filesystem::path lock_path;
  std::string epoch;
};

struct RendezvousOptions {
  std::chrono::milliseconds timeout{60000};
  std::chrono::milliseconds poll_interval{2};
};

// BOOSTHPO_HOST_ID if set and nonempty, otherwise the system host name.
std::string DetectHostId();

// Unique, filename-safe epoch id.
std::string NewEpochId();

// Coordinator step: removes lock directories of every other epoch under
// `lock_dir` and creates the directory for `epoch`. Throws StaleEpoch if
// lock files stamped with `epoch` already exist.
void ClearEpoch(const std::filesystem::path& lock_dir, const std::string& epoch);

// Worker step. Publishes <lock_dir>/<epoch>/<host_id>/<worker_tag>.lock,
// waits until `expected_workers` lock files exist for the epoch across all
// hosts, then takes the rank of its own file among the host's sorted file
// names as slot id. Lock files stay in place until the next ClearEpoch so
// late readers see the same listing.
// Throws TooManyWorkers when that rank is >= slots_per_host,
// RendezvousTimeout when the barrier is not reached in time, StaleEpoch when
// a listed file carries a different epoch.
SlotAssignment AcquireSlot(const std::filesystem::path& lock_dir, const std::string& epoch,
                           const std::string& host_id, std::size_t slots_per_host,
                           const std::string& worker_tag, std::size_t expected_workers,
                           const RendezvousOptions& options = {});

}  // namespace boosthpo::orch

#endif  // BOOSTHPO_ORCHESTRATOR_SLOT_LOCK_HPP_
