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

#include "boosthpo/orchestrator/slot_lock.hpp"

#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>
#include <vector>

#include "boosthpo/error.hpp"

namespace boosthpo::orch {
namespace fs = std::filesystem;
namespace {

constexpr const char* kLockSuffix = ".lock";

void CheckComponent(const std::string& s, const char* what) {
  if (s.empty() || s == "." || s == ".." || s.find('/') != std::string::npos ||
      s.front() == '.') {
    throw Error(ErrorCode::kInvalidArgument,
                std::string("invalid ") + what + " '" + s + "' for a lock path");
  }
}

bool IsLockFile(const fs::directory_entry& e) {
  const std::string name = e.path().filename().string();
  return name.size() > 5 && name.ends_with(kLockSuffix) && name.front() != '.';
}

std::vector<fs::path> ListLocks(const fs::path& dir) {
  std::vector<fs::path> out;
  std::error_code ec;
  for (fs::directory_iterator it(dir, ec), end; !ec && it != end; it.increment(ec)) {
    if (IsLockFile(*it)) out.push_back(it->path());
  }
  return out;
}

std::size_t CountEpochLocks(const fs::path& epoch_dir) {
  std::size_t n = 0;
  std::error_code ec;
  for (fs::directory_iterator it(epoch_dir, ec), end; !ec && it != end; it.increment(ec)) {
    if (it->is_directory(ec)) n += ListLocks(it->path()).size();
  }
  return n;
}

std::string ReadEpoch(const fs::path& lock) {
  std::ifstream in(lock);
  std::string tag, epoch;
  std::getline(in, tag);
  std::getline(in, epoch);
  return epoch;
}

}  // namespace

std::string DetectHostId() {
  if (const char* env = std::getenv(kHostIdEnv); env != nullptr && *env != '\0') return env;
  char buf[256] = {};
  if (gethostname(buf, sizeof(buf) - 1) != 0 || buf[0] == '\0') return "localhost";
  return buf;
}

std::string NewEpochId() {
  static std::atomic<std::uint64_t> counter{0};
  const auto now = std::chrono::system_clock::now().time_since_epoch();
  std::ostringstream out;
  out << "e" << std::chrono::duration_cast<std::chrono::microseconds>(now).count() << "-"
      << getpid() << "-" << counter.fetch_add(1);
  return out.str();
}

void ClearEpoch(const fs::path& lock_dir, const std::string& epoch) {
  CheckComponent(epoch, "epoch");
  fs::create_directories(lock_dir);
  for (const auto& entry : fs::directory_iterator(lock_dir)) {
    if (entry.path().filename() != epoch) fs::remove_all(entry.path());
  }
  const fs::path epoch_dir = lock_dir / epoch;
  std::error_code ec;
  for (fs::directory_iterator it(epoch_dir, ec), end; !ec && it != end; it.increment(ec)) {
    if (!it->is_directory()) continue;
    for (const fs::path& lock : ListLocks(it->path())) {
      if (ReadEpoch(lock) == epoch) {
        throw Error(ErrorCode::kStaleEpoch,
                    "lock file " + lock.string() + " already belongs to epoch " + epoch);
      }
      fs::remove(lock);
    }
  }
  fs::create_directories(epoch_dir);
}

SlotAssignment AcquireSlot(const fs::path& lock_dir, const std::string& epoch,
                           const std::string& host_id, std::size_t slots_per_host,
                           const std::string& worker_tag, std::size_t expected_workers,
                           const RendezvousOptions& options) {
  CheckComponent(epoch, "epoch");
  CheckComponent(host_id, "host id");
  CheckComponent(worker_tag, "worker tag");
  if (slots_per_host == 0 || expected_workers == 0) {
    throw Error(ErrorCode::kInvalidArgument, "slots_per_host and expected_workers must be >= 1");
  }
  const fs::path epoch_dir = lock_dir / epoch;
  const fs::path host_dir = epoch_dir / host_id;
  fs::create_directories(host_dir);

  SlotAssignment out;
  out.host_id = host_id;
  out.epoch = epoch;
  out.lock_path = host_dir / (worker_tag + kLockSuffix);
  if (fs::exists(out.lock_path)) {
    throw Error(ErrorCode::kInvalidArgument, "worker tag '" + worker_tag + "' already joined");
  }
  const fs::path tmp = host_dir / ("." + worker_tag + ".tmp");
  {
    std::ofstream f(tmp, std::ios::trunc);
    f << worker_tag << "\n" << epoch << "\n";
    if (!f) throw Error(ErrorCode::kIo, "cannot write " + tmp.string());
  }
  fs::rename(tmp, out.lock_path);

  const auto deadline = std::chrono::steady_clock::now() + options.timeout;
  while (CountEpochLocks(epoch_dir) < expected_workers) {
    if (std::chrono::steady_clock::now() >= deadline) {
      throw Error(ErrorCode::kRendezvousTimeout,
                  "epoch " + epoch + ": fewer than " + std::to_string(expected_workers) +
                      " workers joined in time");
    }
    std::this_thread::sleep_for(options.poll_interval);
  }

  std::vector<std::string> names;
  for (const fs::path& lock : ListLocks(host_dir)) {
    if (ReadEpoch(lock) != epoch) {
      throw Error(ErrorCode::kStaleEpoch, "lock file " + lock.string() + " is from another epoch");
    }
    names.push_back(lock.filename().string());
  }
  std::sort(names.begin(), names.end());
  const auto it = std::find(names.begin(), names.end(), out.lock_path.filename().string());
  if (it == names.end()) {
    throw Error(ErrorCode::kStaleEpoch, "own lock file vanished from " + host_dir.string());
  }
  out.slot = static_cast<std::size_t>(it - names.begin());
  if (out.slot >= slots_per_host) {
    throw Error(ErrorCode::kTooManyWorkers,
                "host " + host_id + " has " + std::to_string(names.size()) +
                    " workers for " + std::to_string(slots_per_host) + " slots");
  }
  return out;
}

}  // namespace boosthpo::orch
