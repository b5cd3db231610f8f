// Copyright 2026 The vqgs Authors.
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
#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>

namespace vqgs {

/// Name of the environment variable that caps the worker count.
inline constexpr const char *kWorkersEnv = "VQGS_WORKERS";

/// Worker count from VQGS_WORKERS, else the hardware concurrency (at least 1).
std::size_t default_workers();

/// Calls fn(i) for i in [0, count) on up to `workers` threads. Exceptions are
/// rethrown on the calling thread (the one with the lowest index wins).
void parallel_for(std::size_t count, std::size_t workers,
                  const std::function<void(std::size_t)> &fn);

/// splitmix64 finalizer applied to (master, index); stable across platforms.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

} // namespace vqgs
