// Copyright 2026 siqbarrier contributors
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
#include <functional>

namespace siqbarrier {

/// Worker count from SIQBARRIER_THREADS; unset, empty or 0 means one per
/// hardware thread.  Throws ConfigurationError on a malformed value.
unsigned thread_count_from_env();

/// Calls body(i) for i in [0, n) on up to `threads` workers (0 = from env).
/// body must not throw; callers collect per-element failures themselves.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& body);

}  // namespace siqbarrier
