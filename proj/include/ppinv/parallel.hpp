/*
   Copyright 2026 The ppinv Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef PPINV_PARALLEL_HPP
#define PPINV_PARALLEL_HPP

#include <cstdint>
#include <functional>

namespace ppinv {

/// Worker count used by the exhaustive loops (default 1).
void set_worker_threads(unsigned k) noexcept;
unsigned worker_threads() noexcept;

/// Runs body(begin, end) over contiguous chunks of [0, count). Chunks write
/// to disjoint index ranges, so results do not depend on the worker count.
void parallel_for(std::uint64_t count, const std::function<void(std::uint64_t, std::uint64_t)>& body);

}  // namespace ppinv

#endif
