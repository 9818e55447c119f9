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

#include "ppinv/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <thread>
#include <vector>

namespace ppinv {

namespace {
std::atomic<unsigned> g_workers{1};
}

void set_worker_threads(unsigned k) noexcept { g_workers.store(std::max(1u, k)); }

unsigned worker_threads() noexcept { return g_workers.load(); }

void parallel_for(std::uint64_t count, const std::function<void(std::uint64_t, std::uint64_t)>& body) {
    const std::uint64_t workers = std::min<std::uint64_t>(worker_threads(), std::max<std::uint64_t>(1, count / 256));
    if (workers <= 1) {
        body(0, count);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    const std::uint64_t chunk = (count + workers - 1) / workers;
    for (std::uint64_t w = 0; w < workers; ++w) {
        std::uint64_t b = w * chunk, e = std::min(count, b + chunk);
        pool.emplace_back([&, w, b, e] {
            try {
                if (b < e) body(b, e);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace ppinv
