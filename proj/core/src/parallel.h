// Copyright 2026 The steershare Authors
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

#ifndef STEERSHARE_PARALLEL_H
#define STEERSHARE_PARALLEL_H

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace steershare::detail {

inline int resolve_workers(int workers) {
    if (workers > 0) {
        return workers;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

/// Calls fn(i) for every i in [0, count) on up to `workers` threads. Tasks
/// are split into contiguous blocks; callers write results into slot i so the
/// outcome does not depend on the worker count. The first exception thrown
/// by any task is rethrown on the calling thread.
template <typename Fn>
void parallel_for(std::size_t count, int workers, Fn &&fn) {
    const std::size_t threads = std::min<std::size_t>(static_cast<std::size_t>(resolve_workers(workers)), count);
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) {
            fn(i);
        }
        return;
    }
    std::exception_ptr failure;
    std::mutex failure_lock;
    std::vector<std::thread> pool;
    pool.reserve(threads);
    const std::size_t block = (count + threads - 1) / threads;
    for (std::size_t t = 0; t < threads; ++t) {
        const std::size_t begin = t * block;
        const std::size_t end = std::min(count, begin + block);
        pool.emplace_back([&, begin, end] {
            try {
                for (std::size_t i = begin; i < end; ++i) {
                    fn(i);
                }
            } catch (...) {
                std::lock_guard<std::mutex> guard(failure_lock);
                if (!failure) {
                    failure = std::current_exception();
                }
            }
        });
    }
    for (auto &th : pool) {
        th.join();
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
}

}  // namespace steershare::detail

#endif
