// Copyright 2026 The wck Authors
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

#include "wck/util.h"

#include <atomic>
#include <cstdlib>
#include <thread>

namespace wck {

int worker_count() {
    int hw = int(std::thread::hardware_concurrency());
    if (hw < 1) {
        hw = 1;
    }
    const char *env = std::getenv("WCK_THREADS");
    if (env) {
        int cap = std::atoi(env);
        if (cap >= 1 && cap < hw) {
            hw = cap;
        }
    }
    return hw;
}

void parallel_for(size_t jobs, const std::function<void(size_t)> &fn) {
    int workers = worker_count();
    if (workers <= 1 || jobs <= 1) {
        for (size_t i = 0; i < jobs; i++) {
            fn(i);
        }
        return;
    }
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; w++) {
        pool.emplace_back([&]() {
            while (true) {
                size_t i = next.fetch_add(1);
                if (i >= jobs) {
                    return;
                }
                fn(i);
            }
        });
    }
    for (auto &t : pool) {
        t.join();
    }
}

}  // namespace wck
