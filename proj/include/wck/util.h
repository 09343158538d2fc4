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

#ifndef WCK_UTIL_H
#define WCK_UTIL_H

#include <cstdint>
#include <functional>
#include <vector>

namespace wck {

/// SplitMix64 stream. Cheap, counter-friendly: seeding with hash(seed, shot)
/// gives independent per-shot streams so results do not depend on the number
/// of worker threads.
class Rng {
  public:
    explicit Rng(uint64_t seed) : state_(seed * 0x9E3779B97F4A7C15ULL + 1) {}

    static Rng for_stream(uint64_t seed, uint64_t stream) {
        uint64_t h = seed + 0x9E3779B97F4A7C15ULL;
        h ^= stream + 0xBF58476D1CE4E5B9ULL + (h << 6) + (h >> 2);
        h *= 0x94D049BB133111EBULL;
        return Rng(h ^ (h >> 31));
    }

    uint64_t next_u64() {
        uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1).
    double next_double() {
        return double(next_u64() >> 11) * 0x1.0p-53;
    }

    bool bernoulli(double p) {
        return next_double() < p;
    }

    // Uniform integer in [0, n).
    uint64_t next_below(uint64_t n) {
        return next_u64() % n;
    }

  private:
    uint64_t state_;
};

/// Worker count: min(WCK_THREADS if set, hardware_concurrency), at least 1.
int worker_count();

/// Runs fn(job_index) for job_index in [0, jobs) across worker threads.
void parallel_for(size_t jobs, const std::function<void(size_t)> &fn);

}  // namespace wck

#endif
