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

#ifndef WCK_RESERVOIR_H
#define WCK_RESERVOIR_H

#include <cstddef>
#include <vector>

#include "wck/simkit.h"

namespace wck {

/// Component allocation feeding the global reservoir: per-type counts and
/// per-subsystem loss pmfs (qubits lost per SEC).
struct ReservoirConfig {
    size_t memories = 0;
    size_t magic = 0;
    size_t cat = 0;
    size_t bell = 0;
    LossDistribution memory_pmf;
    LossDistribution magic_pmf;
    LossDistribution cat_pmf;
    LossDistribution bell_pmf;
    double sec_seconds = 6e-3;
    double failure_threshold = 1e-10;
    size_t r_max = 500;
};

/// Published operating-point configuration: Q102 memories, Q54 magic
/// factories, w=30 cat factories, and the two-peak Bell pmf.
ReservoirConfig published_reservoir_config(size_t m, size_t t, size_t c,
                                           size_t b);

/// Convolution of the per-subsystem loss distributions.
LossDistribution aggregate_losses(const ReservoirConfig &config);

/// X_{t+1} = max(0, min(R, X_t - k + a)) with P_add(1) = L * dt.
struct ReservoirChain {
    size_t r = 0;
    double p_add = 0;
    LossDistribution losses;
};
ReservoirChain build_chain(const ReservoirConfig &config, size_t loading_zones,
                           size_t r);

struct SteadyState {
    std::vector<double> pi;
    double failure = 0;   // pi[0]
    double residual = 0;  // || pi P - pi ||_1
};
/// Power iteration from the full-reservoir state, tolerance 1e-14.
SteadyState steady_state(const ReservoirChain &chain);

/// Number of steps from the full state until the distribution is within
/// `dist` (1-norm) of the steady state.
size_t mixing_steps(const ReservoirChain &chain, double dist,
                    size_t max_steps = 100000);

/// Smallest reservoir (binary search up to r_max) with failure below the
/// threshold; returns 0 when no R <= r_max suffices.
size_t min_reservoir(const ReservoirConfig &config, size_t loading_zones);

struct OperatingPoint {
    size_t loading_zones = 0;
    size_t reservoir = 0;
    std::vector<std::pair<size_t, size_t>> lr_curve;  // (L, R) pairs
};
/// Scans L upward and picks the smallest L where one more loading zone
/// saves at most two reservoir qubits.
OperatingPoint operating_point(const ReservoirConfig &config, size_t l_min = 1,
                               size_t l_max = 64);

}  // namespace wck

#endif
