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

#ifndef WCK_MEASURE_H
#define WCK_MEASURE_H

#include <cstdint>
#include <vector>

namespace wck {

/// Cat-based logical measurement parameters. C1 and C2 are the fitted
/// constants of the single-flip and aggregate heuristics; missing cat
/// states default to probability 5 wbar p.
struct MeasureParams {
    double wbar = 0;
    double p = 1e-4;
    double p_log = 0;
    double c1 = 2.1;
    double c2 = 3.4;
    double eps = 1e-10;
    double p_miss = -1;  // < 0 selects the 5 wbar p default

    double miss_prob() const { return p_miss < 0 ? 5 * wbar * p : p_miss; }
};

/// Bit-flip probability of one cat-based measurement: C1 wbar p.
double p_flip(const MeasureParams &params);

/// Aggregate error of r-round error-detected / error-corrected measurement.
double p_edm(const MeasureParams &params, size_t r);
double p_ecm(const MeasureParams &params, size_t r);

/// Wald margin: smallest integer K with K log((1-pf)/pf) >= log((1-eps)/eps).
size_t viterbi_margin(const MeasureParams &params);

struct ViterbiDuration {
    double expected_sec = 0;    // exact absorbing-walk expectation
    double closed_form = 0;     // K / ((1 - 2 p_flip)(1 - p_miss))
    size_t margin = 0;          // K
    std::vector<double> quantiles;  // 50/90/99 percentiles in SECs
};

/// Expected SEC count of the adaptive Viterbi measurement, via the exact
/// absorbing random walk over the vote margin with misses idling.
/// Requires eps < 1/2 and p_flip < 1/2.
ViterbiDuration viterbi_duration(const MeasureParams &params);

/// Monte Carlo of the sequential test; returns the mean SEC count.
double viterbi_monte_carlo(const MeasureParams &params, size_t trials,
                           uint64_t seed);

/// EDM duration in SECs: smallest r with p_flip^r <= eps, plus one SEC of
/// decoder reaction time.
size_t edm_duration(const MeasureParams &params, double eps);

}  // namespace wck

#endif
