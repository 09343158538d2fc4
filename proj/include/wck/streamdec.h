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

#ifndef WCK_STREAMDEC_H
#define WCK_STREAMDEC_H

#include <cstdint>
#include <vector>

#include "wck/circuit.h"
#include "wck/gf2.h"
#include "wck/simkit.h"

namespace wck {

/// Staircase decomposition of the detector-level check matrix of a periodic
/// experiment. Columns are error classes (identical detector/observable
/// signatures merged); blocks follow the banded structure
///   [H0' H1; H2 H0 H1; ...; H2 H0''].
/// Odd block columns hold the two-round classes split into an upper (H1)
/// and lower (H2) part; even block columns hold single-round classes.
struct StaircaseModel {
    size_t rows_per_round = 0;
    size_t rounds = 0;  // detector rounds r (block rows)
    size_t num_observables = 0;

    BitMatrix h0p;   // round-0 single-round classes
    BitMatrix h1;    // upper halves of the two-round classes
    BitMatrix h2;    // lower halves (same column order as h1)
    BitMatrix h0;    // interior single-round classes
    BitMatrix h0pp;  // terminal single-round classes

    std::vector<double> p0p, p1, p0, p0pp;

    // Observable flip vectors per column (num_observables bits each).
    std::vector<std::vector<uint8_t>> obs0p, obs1, obs0, obs0pp;

    size_t block_cols() const { return 2 * rounds - 1; }
    size_t cols_of_block(size_t bc) const;
    size_t total_cols() const;
    // Offset of block column `bc` in the global column layout.
    size_t col_base(size_t bc) const;

    // Full (rounds x (2 rounds - 1)) check matrix, priors, and per-column
    // observable vectors, in global column order.
    BitMatrix global_matrix() const;
    std::vector<double> global_priors() const;
};

/// Extracts the staircase model by single-fault propagation through the
/// circuit, using the sector-0 (deterministic-basis) detectors. Throws
/// std::invalid_argument when the circuit is not periodic (interior blocks
/// disagree) or has fewer than 3 detector rounds.
StaircaseModel build_staircase(const Circuit &circuit,
                               const NoiseParams &noise);

struct WindowPlan {
    size_t n_win = 0;
    size_t w_last = 0;
};
/// Number of windows and terminal window size for r detector rounds under a
/// (w, c) sliding window.
WindowPlan window_plan(size_t r, size_t w, size_t c);

struct WindowMatrices {
    BitMatrix h_first, h_mid, h_last;
    std::vector<double> p_first, p_mid, p_last;
    // Column count of the unmerged prefix (committable region) per window.
    size_t first_tail_cols = 0;  // merged-tail column count, first/mid
};
/// Builds the three window parity-check matrices and prior vectors,
/// merging identical columns in the terminal H1 block of the first and
/// middle windows.
WindowMatrices init_windows(const StaircaseModel &model, size_t w, size_t c);

struct InnerDecoderConfig {
    size_t iterations = 100;
    double min_sum_factor = 0.8;
    bool osd0 = true;
};

/// Normalized min-sum belief propagation with optional order-0
/// ordered-statistics post-processing. Returns the error estimate; with
/// OSD-0 enabled the estimate always satisfies H e = syndrome when the
/// syndrome is in the column space.
std::vector<uint8_t> inner_bp(const BitMatrix &h,
                              const std::vector<double> &priors,
                              const std::vector<uint8_t> &syndrome,
                              const InnerDecoderConfig &cfg);

struct StreamResult {
    std::vector<uint8_t> committed;         // global column order
    std::vector<uint8_t> observable_flips;  // predicted logical flips
    std::vector<double> window_micros;
    double reaction_micros = 0;
    bool committed_parity_ok = false;
};

/// Streaming decode of one detector stream (rounds * rows_per_round bits).
/// Interior windows commit 2c block columns and fold the committed error
/// into the next window's first detector round via the sparse H2 product.
StreamResult stream_decode(const StaircaseModel &model, size_t w, size_t c,
                           const std::vector<uint8_t> &detector_stream,
                           const InnerDecoderConfig &cfg);

/// One-shot decode with the full staircase matrix (the w = c = r window).
StreamResult global_decode(const StaircaseModel &model,
                           const std::vector<uint8_t> &detector_stream,
                           const InnerDecoderConfig &cfg);

/// Extracts the sector-0 detector stream (round-major) from sampled data.
std::vector<uint8_t> sector0_stream(const Circuit &circuit,
                                    const DetectorData &data, size_t shot);

}  // namespace wck

#endif
