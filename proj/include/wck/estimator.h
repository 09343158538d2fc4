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

#ifndef WCK_ESTIMATOR_H
#define WCK_ESTIMATOR_H

#include <cstddef>
#include <string>
#include <vector>

#include "wck/magic.h"

namespace wck {

/// Architecture configuration: N_M memory blocks of a named code plus N_T
/// magic factories of one kind.
struct ArchConfig {
    size_t n_mem = 0;
    std::string mem_code = "Q70";
    size_t n_fact = 0;
    FactoryKind fact_kind = FactoryKind::CH2;

    std::string str() const;
};

/// Parses "17xQ70+3xMEK" (case-insensitive kind names).
ArchConfig parse_config(const std::string &text);

struct Allocation {
    size_t memory = 0;
    size_t magic = 0;
    size_t cat = 0;
    size_t bell = 0;
    size_t reservoir = 0;
    size_t cat_transport = 0;
    size_t bell_transport = 0;
    size_t total = 0;
    size_t logical_qubits = 0;
    // Layout derivation, exposed for reporting.
    size_t outer_loop_steps = 0;
    double loop_time_sec = 0;  // in SECs of the memory code
};
Allocation allocate(const ArchConfig &config);

struct OpTimes {
    double lz_lp = 0;
    double lt = 0;
    double lm1 = 0;
    double lm2 = 0;
    double clif = 0;
    double dm = 0;
    double t_gate_x2 = 0;  // pair of T gates, production included
};
/// Average logical operation times in seconds for the configuration.
OpTimes op_times(const ArchConfig &config);

double t_gates_per_day(const ArchConfig &config);

struct TradeoffPoint {
    size_t blocks_as_memory = 0;
    size_t logical_qubits = 0;
    double t_per_day = 0;
};
/// Single-code architecture N_T x MEK: m blocks used as memory, the rest
/// producing magic states.
std::vector<TradeoffPoint> single_code_tradeoff(size_t n_t);

/// Viterbi expected SECs at block weight w (eps = 1e-10, p = 1e-4),
/// including the decoder-reaction SEC when `with_reaction`.
double viterbi_secs(double weight, bool with_reaction);

}  // namespace wck

#endif
