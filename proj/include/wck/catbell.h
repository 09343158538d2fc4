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

#ifndef WCK_CATBELL_H
#define WCK_CATBELL_H

#include <cstdint>
#include <map>
#include <vector>

#include "wck/circuit.h"
#include "wck/simkit.h"

namespace wck {

/// Cat factory configuration: even weight w, verification rounds m (derived
/// from the target precision when negative), target precision eps,
/// physical rate p.
struct CatSpec {
    size_t w = 0;
    int m = -1;
    double eps = 1e-10;
    double p = 1e-4;
    double p_leak = 1e-5;
    double p_loss = 1e-7;

    size_t rounds() const;
};

/// Required verification rounds: ceil(log(eps) / (2 log(2p))).
size_t cat_verification_rounds(double eps, double p);

/// Heuristic performance model of the cat factory.
struct CatModel {
    size_t w = 0;
    size_t m = 0;
    double x_rate_per_qubit = 0;
    double z_rate_per_qubit = 0;
    double reject_error = 0;
    double reject_leak = 0;
    double reject_loss = 0;
    double flow_per_sec = 0;     // qubits through the factory per SEC
    double prod_pocs = 0;        // ceil(log2 w) + 3m + 3
    double prod_transport = 0;   // w/2 + m - 1 steps
    std::map<size_t, double> loss_pmf_peaks;  // four-peak loss model
    LossDistribution loss_pmf() const;
};
CatModel cat_model(const CatSpec &spec);

/// Growth circuit of an even-weight cat state: doubling rounds of CX plus
/// clockwise shifts of the two-row register. Qubits 0..w/2-1 are the top
/// row, w/2..w-1 the bottom row; gates are retargeted so qubit identities
/// stay fixed while the ring rotates.
Circuit cat_prep_circuit(size_t w);

/// Prep followed by m ZZ-verification rounds and the teleportation-based
/// leakage-detection tail. Ancillas occupy indices w..2w-1. Verification
/// ancilla measurements are annotated as detectors (any flip rejects);
/// `readout_basis` 'Z' or 'X' appends a destructive readout of the output
/// cat with one observable per qubit ('Z') or the global parity ('X').
Circuit cat_verify_circuit(size_t w, size_t m, char readout_basis = 0);

/// Monte Carlo of prep + verification.
struct CatSimResult {
    size_t shots = 0;
    size_t rejected_error = 0;  // a verification check fired
    size_t rejected_leak = 0;
    size_t rejected_loss = 0;
    // Accepted-shot error statistics, by residual X-error weight
    // ('Z' readout) or Z-error count ('X' readout).
    std::vector<uint64_t> x_weight_histogram;
    uint64_t z_errors = 0;
    size_t accepted = 0;
    std::vector<uint64_t> lost_histogram;
};
CatSimResult cat_sim(const CatSpec &spec, size_t shots, char readout_basis,
                     uint64_t seed);

/// Stitching model: rounds m with (4p)^m below eps plus one round of
/// margin; rejection rate 4 m p.
struct StitchModel {
    size_t m = 0;
    double reject = 0;
};
StitchModel stitch_model(double eps, double p);

/// ceil(N/3) Bell factories for N cat factories; each flows
/// 2 ceil(3m/2) qubits per cat production round.
struct BellSizing {
    size_t factories = 0;
    size_t flow_per_round = 0;
    size_t qubits_per_factory = 0;
};
BellSizing bell_sizing(size_t n_cat_factories, size_t m_stitch);

}  // namespace wck

#endif
