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

#ifndef WCK_SIMKIT_H
#define WCK_SIMKIT_H

#include <array>
#include <cstdint>
#include <vector>

#include "wck/circuit.h"
#include "wck/gf2.h"
#include "wck/util.h"

namespace wck {

/// Moving-qubit noise model. Rates follow the ionic convention: two-qubit
/// gates p, single-qubit operations p/10, idle p/100, transport p/2000 per
/// step; loss and leakage per POC, divided by 20 per transport step.
struct NoiseParams {
    double p = 1e-4;
    double p_loss = 1e-7;
    double p_leak = 1e-5;

    static constexpr double kPocSeconds = 200e-6;
    static constexpr double kTransportStepSeconds = 10e-6;

    double p_1q() const { return p / 10; }
    double p_2q() const { return p; }
    double p_meas_flip() const { return p / 10; }
    double p_idle() const { return p / 100; }
    double p_transport() const { return p / 2000; }

    static NoiseParams noiseless() { return {0, 0, 0}; }
};

enum class QubitStatus : uint8_t { Computational, Leaked, Lost };

/// Probability mass function over qubits lost per SEC (or attempt).
struct LossDistribution {
    std::vector<double> pmf;

    double prob(size_t k) const { return k < pmf.size() ? pmf[k] : 0.0; }
    double mean() const;
    double total() const;
    LossDistribution convolved(const LossDistribution &o) const;
    static LossDistribution point_mass_zero();
};

/// CHP-style stabilizer tableau with destabilizers.
class Tableau {
  public:
    explicit Tableau(size_t n);

    void h(size_t q);
    void x(size_t q);
    void y(size_t q);
    void z(size_t q);
    void cx(size_t c, size_t t);
    void cz(size_t a, size_t b);
    bool measure_z(size_t q, Rng &rng);
    bool measure_x(size_t q, Rng &rng);
    void prep_z(size_t q, Rng &rng);
    void prep_x(size_t q, Rng &rng);
    // Maximally mixed replacement: fresh |0> or |1> with equal probability.
    void reset_mixed(size_t q, Rng &rng);
    void swap_qubits(size_t a, size_t b);

    // True iff measuring Z (resp. X) on q has a deterministic outcome.
    bool z_deterministic(size_t q) const;

    size_t n() const { return n_; }

  private:
    size_t rowmult_phase(size_t h, size_t i) const;
    void rowmult(size_t h, size_t i);
    void rowcopy(size_t dst, size_t src);
    void rowset(size_t r, size_t q, bool is_z);

    size_t n_;
    size_t words_;
    std::vector<uint64_t> xs_;  // 2n rows
    std::vector<uint64_t> zs_;
    std::vector<uint8_t> signs_;
    std::vector<uint64_t> scratch_x_, scratch_z_;
};

struct MeasRecord {
    uint8_t bit = 0;
    uint8_t flag = 0;  // 0 none, 1 lost, 2 leaked
};

struct ShotResult {
    std::vector<uint8_t> detectors;
    std::vector<uint8_t> observables;
    uint32_t lost = 0;
    uint32_t leaked = 0;
};

struct SampleStats {
    size_t shots = 0;
    std::vector<uint64_t> detector_flips;    // per detector
    std::vector<uint64_t> observable_flips;  // per observable
    std::vector<uint64_t> lost_histogram;    // index = qubits lost per shot
    uint64_t any_detector_flip_shots = 0;
    uint64_t leaked_total = 0;
};

/// Runs one shot of an annotated circuit. Throws std::invalid_argument if
/// the circuit has no detectors and no observables.
ShotResult sample_shot(const Circuit &circuit, const NoiseParams &noise,
                       uint64_t seed, uint64_t shot_index);

/// Monte Carlo over `shots` shots, parallel over workers with per-shot RNG
/// streams; aggregation is order-independent.
SampleStats sample(const Circuit &circuit, const NoiseParams &noise,
                   size_t shots, uint64_t seed);

/// Per-shot detector records for decoding experiments (packed rows).
struct DetectorData {
    size_t shots = 0;
    size_t num_detectors = 0;
    size_t num_observables = 0;
    BitMatrix detectors;    // shots x num_detectors
    BitMatrix observables;  // shots x num_observables
    std::vector<uint32_t> lost;
    std::vector<uint32_t> leaked;
};
DetectorData sample_detectors(const Circuit &circuit, const NoiseParams &noise,
                              size_t shots, uint64_t seed);

/// Rare-event loss model for one SEC: initial loss events are Poisson with
/// mean p_loss * (2n qubits) * d_POC; each event loses 1 qubit when it lands
/// in the final measurement layer (probability 1/d_POC) and 3 qubits
/// otherwise (beacon, data, and the ancilla that last interacted).
LossDistribution compound_poisson_loss(size_t n_data_plus_ancilla,
                                       double d_poc, double p_loss,
                                       size_t max_k = 14);

/// Least-squares fit of logical rates to p^ceil(d_circ/2) exp(a p^2 + b p + c).
struct AnsatzFit {
    double alpha = 0, beta = 0, zeta = 0;
    size_t d_circ = 0;
    double eval(double p) const;
};
AnsatzFit fit_ansatz(const std::vector<std::pair<double, double>> &points,
                     size_t d_circ);

/// Upper bound on the relative SEC-time overhead of synchronized local
/// reloading: 3 * N_blk * q_reload / (20 * T_sec0).
double reload_overhead(size_t n_blk, double q_reload, double t_sec0_poc);

}  // namespace wck

#endif
