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

#ifndef WCK_SCHEDULE_H
#define WCK_SCHEDULE_H

#include "wck/circuit.h"
#include "wck/codes.h"

namespace wck {

/// One round of the syndrome-extraction schedule. The X-check ancillas visit
/// term `x_index` of family `x_family` ('A' or 'B'); the Z-check ancillas
/// visit the transpose of term `z_index` of `z_family`. A valid pair is
/// jointly A-type or jointly B-type. Indices are 1-based into the code's
/// polynomial term lists.
struct SchedulePair {
    char x_family;
    int x_index;
    char z_family;
    int z_index;
};

using Schedule = std::vector<SchedulePair>;

enum class Augment { None, Beacon, BeaconLdu };

Augment augment_from_name(const std::string &s);

struct SecBudget {
    double ancilla_reset = 0;
    double gate_layers = 0;
    double cyclic_shift = 0;
    double loss_leak_checks = 0;
    double measurement = 0;
    double total() const {
        return ancilla_reset + gate_layers + cyclic_shift + loss_leak_checks +
               measurement;
    }
};

struct CompiledSec {
    Circuit circuit;
    SecBudget budget;
};

/// True iff the schedule has length check_weight, every pair is jointly
/// A-type or jointly B-type, the X entries cover A and B exactly once, and
/// the Z entries cover the transposes exactly once.
bool validate_schedule(const ThreeRingCode &code, const Schedule &sched);

/// Stronger property than form-validity: the interleaved CX/CZ layers
/// measure the intended stabilizers, i.e. for every X-check/Z-check pair the
/// number of shared data qubits where the CX precedes the CZ is even. Only
/// such schedules give deterministic noiseless syndromes.
bool schedule_measures_cleanly(const ThreeRingCode &code,
                               const Schedule &sched);

/// A valid, cleanly-measuring maximally parallel schedule. Prefers a
/// palindromic family string with the Z entries visiting terms in reverse
/// X order (always clean); falls back to a small search otherwise.
Schedule default_schedule(const ThreeRingCode &code);

/// Published schedule permutation of a named architecture code.
Schedule schedule_of(const NamedCode &nc);

/// Compiles one syndrome extraction cycle. Circuit qubits: data 0..n-1
/// (left half first), X-check ancillas n..n+n/2-1, Z-check ancillas
/// n+n/2..2n-1. Throws std::invalid_argument on an invalid schedule or a
/// three-ring code with a != 2.
CompiledSec compile_sec(const ThreeRingCode &code, const Schedule &sched,
                        Augment augment);

struct TransportCost {
    uint32_t steps = 0;
    double poc = 0;
};
TransportCost transport_cost(const Circuit &circuit);

/// Unit-step count of one Shift(M_u0; r, s, t): r long-ring laps plus the
/// larger of the X/Z medium+short displacements, each direction-minimized.
uint32_t shift_steps(const ThreeRingCode &code, int r, int s_x, int t_x,
                     int s_z, int t_z);

/// Memory experiment: data prepared in the `basis` eigenstate, `rounds`
/// SECs, destructive data measurement. Detector rounds 0..rounds for the
/// deterministic sector plus interior difference detectors for the other
/// sector; observables are the logical operators of the prepared basis.
struct MemoryExperiment {
    Circuit circuit;
    size_t rounds = 0;
    size_t n = 0;
    size_t num_checks = 0;        // checks per sector
    size_t deterministic_rounds;  // detector rounds in the prepared sector
};
MemoryExperiment build_memory_experiment(const ThreeRingCode &code,
                                         const Schedule &sched, Augment augment,
                                         size_t rounds, char basis = 'Z');

}  // namespace wck

#endif
