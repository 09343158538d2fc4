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

#ifndef WCK_CIRCUIT_H
#define WCK_CIRCUIT_H

#include <cstdint>
#include <string>
#include <vector>

namespace wck {

enum class OpKind : uint8_t {
    PrepZ,       // |0>
    PrepX,       // |+>
    H,
    PauliX,      // injected frame flip (noiseless, used by fault tests)
    PauliY,
    PauliZ,
    CX,          // q0 control, q1 target
    CZ,
    MeasX,       // records one measurement bit + loss/leak flags
    MeasZ,
    LeakReset,   // reset a leaked qubit to the maximally mixed state
    BeaconCheck, // beacon merge/split loss check on data qubit q0
    TeleportLdu, // teleport q0 through ancilla q1, leakage-checking q0
};

bool op_is_two_qubit(OpKind k);
bool op_records_measurement(OpKind k);
const char *op_name(OpKind k);

struct Op {
    OpKind kind;
    uint32_t q0 = 0;
    uint32_t q1 = 0;
};

enum class BudgetTag : uint8_t { Reset, Gates, Shift, LossLeak, Meas, Other };

struct Moment {
    bool is_transport = false;
    uint32_t transport_steps = 0;  // only for transport moments
    std::vector<Op> ops;           // only for compute moments
    BudgetTag tag = BudgetTag::Other;

    double poc() const { return is_transport ? transport_steps / 20.0 : 1.0; }
};

struct Detector {
    std::vector<uint32_t> meas;  // absolute measurement indices, XORed
    // Bookkeeping for staircase extraction.
    uint8_t sector = 0;  // 0 = Z-check sector, 1 = X-check sector
    uint32_t round = 0;
    uint32_t check = 0;
};

struct Observable {
    std::vector<uint32_t> meas;
};

struct Circuit {
    uint32_t num_qubits = 0;
    std::vector<Moment> moments;
    std::vector<Detector> detectors;
    std::vector<Observable> observables;
    uint32_t num_measurements = 0;

    Moment &compute_moment(BudgetTag tag = BudgetTag::Other);
    Moment &transport_moment(uint32_t steps, BudgetTag tag = BudgetTag::Shift);
    // Appends an op to the last compute moment, bumping the measurement
    // counter for recording ops.
    uint32_t push_op(OpKind kind, uint32_t q0, uint32_t q1 = 0);

    double total_poc() const;
    uint32_t total_transport_steps() const;
    size_t count_ops(OpKind kind) const;

    // One op per line: "POC-index | op | qubits | params".
    std::string serialize() const;

    // Appends every moment of `tail` (detectors/observables excluded),
    // offsetting measurement indices.
    void append(const Circuit &tail);
};

}  // namespace wck

#endif
