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

#include "wck/circuit.h"

#include <sstream>
#include <stdexcept>

namespace wck {

bool op_is_two_qubit(OpKind k) {
    return k == OpKind::CX || k == OpKind::CZ || k == OpKind::TeleportLdu;
}

bool op_records_measurement(OpKind k) {
    return k == OpKind::MeasX || k == OpKind::MeasZ;
}

const char *op_name(OpKind k) {
    switch (k) {
        case OpKind::PrepZ: return "prep_z";
        case OpKind::PrepX: return "prep_x";
        case OpKind::H: return "h";
        case OpKind::PauliX: return "inject_x";
        case OpKind::PauliY: return "inject_y";
        case OpKind::PauliZ: return "inject_z";
        case OpKind::CX: return "cx";
        case OpKind::CZ: return "cz";
        case OpKind::MeasX: return "measure_x";
        case OpKind::MeasZ: return "measure_z";
        case OpKind::LeakReset: return "leakage_reset";
        case OpKind::BeaconCheck: return "beacon_check";
        case OpKind::TeleportLdu: return "teleport_ldu";
    }
    return "?";
}

Moment &Circuit::compute_moment(BudgetTag tag) {
    Moment m;
    m.is_transport = false;
    m.tag = tag;
    moments.push_back(std::move(m));
    return moments.back();
}

Moment &Circuit::transport_moment(uint32_t steps, BudgetTag tag) {
    Moment m;
    m.is_transport = true;
    m.transport_steps = steps;
    m.tag = tag;
    moments.push_back(std::move(m));
    return moments.back();
}

uint32_t Circuit::push_op(OpKind kind, uint32_t q0, uint32_t q1) {
    if (moments.empty() || moments.back().is_transport) {
        throw std::logic_error("push_op requires an open compute moment");
    }
    if (q0 >= num_qubits || (op_is_two_qubit(kind) && q1 >= num_qubits)) {
        throw std::invalid_argument("op qubit out of range");
    }
    moments.back().ops.push_back({kind, q0, q1});
    if (op_records_measurement(kind)) {
        return num_measurements++;
    }
    return UINT32_MAX;
}

double Circuit::total_poc() const {
    double poc = 0;
    for (const auto &m : moments) {
        poc += m.poc();
    }
    return poc;
}

uint32_t Circuit::total_transport_steps() const {
    uint32_t steps = 0;
    for (const auto &m : moments) {
        if (m.is_transport) {
            steps += m.transport_steps;
        }
    }
    return steps;
}

size_t Circuit::count_ops(OpKind kind) const {
    size_t count = 0;
    for (const auto &m : moments) {
        for (const auto &op : m.ops) {
            count += op.kind == kind;
        }
    }
    return count;
}

std::string Circuit::serialize() const {
    std::ostringstream ss;
    double poc = 0;
    for (const auto &m : moments) {
        if (m.is_transport) {
            ss << poc << " | transport | - | steps=" << m.transport_steps
               << "\n";
        } else {
            for (const auto &op : m.ops) {
                ss << poc << " | " << op_name(op.kind) << " | " << op.q0;
                if (op_is_two_qubit(op.kind)) {
                    ss << "," << op.q1;
                }
                ss << " | -\n";
            }
        }
        poc += m.poc();
    }
    return ss.str();
}

void Circuit::append(const Circuit &tail) {
    if (tail.num_qubits > num_qubits) {
        num_qubits = tail.num_qubits;
    }
    for (const auto &m : tail.moments) {
        moments.push_back(m);
    }
    num_measurements += tail.num_measurements;
}

}  // namespace wck
