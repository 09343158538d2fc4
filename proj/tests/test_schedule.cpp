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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>

#include "wck/schedule.h"
#include "wck/util.h"

using namespace wck;

namespace {

ThreeRingCode bb4_toy() {
    return construct(CodeFamily::BB, 3, 3, "1,x", "1,xy");
}

Schedule bb4_schedule() {
    // ((A1,A1^T),(A2,A2^T),(B1,B2^T),(B2,B1^T))
    return {{'A', 1, 'A', 1}, {'A', 2, 'A', 2}, {'B', 1, 'B', 2}, {'B', 2, 'B', 1}};
}

}  // namespace

TEST_CASE("BB4 toy compiles to 4 gate layers with medium and long shifts") {
    ThreeRingCode code = bb4_toy();
    CompiledSec sec = compile_sec(code, bb4_schedule(), Augment::None);
    CHECK(sec.budget.gate_layers == 4);
    // Round 1 -> 2 is the (0,1,0) medium shift: displacement c = 3 sites.
    // Round 2 -> 3 changes family: one long-ring lap of b*c = 9 sites plus
    // realignment.
    std::vector<uint32_t> steps;
    for (const auto &m : sec.circuit.moments) {
        if (m.is_transport) {
            steps.push_back(m.transport_steps);
        }
    }
    REQUIRE(steps.size() == 3);
    CHECK(steps[0] == 3);
    CHECK(steps[1] >= 9);
}

TEST_CASE("per-shift displacement oracle on the BB4 toy") {
    ThreeRingCode code = bb4_toy();
    // Oracle: |s| * c + |t| unit steps, minimized over direction, plus a
    // long lap of b*c when the family changes.
    auto oracle = [&](int r, int sx, int tx, int sz, int tz) {
        auto mod = [](int v, int ring) { return ((v % ring) + ring) % ring; };
        int b = code.b, c = code.c;
        auto disp = [&](int s, int t) {
            int sm = mod(s, b), tm = mod(t, c);
            return std::min(sm, b - sm) * c + std::min(tm, c - tm);
        };
        return uint32_t(r * b * c + std::max(disp(sx, tx), disp(sz, tz)));
    };
    Rng rng(17);
    for (int trial = 0; trial < 50; trial++) {
        int r = int(rng.next_below(2));
        int sx = int(rng.next_below(3)), tx = int(rng.next_below(3));
        int sz = int(rng.next_below(3)), tz = int(rng.next_below(3));
        CHECK(shift_steps(code, r, sx, tx, sz, tz) == oracle(r, sx, tx, sz, tz));
    }
}

TEST_CASE("Q54 beacon+LDU budget matches the published rows") {
    const NamedCode &nc = named_code("Q54");
    CompiledSec sec = compile_sec(nc.build(), schedule_of(nc), Augment::BeaconLdu);
    CHECK(sec.budget.ancilla_reset == 1);
    CHECK(sec.budget.gate_layers == 8);
    CHECK(sec.budget.cyclic_shift == doctest::Approx(10.10));
    CHECK(sec.budget.loss_leak_checks == doctest::Approx(8.05));
    CHECK(sec.budget.measurement == 1);
    CHECK(sec.budget.total() == doctest::Approx(28.15));
}

TEST_CASE("Q70 budget total matches the published 27.70 POC") {
    const NamedCode &nc = named_code("Q70");
    CompiledSec sec = compile_sec(nc.build(), schedule_of(nc), Augment::BeaconLdu);
    CHECK(sec.budget.cyclic_shift == doctest::Approx(11.65));
    CHECK(sec.budget.total() == doctest::Approx(27.70));
    CHECK(sec.budget.total() == doctest::Approx(nc.sec_poc()));
}

TEST_CASE("Q102 budget total matches the published 33.70 POC") {
    const NamedCode &nc = named_code("Q102");
    CompiledSec sec = compile_sec(nc.build(), schedule_of(nc), Augment::BeaconLdu);
    CHECK(sec.budget.cyclic_shift == doctest::Approx(15.65));
    CHECK(sec.budget.total() == doctest::Approx(33.70));
}

TEST_CASE("Q54 cyclic shifts amount to 202 transport steps") {
    const NamedCode &nc = named_code("Q54");
    CompiledSec sec = compile_sec(nc.build(), schedule_of(nc), Augment::None);
    TransportCost tc = transport_cost(sec.circuit);
    CHECK(tc.steps == 202);
    CHECK(tc.poc == doctest::Approx(10.10));
}

TEST_CASE("transport cost of a shift-free circuit is zero") {
    Circuit c;
    c.num_qubits = 2;
    c.compute_moment();
    c.push_op(OpKind::PrepZ, 0);
    CHECK(transport_cost(c).steps == 0);
}

TEST_CASE("schedule validation") {
    ThreeRingCode code = bb4_toy();
    CHECK(validate_schedule(code, bb4_schedule()));
    // Family mismatch inside a pair is invalid.
    Schedule bad = {{'A', 1, 'B', 1}, {'A', 2, 'A', 2}, {'B', 1, 'B', 2}, {'B', 2, 'B', 1}};
    CHECK(!validate_schedule(code, bad));
    // Missing coverage is invalid.
    Schedule missing = {{'A', 1, 'A', 1}, {'A', 1, 'A', 2}, {'B', 1, 'B', 2}, {'B', 2, 'B', 1}};
    CHECK(!validate_schedule(code, missing));
    // Exhaustive check over all legal permuted schedules of the toy: every
    // pairing of A terms with A transposes and B terms with B transposes in
    // any round order is valid.
    for (int xa = 0; xa < 2; xa++) {
        for (int za = 0; za < 2; za++) {
            for (int xb = 0; xb < 2; xb++) {
                for (int zb = 0; zb < 2; zb++) {
                    Schedule s = {{'A', 1 + xa, 'A', 1 + za},
                                  {'A', 2 - xa, 'A', 2 - za},
                                  {'B', 1 + xb, 'B', 1 + zb},
                                  {'B', 2 - xb, 'B', 2 - zb}};
                    CHECK(validate_schedule(code, s));
                }
            }
        }
    }
    CHECK(validate_schedule(named_code("Q102").build(),
                            schedule_of(named_code("Q102"))));
    CHECK(validate_schedule(named_code("Q70").build(),
                            schedule_of(named_code("Q70"))));
}

TEST_CASE("every data and ancilla qubit sees exactly check_weight gates") {
    for (const char *name : {"Q54", "Q70", "Q102"}) {
        const NamedCode &nc = named_code(name);
        ThreeRingCode code = nc.build();
        CompiledSec sec = compile_sec(code, schedule_of(nc), Augment::None);
        std::map<uint32_t, size_t> touch;
        for (const auto &m : sec.circuit.moments) {
            for (const auto &op : m.ops) {
                if (op.kind == OpKind::CX || op.kind == OpKind::CZ) {
                    touch[op.q0]++;
                    touch[op.q1]++;
                }
            }
        }
        for (uint32_t q = 0; q < 2 * code.n; q++) {
            CHECK(touch[q] == code.check_weight);
        }
    }
}

TEST_CASE("compiled gates realize exactly the check matrices") {
    for (const char *name : {"Q54", "Q70"}) {
        const NamedCode &nc = named_code(name);
        ThreeRingCode code = nc.build();
        CompiledSec sec = compile_sec(code, schedule_of(nc), Augment::None);
        size_t n = code.n, half = n / 2;
        BitMatrix got_x(half, n), got_z(half, n);
        for (const auto &m : sec.circuit.moments) {
            for (const auto &op : m.ops) {
                if (op.kind == OpKind::CX) {
                    got_x.set(op.q0 - n, op.q1, true);
                } else if (op.kind == OpKind::CZ) {
                    got_z.set(op.q0 - n - half, op.q1, true);
                }
            }
        }
        CHECK(got_x == code.hx);
        CHECK(got_z == code.hz);
    }
}

TEST_CASE("rejects a != 2 and invalid schedules") {
    ThreeRingCode code = bb4_toy();
    Schedule bad = bb4_schedule();
    bad.pop_back();
    CHECK_THROWS_AS(compile_sec(code, bad, Augment::None), std::invalid_argument);
}

TEST_CASE("default schedule is valid and clean for every database code") {
    for (const auto &rec : load_code_database(WCK_DATA_DIR "/codes.db")) {
        ThreeRingCode code = rec.build();
        CAPTURE(rec.A);
        bool both_odd =
                code.A.terms.size() % 2 == 1 && code.B.terms.size() % 2 == 1;
        try {
            Schedule sched = default_schedule(code);
            CHECK(validate_schedule(code, sched));
            CHECK(schedule_measures_cleanly(code, sched));
        } catch (const std::runtime_error &) {
            // Some 3+3-term codes admit no cleanly-measuring maximally
            // parallel schedule; the exhaustive search reports that rather
            // than emitting an unsound circuit.
            CHECK(both_odd);
        }
    }
}

TEST_CASE("published schedules measure cleanly") {
    for (const char *name : {"Q54", "Q70", "Q102"}) {
        const NamedCode &nc = named_code(name);
        CHECK(schedule_measures_cleanly(nc.build(), schedule_of(nc)));
    }
}

TEST_CASE("circuit serialization is one op per line") {
    ThreeRingCode code = bb4_toy();
    CompiledSec sec = compile_sec(code, bb4_schedule(), Augment::Beacon);
    std::string text = sec.circuit.serialize();
    CHECK(text.find("prep_x") != std::string::npos);
    CHECK(text.find("transport") != std::string::npos);
    CHECK(text.find("beacon_check") != std::string::npos);
    CHECK(text.find(" | ") != std::string::npos);
}
