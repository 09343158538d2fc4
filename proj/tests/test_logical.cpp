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

#include "wck/logical.h"
#include "wck/util.h"

using namespace wck;

namespace {

ThreeRingCode foursix() {
    // [[4,2,2]] realized as the GB code with l=2 and A = B = 1 + x.
    return construct(CodeFamily::GB, 2, 1, "1,x", "1,x");
}

CliffordFrame random_frame(size_t k, Rng &rng, size_t depth = 12) {
    CliffordFrame f(k);
    for (size_t step = 0; step < depth; step++) {
        switch (rng.next_below(3)) {
            case 0:
                f.update(CliffordFrame::hadamard(k, rng.next_below(k)));
                break;
            case 1:
                f.update(CliffordFrame::phase_gate(k, rng.next_below(k)));
                break;
            default: {
                size_t a = rng.next_below(k);
                size_t b = rng.next_below(k);
                if (a != b) {
                    f.update(CliffordFrame::cx(k, a, b));
                }
            }
        }
    }
    return f;
}

PauliOperator random_pauli(size_t k, Rng &rng) {
    PauliOperator p(k);
    for (size_t q = 0; q < k; q++) {
        p.set_x(q, rng.bernoulli(0.5));
        p.set_z(q, rng.bernoulli(0.5));
    }
    return p;
}

}  // namespace

TEST_CASE("identity frame conjugation is the identity") {
    CliffordFrame f(3);
    Rng rng(1);
    for (int t = 0; t < 20; t++) {
        PauliOperator p = random_pauli(3, rng);
        CHECK(f.conjugate(p) == p);
    }
}

TEST_CASE("hadamard frame retargets X to Z") {
    CliffordFrame f = CliffordFrame::hadamard(2, 0);
    PauliOperator x(2);
    x.set_x(0, true);
    PauliOperator z(2);
    z.set_z(0, true);
    CHECK(f.conjugate(x).equal_up_to_phase(z));
    CHECK(f.conjugate(z).equal_up_to_phase(x));
}

TEST_CASE("frame round trips through its inverse for 1000 random frames") {
    Rng rng(7);
    for (int t = 0; t < 1000; t++) {
        size_t k = 1 + rng.next_below(4);
        CliffordFrame u = random_frame(k, rng);
        CHECK(u.is_symplectic());
        CliffordFrame inv = u.inverse();
        PauliOperator p = random_pauli(k, rng);
        PauliOperator round = u.conjugate(inv.conjugate(p));
        CHECK(round == p);
    }
}

TEST_CASE("frame update composes correctly") {
    // frame(V) then update by W retargets P to (WV)^dag P (WV).
    Rng rng(13);
    for (int t = 0; t < 200; t++) {
        size_t k = 2 + rng.next_below(3);
        CliffordFrame v = random_frame(k, rng, 6);
        CliffordFrame w = random_frame(k, rng, 6);
        CliffordFrame combined = v;
        combined.update(w);
        PauliOperator p = random_pauli(k, rng);
        CHECK(combined.conjugate(p) == v.conjugate(w.conjugate(p)));
    }
}

TEST_CASE("stabilizer_optimized on the [[4,2,2]] code") {
    ThreeRingCode code = foursix();
    REQUIRE(code.n == 4);
    REQUIRE(code.k == 2);
    // A stabilizer optimizes to the identity.
    PauliOperator s(4);
    for (size_t q = 0; q < 4; q++) {
        s.set_x(q, true);
    }
    OptimizedRep rep = stabilizer_optimized(s, code);
    CHECK(rep.exact);
    CHECK(rep.rep.weight() == 0);
    // Weight-2 logical keeps weight 2 over the 4-element stabilizer group.
    PauliOperator x12(4);
    x12.set_x(0, true);
    x12.set_x(1, true);
    OptimizedRep rep2 = stabilizer_optimized(x12, code);
    CHECK(rep2.rep.weight() == 2);
    // Anticommuting input throws.
    PauliOperator bad(4);
    bad.set_z(0, true);
    CHECK_THROWS_AS(stabilizer_optimized(bad, code), std::invalid_argument);
}

TEST_CASE("accessible set of Q54 has 15 operators and width 16") {
    ThreeRingCode code = named_code("Q54").build();
    SymplecticBasis basis = symplectic_basis(code.hx, code.hz, true);
    AccessibleSet acc = accessible_set(code, basis, 2, 300, 31);
    CHECK(acc.count == 15);
    // The width bounds the injected-Y weight used by the CH2 factory model.
    CHECK(acc.block_width == 16);
    // The lightest logical class weighs exactly the code distance.
    size_t min_w = code.n;
    for (const auto &[key, rep] : acc.table) {
        min_w = std::min(min_w, rep.weight());
    }
    CHECK(min_w == 10);
}

TEST_CASE("accessible representatives commute with checks and keep class") {
    ThreeRingCode code = named_code("Q54").build();
    SymplecticBasis basis = symplectic_basis(code.hx, code.hz, true);
    AccessibleSet acc = accessible_set(code, basis, 2, 200, 31);
    for (const auto &[key, rep] : acc.table) {
        for (size_t r = 0; r < code.hx.rows(); r++) {
            PauliOperator sx(code.n), sz(code.n);
            for (size_t q = 0; q < code.n; q++) {
                sx.set_x(q, code.hx.get(r, q));
                sz.set_z(q, code.hz.get(r, q));
            }
            CHECK(rep.commutes(sx));
            CHECK(rep.commutes(sz));
        }
        for (size_t i = 0; i < 2; i++) {
            CHECK(rep.commutes(basis.z_ops[i]) == (key[i] == 0));
            CHECK(rep.commutes(basis.x_ops[i]) == (key[2 + i] == 0));
        }
    }
}

TEST_CASE("tabu leaves an already-minimal [[4,2,2]] basis at weight 2") {
    ThreeRingCode code = foursix();
    SymplecticBasis basis = symplectic_basis(code.hx, code.hz, true);
    TabuResult res = tabu_reduce_basis(basis, code, 20, 10, false, 5, 50);
    CHECK(res.max_weight == 2);
}

TEST_CASE("tabu reduces Q70 to a weight-9 basis") {
    ThreeRingCode code = named_code("Q70").build();
    SymplecticBasis basis = symplectic_basis(code.hx, code.hz, true);
    TabuResult res = tabu_reduce_basis(basis, code, 60, 50, false, 23, 300);
    CHECK(res.max_weight == 9);
    // Output basis stays symplectic: spot-check the pairing.
    for (size_t i = 0; i < res.basis.k(); i++) {
        for (size_t j = 0; j < res.basis.k(); j++) {
            CHECK(res.basis.x_ops[i].commutes(res.basis.z_ops[j]) == (i != j));
        }
    }
}

TEST_CASE("tabu with the self-similarity rule reaches weight 11 on Q54") {
    ThreeRingCode code = named_code("Q54").build();
    SymplecticBasis basis = symplectic_basis(code.hx, code.hz, true);
    TabuResult res = tabu_reduce_basis(basis, code, 40, 50, true, 23, 300);
    CHECK(res.max_weight == 11);
}

TEST_CASE("cyclic gate actions") {
    ThreeRingCode q70 = named_code("Q70").build();
    SymplecticBasis b70 = symplectic_basis(q70.hx, q70.hz, true);
    CyclicGateAction trivial = cyclic_gate_action(q70, b70, 0, 0);
    CHECK(trivial.g == BitMatrix::identity(6));
    CHECK(trivial.order == 1);
    CyclicGateAction act = cyclic_gate_action(q70, b70, 1, 0);
    CHECK(act.order == 7);
    // G (G^-1)^T^T = I by construction; assert the full block shape too.
    BitMatrix gig(6, 6);
    for (size_t i = 0; i < 6; i++) {
        for (size_t j = 0; j < 6; j++) {
            gig.set(i, j, act.full.get(6 + i, 6 + j));
        }
    }
    CHECK(act.g * gig.transposed() == BitMatrix::identity(6));

    ThreeRingCode q102 = named_code("Q102").build();
    SymplecticBasis b102 = symplectic_basis(q102.hx, q102.hz, true);
    CHECK(cyclic_gate_action(q102, b102, 1, 0).order == 51);
}

TEST_CASE("accessible Clifford closure holds trivially at full width") {
    // With w = k every logical Pauli is accessible, so conjugating any
    // member by any Clifford stays accessible.
    Rng rng(3);
    for (int t = 0; t < 50; t++) {
        CliffordFrame u = random_frame(6, rng);
        PauliOperator p = random_pauli(6, rng);
        PauliOperator q = u.conjugate(p);
        CHECK(q.n == 6);  // still a 6-qubit logical Pauli, hence accessible
    }
}
