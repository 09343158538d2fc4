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

#include "wck/schedule.h"

#include <algorithm>
#include <stdexcept>

#include "wck/gf2.h"

namespace wck {

Augment augment_from_name(const std::string &s) {
    if (s == "none") {
        return Augment::None;
    }
    if (s == "beacon") {
        return Augment::Beacon;
    }
    if (s == "beacon+ldu" || s == "beacon+LDU") {
        return Augment::BeaconLdu;
    }
    throw std::invalid_argument("unknown augment '" + s + "'");
}

namespace {

const Monomial &term_of(const ThreeRingCode &code, char family, int index) {
    const auto &poly = family == 'A' ? code.A : code.B;
    if (index < 1 || size_t(index) > poly.terms.size()) {
        throw std::invalid_argument("schedule term index out of range");
    }
    return poly.terms[index - 1];
}

// The monomial actually visited by the Z ancillas is the transpose.
Monomial z_term_of(const ThreeRingCode &code, char family, int index) {
    const Monomial &t = term_of(code, family, index);
    return {(code.b - t.i) % code.b, (code.c - t.j) % code.c};
}

}  // namespace

bool validate_schedule(const ThreeRingCode &code, const Schedule &sched) {
    if (sched.size() != code.check_weight) {
        return false;
    }
    size_t na = code.A.terms.size();
    size_t nb = code.B.terms.size();
    std::vector<uint8_t> xa(na, 0), xb(nb, 0), za(na, 0), zb(nb, 0);
    for (const auto &p : sched) {
        if (p.x_family != p.z_family) {
            return false;
        }
        if (p.x_family != 'A' && p.x_family != 'B') {
            return false;
        }
        auto &xcover = p.x_family == 'A' ? xa : xb;
        auto &zcover = p.z_family == 'A' ? za : zb;
        size_t limit = p.x_family == 'A' ? na : nb;
        if (p.x_index < 1 || size_t(p.x_index) > limit || p.z_index < 1 ||
            size_t(p.z_index) > limit) {
            return false;
        }
        if (xcover[p.x_index - 1]++ || zcover[p.z_index - 1]++) {
            return false;
        }
    }
    for (uint8_t v : xa) {
        if (!v) return false;
    }
    for (uint8_t v : xb) {
        if (!v) return false;
    }
    for (uint8_t v : za) {
        if (!v) return false;
    }
    for (uint8_t v : zb) {
        if (!v) return false;
    }
    return true;
}

bool schedule_measures_cleanly(const ThreeRingCode &code,
                               const Schedule &sched) {
    if (!validate_schedule(code, sched)) {
        return false;
    }
    int b = code.b, c = code.c;
    size_t half = code.half();
    size_t w = sched.size();
    // visit_x[d] = round when the X ancilla of check row 0 gates qubit d;
    // the code is translation invariant, so row-0 against all Z rows covers
    // every (X row, Z row) pair up to a shift.
    // We still check all pairs directly for robustness.
    std::vector<std::vector<int>> visit_x(half, std::vector<int>(code.n, -1));
    std::vector<std::vector<int>> visit_z(half, std::vector<int>(code.n, -1));
    for (size_t tau = 0; tau < w; tau++) {
        const auto &p = sched[tau];
        Monomial xt = term_of(code, p.x_family, p.x_index);
        Monomial zt = z_term_of(code, p.z_family, p.z_index);
        bool a_family = p.x_family == 'A';
        for (int v = 0; v < b; v++) {
            for (int z = 0; z < c; z++) {
                size_t row = size_t(v * c + z);
                size_t dx = size_t(((v + xt.i) % b) * c + (z + xt.j) % c);
                visit_x[row][a_family ? dx : half + dx] = int(tau);
                size_t dz = size_t(((v + zt.i) % b) * c + (z + zt.j) % c);
                visit_z[row][a_family ? half + dz : dz] = int(tau);
            }
        }
    }
    for (size_t ra = 0; ra < half; ra++) {
        for (size_t rb = 0; rb < half; rb++) {
            int crossings = 0;
            bool overlap = false;
            for (size_t d = 0; d < code.n; d++) {
                if (visit_x[ra][d] >= 0 && visit_z[rb][d] >= 0) {
                    overlap = true;
                    crossings ^= visit_x[ra][d] < visit_z[rb][d];
                }
            }
            (void)overlap;
            if (crossings) {
                return false;
            }
        }
    }
    return true;
}

Schedule default_schedule(const ThreeRingCode &code) {
    int na = int(code.A.terms.size());
    int nb = int(code.B.terms.size());
    // Palindromic family string with Z entries in reversed X order: crossing
    // counts then pair up symmetrically, so the schedule is always clean.
    auto build = [&](const std::vector<char> &fams) {
        Schedule sched(fams.size());
        int ia = 0, ib = 0;
        std::vector<int> term_at(fams.size());
        for (size_t t = 0; t < fams.size(); t++) {
            term_at[t] = fams[t] == 'A' ? ++ia : ++ib;
        }
        for (size_t t = 0; t < fams.size(); t++) {
            size_t rt = fams.size() - 1 - t;
            sched[t] = {fams[t], term_at[t], fams[rt], term_at[rt]};
        }
        return sched;
    };
    std::vector<char> fams;
    if (nb % 2 == 0) {
        fams.insert(fams.end(), nb / 2, 'B');
        fams.insert(fams.end(), na, 'A');
        fams.insert(fams.end(), nb / 2, 'B');
    } else if (na % 2 == 0) {
        fams.insert(fams.end(), (nb - 1) / 2, 'B');
        fams.insert(fams.end(), na / 2, 'A');
        fams.push_back('B');
        fams.insert(fams.end(), na / 2, 'A');
        fams.insert(fams.end(), (nb - 1) / 2, 'B');
    }
    if (!fams.empty()) {
        Schedule sched = build(fams);
        if (schedule_measures_cleanly(code, sched)) {
            return sched;
        }
    }
    // Both term counts odd (or the symmetric build unexpectedly failed):
    // search family strings and Z-side term assignments.
    std::vector<char> base(size_t(na), 'A');
    base.insert(base.end(), size_t(nb), 'B');
    std::sort(base.begin(), base.end());
    do {
        std::vector<int> za(na), zb(nb);
        for (int i = 0; i < na; i++) {
            za[i] = i + 1;
        }
        for (int i = 0; i < nb; i++) {
            zb[i] = i + 1;
        }
        do {
            do {
                Schedule sched;
                int ia = 0, ib = 0, ja = 0, jb = 0;
                for (char f : base) {
                    if (f == 'A') {
                        sched.push_back({'A', ++ia, 'A', za[ja++]});
                    } else {
                        sched.push_back({'B', ++ib, 'B', zb[jb++]});
                    }
                }
                if (schedule_measures_cleanly(code, sched)) {
                    return sched;
                }
            } while (std::next_permutation(zb.begin(), zb.end()));
        } while (std::next_permutation(za.begin(), za.end()));
    } while (std::next_permutation(base.begin(), base.end()));
    throw std::runtime_error("no cleanly-measuring schedule found");
}

Schedule schedule_of(const NamedCode &nc) {
    Schedule sched;
    for (size_t i = 0; i < nc.sched_x.size(); i++) {
        sched.push_back({nc.sched_x[i].first, nc.sched_x[i].second,
                         nc.sched_z[i].first, nc.sched_z[i].second});
    }
    return sched;
}

uint32_t shift_steps(const ThreeRingCode &code, int r, int s_x, int t_x,
                     int s_z, int t_z) {
    int b = code.b, c = code.c;
    auto norm = [](int v, int ring) { return ((v % ring) + ring) % ring; };
    auto disp = [&](int s, int t) {
        int sm = norm(s, b);
        int tm = norm(t, c);
        return uint32_t(std::min(sm, b - sm) * c + std::min(tm, c - tm));
    };
    uint32_t lap = uint32_t(norm(r, 2)) * uint32_t(b) * uint32_t(c);
    return lap + std::max(disp(s_x, t_x), disp(s_z, t_z));
}

CompiledSec compile_sec(const ThreeRingCode &code, const Schedule &sched,
                        Augment augment) {
    if (code.a != 2) {
        throw std::invalid_argument("syndrome extraction requires a = 2");
    }
    if (!validate_schedule(code, sched)) {
        throw std::invalid_argument("invalid schedule");
    }
    int b = code.b, c = code.c;
    uint32_t half = uint32_t(code.half());
    uint32_t n = uint32_t(code.n);

    Circuit circ;
    circ.num_qubits = 2 * n;

    bool beacon = augment != Augment::None;
    bool ldu = augment == Augment::BeaconLdu;

    if (ldu) {
        auto &m = circ.compute_moment(BudgetTag::Reset);
        (void)m;
        for (uint32_t d = 0; d < n; d++) {
            circ.push_op(OpKind::TeleportLdu, d, n + d);
        }
        // Data/ancilla rows are exchanged through one transport step.
        circ.transport_moment(1, BudgetTag::LossLeak);
    }

    circ.compute_moment(BudgetTag::Reset);
    for (uint32_t a = n; a < 2 * n; a++) {
        circ.push_op(OpKind::PrepX, a);
    }

    uint32_t shift_total = 0;
    for (size_t tau = 0; tau < sched.size(); tau++) {
        const auto &pair = sched[tau];
        Monomial xt = term_of(code, pair.x_family, pair.x_index);
        Monomial zt = z_term_of(code, pair.z_family, pair.z_index);
        if (tau > 0) {
            const auto &prev = sched[tau - 1];
            Monomial xp = term_of(code, prev.x_family, prev.x_index);
            Monomial zp = z_term_of(code, prev.z_family, prev.z_index);
            int r = prev.x_family != pair.x_family ? 1 : 0;
            uint32_t steps = shift_steps(code, r, xt.i - xp.i, xt.j - xp.j,
                                         zt.i - zp.i, zt.j - zp.j);
            if (steps > 0) {
                circ.transport_moment(steps, BudgetTag::Shift);
                shift_total += steps;
            }
        }
        circ.compute_moment(BudgetTag::Gates);
        bool x_on_left = pair.x_family == 'A';
        for (int v = 0; v < b; v++) {
            for (int z = 0; z < c; z++) {
                uint32_t anc_x = n + uint32_t(v * c + z);
                uint32_t dx = uint32_t(((v + xt.i) % b) * c + (z + xt.j) % c);
                circ.push_op(OpKind::CX, anc_x, x_on_left ? dx : half + dx);
                uint32_t anc_z = n + half + uint32_t(v * c + z);
                uint32_t dz = uint32_t(((v + zt.i) % b) * c + (z + zt.j) % c);
                // Z ancillas visit the transposed polynomial on the opposite
                // half: A^T acts on the right block of HZ, B^T on the left.
                circ.push_op(OpKind::CZ, anc_z, x_on_left ? half + dz : dz);
            }
        }
        if (beacon) {
            circ.compute_moment(BudgetTag::LossLeak);
            for (uint32_t d = 0; d < n; d++) {
                circ.push_op(OpKind::BeaconCheck, d);
            }
        }
    }

    circ.compute_moment(BudgetTag::Meas);
    for (uint32_t a = n; a < 2 * n; a++) {
        circ.push_op(OpKind::MeasX, a);
    }

    CompiledSec out;
    out.budget.ancilla_reset = 1;
    out.budget.gate_layers = double(sched.size());
    out.budget.cyclic_shift = shift_total / 20.0;
    out.budget.loss_leak_checks =
            (beacon ? double(sched.size()) : 0.0) + (ldu ? 1 / 20.0 : 0.0);
    out.budget.measurement = 1;
    out.circuit = std::move(circ);
    return out;
}

TransportCost transport_cost(const Circuit &circuit) {
    TransportCost tc;
    tc.steps = circuit.total_transport_steps();
    tc.poc = tc.steps / 20.0;
    return tc;
}

MemoryExperiment build_memory_experiment(const ThreeRingCode &code,
                                         const Schedule &sched, Augment augment,
                                         size_t rounds, char basis) {
    if (rounds < 1) {
        throw std::invalid_argument("memory experiment needs >= 1 round");
    }
    if (basis != 'Z' && basis != 'X') {
        throw std::invalid_argument("basis must be 'Z' or 'X'");
    }
    CompiledSec sec = compile_sec(code, sched, augment);
    uint32_t n = uint32_t(code.n);
    uint32_t half = n / 2;

    MemoryExperiment exp;
    exp.rounds = rounds;
    exp.n = n;
    exp.num_checks = half;
    exp.deterministic_rounds = rounds + 1;

    Circuit &circ = exp.circuit;
    circ.num_qubits = 2 * n;
    circ.compute_moment(BudgetTag::Other);
    for (uint32_t d = 0; d < n; d++) {
        circ.push_op(basis == 'Z' ? OpKind::PrepZ : OpKind::PrepX, d);
    }
    for (size_t r = 0; r < rounds; r++) {
        circ.append(sec.circuit);
    }
    circ.compute_moment(BudgetTag::Other);
    for (uint32_t d = 0; d < n; d++) {
        circ.push_op(basis == 'Z' ? OpKind::MeasZ : OpKind::MeasX, d);
    }

    // Measurement layout: each SEC records the n ancilla bits in index order
    // (X checks first, then Z checks); the final data measurement appends n
    // more bits.
    auto anc_meas = [&](size_t round, bool x_sector, uint32_t check) {
        return uint32_t(round * n + (x_sector ? 0 : half) + check);
    };
    uint32_t final_base = uint32_t(rounds * n);

    bool det_is_z = basis == 'Z';
    const BitMatrix &det_checks = det_is_z ? code.hz : code.hx;
    // Deterministic sector: rounds 0..rounds-1 from ancilla outcomes, plus a
    // terminal round reconstructed from the data measurement.
    for (uint32_t chk = 0; chk < half; chk++) {
        Detector d0;
        d0.meas = {anc_meas(0, !det_is_z, chk)};
        d0.sector = 0;
        d0.round = 0;
        d0.check = chk;
        circ.detectors.push_back(d0);
    }
    for (size_t r = 1; r < rounds; r++) {
        for (uint32_t chk = 0; chk < half; chk++) {
            Detector d;
            d.meas = {anc_meas(r - 1, !det_is_z, chk),
                      anc_meas(r, !det_is_z, chk)};
            d.sector = 0;
            d.round = uint32_t(r);
            d.check = chk;
            circ.detectors.push_back(d);
        }
    }
    for (uint32_t chk = 0; chk < half; chk++) {
        Detector d;
        d.meas = {anc_meas(rounds - 1, !det_is_z, chk)};
        for (uint32_t q = 0; q < n; q++) {
            if (det_checks.get(chk, q)) {
                d.meas.push_back(final_base + q);
            }
        }
        d.sector = 0;
        d.round = uint32_t(rounds);
        d.check = chk;
        circ.detectors.push_back(d);
    }
    // Complementary sector: interior differences only (the first round's
    // outcomes are nondeterministic).
    for (size_t r = 1; r < rounds; r++) {
        for (uint32_t chk = 0; chk < half; chk++) {
            Detector d;
            d.meas = {anc_meas(r - 1, det_is_z, chk), anc_meas(r, det_is_z, chk)};
            d.sector = 1;
            d.round = uint32_t(r);
            d.check = chk;
            circ.detectors.push_back(d);
        }
    }

    SymplecticBasis basis_ops = symplectic_basis(code.hx, code.hz, true);
    for (size_t i = 0; i < basis_ops.k(); i++) {
        const PauliOperator &op =
                det_is_z ? basis_ops.z_ops[i] : basis_ops.x_ops[i];
        Observable obs;
        for (uint32_t q = 0; q < n; q++) {
            if ((det_is_z && op.z_bit(q)) || (!det_is_z && op.x_bit(q))) {
                obs.meas.push_back(final_base + q);
            }
        }
        circ.observables.push_back(obs);
    }
    return exp;
}

}  // namespace wck
