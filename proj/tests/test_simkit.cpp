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

#include <cmath>
#include <complex>

#include "wck/schedule.h"
#include "wck/simkit.h"

using namespace wck;

namespace {

// Tiny dense statevector simulator for <= 8 qubits, used as an oracle.
struct StateVec {
    size_t n;
    std::vector<std::complex<double>> amp;

    explicit StateVec(size_t n_) : n(n_), amp(size_t(1) << n_, 0) {
        amp[0] = 1;
    }
    void h(size_t q) {
        size_t bit = size_t(1) << q;
        double s = 1 / std::sqrt(2.0);
        for (size_t i = 0; i < amp.size(); i++) {
            if (!(i & bit)) {
                auto a = amp[i], b = amp[i | bit];
                amp[i] = s * (a + b);
                amp[i | bit] = s * (a - b);
            }
        }
    }
    void cx(size_t c, size_t t) {
        size_t cb = size_t(1) << c, tb = size_t(1) << t;
        for (size_t i = 0; i < amp.size(); i++) {
            if ((i & cb) && !(i & tb)) {
                std::swap(amp[i], amp[i | tb]);
            }
        }
    }
    void cz(size_t a, size_t b) {
        size_t ab = size_t(1) << a, bb = size_t(1) << b;
        for (size_t i = 0; i < amp.size(); i++) {
            if ((i & ab) && (i & bb)) {
                amp[i] = -amp[i];
            }
        }
    }
    double prob_one(size_t q) const {
        size_t bit = size_t(1) << q;
        double p = 0;
        for (size_t i = 0; i < amp.size(); i++) {
            if (i & bit) {
                p += std::norm(amp[i]);
            }
        }
        return p;
    }
};

// Independent single-fault propagation oracle over H/CX/CZ/prep/measure
// circuits: returns, per detector, the exact flip probability under
// independent first-order fault insertion.
struct FaultOracle {
    const Circuit &circ;
    const NoiseParams &noise;

    struct Frame {
        std::vector<uint8_t> x, z;
        std::vector<uint8_t> meas_flip;
    };

    explicit FaultOracle(const Circuit &c, const NoiseParams &np)
        : circ(c), noise(np) {}

    // Runs the circuit applying conjugation to a Pauli frame injected at
    // (moment_idx, op_idx, after=true). Returns measurement flips.
    std::vector<uint8_t> propagate(size_t inj_moment, size_t inj_op,
                                   uint8_t px, uint8_t pz, uint32_t q0,
                                   uint8_t px1, uint8_t pz1, uint32_t q1,
                                   bool flip_meas_at_injection = false) const {
        std::vector<uint8_t> x(circ.num_qubits, 0), z(circ.num_qubits, 0);
        std::vector<uint8_t> flips;
        bool active = false;
        for (size_t mi = 0; mi < circ.moments.size(); mi++) {
            const auto &m = circ.moments[mi];
            for (size_t oi = 0; oi < m.ops.size(); oi++) {
                const auto &op = m.ops[oi];
                if (active) {
                    switch (op.kind) {
                        case OpKind::H:
                            std::swap(x[op.q0], z[op.q0]);
                            break;
                        case OpKind::CX:
                            x[op.q1] ^= x[op.q0];
                            z[op.q0] ^= z[op.q1];
                            break;
                        case OpKind::CZ:
                            z[op.q1] ^= x[op.q0];
                            z[op.q0] ^= x[op.q1];
                            break;
                        case OpKind::PrepZ:
                        case OpKind::PrepX:
                            x[op.q0] = z[op.q0] = 0;
                            break;
                        case OpKind::MeasX:
                            flips.push_back(z[op.q0]);
                            z[op.q0] = 0;
                            break;
                        case OpKind::MeasZ:
                            flips.push_back(x[op.q0]);
                            x[op.q0] = 0;
                            break;
                        default:
                            break;
                    }
                } else if (op_records_measurement(op.kind)) {
                    flips.push_back(0);
                }
                if (mi == inj_moment && oi == inj_op) {
                    active = true;
                    x[q0] ^= px;
                    z[q0] ^= pz;
                    if (q1 != UINT32_MAX) {
                        x[q1] ^= px1;
                        z[q1] ^= pz1;
                    }
                    if (flip_meas_at_injection && !flips.empty()) {
                        flips.back() ^= 1;
                    }
                }
            }
        }
        return flips;
    }

    // Exact independent-fault detector flip probabilities:
    // P = (1 - prod(1 - 2 p_f)) / 2 over faults f that flip the detector.
    std::vector<double> detector_marginals() const {
        std::vector<double> prod(circ.detectors.size(), 1.0);
        auto absorb = [&](const std::vector<uint8_t> &flips, double pf) {
            for (size_t d = 0; d < circ.detectors.size(); d++) {
                uint8_t v = 0;
                for (uint32_t mi : circ.detectors[d].meas) {
                    v ^= flips[mi];
                }
                if (v) {
                    prod[d] *= 1 - 2 * pf;
                }
            }
        };
        for (size_t mi = 0; mi < circ.moments.size(); mi++) {
            const auto &m = circ.moments[mi];
            std::vector<uint8_t> touched(circ.num_qubits, 0);
            for (size_t oi = 0; oi < m.ops.size(); oi++) {
                const auto &op = m.ops[oi];
                touched[op.q0] = 1;
                if (op_is_two_qubit(op.kind)) {
                    touched[op.q1] = 1;
                }
                switch (op.kind) {
                    case OpKind::PrepZ:
                    case OpKind::PrepX:
                    case OpKind::H:
                        for (int pauli = 1; pauli < 4; pauli++) {
                            absorb(propagate(mi, oi, pauli & 1, pauli >> 1,
                                             op.q0, 0, 0, UINT32_MAX),
                                   noise.p_1q() / 3);
                        }
                        break;
                    case OpKind::CX:
                    case OpKind::CZ:
                        for (int pp = 1; pp < 16; pp++) {
                            int pa = pp & 3, pb = pp >> 2;
                            absorb(propagate(mi, oi, pa & 1, pa >> 1, op.q0,
                                             pb & 1, pb >> 1, op.q1),
                                   noise.p_2q() / 15);
                        }
                        break;
                    case OpKind::MeasX:
                    case OpKind::MeasZ:
                        absorb(propagate(mi, oi, 0, 0, op.q0, 0, 0, UINT32_MAX,
                                         true),
                               noise.p_meas_flip());
                        break;
                    default:
                        break;
                }
            }
            if (!m.is_transport && !m.ops.empty()) {
                for (uint32_t q = 0; q < circ.num_qubits; q++) {
                    if (touched[q]) {
                        continue;
                    }
                    // Idle depolarizing at the end of the moment.
                    size_t last_op = m.ops.size() - 1;
                    for (int pauli = 1; pauli < 4; pauli++) {
                        absorb(propagate(mi, last_op, pauli & 1, pauli >> 1, q,
                                         0, 0, UINT32_MAX),
                               noise.p_idle() / 3);
                    }
                }
            }
        }
        std::vector<double> out(prod.size());
        for (size_t d = 0; d < prod.size(); d++) {
            out[d] = (1 - prod[d]) / 2;
        }
        return out;
    }
};

Circuit foursix_sec_experiment(size_t rounds) {
    // [[4,2,2]] memory experiment in the Z basis: data 0..3, X ancilla 4,
    // Z ancilla 5.
    Circuit c;
    c.num_qubits = 6;
    c.compute_moment();
    for (uint32_t d = 0; d < 4; d++) {
        c.push_op(OpKind::PrepZ, d);
    }
    uint32_t meas = 0;
    std::vector<uint32_t> zmeas, xmeas;
    for (size_t r = 0; r < rounds; r++) {
        c.compute_moment();
        c.push_op(OpKind::PrepX, 4);
        c.push_op(OpKind::PrepX, 5);
        for (uint32_t d = 0; d < 4; d++) {
            c.compute_moment();
            c.push_op(OpKind::CX, 4, d);
            c.push_op(OpKind::CZ, 5, d);
        }
        c.compute_moment();
        c.push_op(OpKind::MeasX, 4);
        xmeas.push_back(meas++);
        c.push_op(OpKind::MeasX, 5);
        zmeas.push_back(meas++);
    }
    c.compute_moment();
    std::vector<uint32_t> data_meas;
    for (uint32_t d = 0; d < 4; d++) {
        c.push_op(OpKind::MeasZ, d);
        data_meas.push_back(meas++);
    }
    // Z-sector detectors.
    Detector d0;
    d0.meas = {zmeas[0]};
    c.detectors.push_back(d0);
    for (size_t r = 1; r < rounds; r++) {
        Detector d;
        d.meas = {zmeas[r - 1], zmeas[r]};
        c.detectors.push_back(d);
    }
    Detector df;
    df.meas = {zmeas[rounds - 1], data_meas[0], data_meas[1], data_meas[2],
               data_meas[3]};
    c.detectors.push_back(df);
    for (size_t r = 1; r < rounds; r++) {
        Detector d;
        d.meas = {xmeas[r - 1], xmeas[r]};
        c.detectors.push_back(d);
    }
    Observable obs;  // Zbar_1 = Z0 Z2
    obs.meas = {data_meas[0], data_meas[2]};
    c.observables.push_back(obs);
    return c;
}

}  // namespace

TEST_CASE("tableau statistics match the dense statevector oracle") {
    // A fixed H/CX/CZ circuit on 4 qubits; compare Z-measurement marginals.
    StateVec sv(4);
    sv.h(0);
    sv.cx(0, 1);
    sv.h(2);
    sv.cz(2, 1);
    sv.cx(1, 3);
    sv.h(1);
    sv.cz(0, 3);

    const size_t shots = 20000;
    std::vector<size_t> ones(4, 0);
    for (size_t s = 0; s < shots; s++) {
        Rng rng = Rng::for_stream(42, s);
        Tableau t(4);
        t.h(0);
        t.cx(0, 1);
        t.h(2);
        t.cz(2, 1);
        t.cx(1, 3);
        t.h(1);
        t.cz(0, 3);
        for (size_t q = 0; q < 4; q++) {
            ones[q] += t.measure_z(q, rng);
        }
    }
    for (size_t q = 0; q < 4; q++) {
        double expect = sv.prob_one(q);
        double got = double(ones[q]) / double(shots);
        double sigma = std::sqrt(std::max(expect * (1 - expect), 0.25) /
                                 double(shots));
        CHECK(std::abs(got - expect) < std::max(4 * sigma, 1e-9));
    }
}

TEST_CASE("noiseless codeword memory gives all-zero detectors") {
    ThreeRingCode code = construct(CodeFamily::BB, 3, 3, "1,x", "1,xy");
    Schedule sched = {{'B', 1, 'B', 2}, {'A', 1, 'A', 1}, {'A', 2, 'A', 2},
                      {'B', 2, 'B', 1}};
    MemoryExperiment exp =
            build_memory_experiment(code, sched, Augment::None, 4, 'Z');
    SampleStats stats = sample(exp.circuit, NoiseParams::noiseless(), 64, 3);
    CHECK(stats.any_detector_flip_shots == 0);
    for (uint64_t flips : stats.observable_flips) {
        CHECK(flips == 0);
    }
}

TEST_CASE("noiseless beacon+LDU memory is still sound") {
    ThreeRingCode code = construct(CodeFamily::BB, 3, 3, "1,x", "1,xy");
    Schedule sched = {{'B', 1, 'B', 2}, {'A', 1, 'A', 1}, {'A', 2, 'A', 2},
                      {'B', 2, 'B', 1}};
    MemoryExperiment exp =
            build_memory_experiment(code, sched, Augment::BeaconLdu, 3, 'Z');
    SampleStats stats = sample(exp.circuit, NoiseParams::noiseless(), 32, 9);
    CHECK(stats.any_detector_flip_shots == 0);
}

TEST_CASE("single injected X flips exactly the supporting Z detectors") {
    ThreeRingCode code = construct(CodeFamily::BB, 3, 3, "1,x", "1,xy");
    Schedule sched = {{'B', 1, 'B', 2}, {'A', 1, 'A', 1}, {'A', 2, 'A', 2},
                      {'B', 2, 'B', 1}};
    for (uint32_t target : {0u, 5u, 11u}) {
        MemoryExperiment exp =
                build_memory_experiment(code, sched, Augment::None, 3, 'Z');
        // Inject X on a data qubit right after preparation.
        Moment inj;
        inj.is_transport = false;
        inj.ops.push_back({OpKind::PauliX, target, 0});
        exp.circuit.moments.insert(exp.circuit.moments.begin() + 1, inj);
        ShotResult r = sample_shot(exp.circuit, NoiseParams::noiseless(), 1, 0);
        // Expected: the round-0 Z detectors of the checks containing the
        // qubit flip; later difference rounds cancel.
        for (size_t d = 0; d < exp.circuit.detectors.size(); d++) {
            const Detector &det = exp.circuit.detectors[d];
            bool expect = det.sector == 0 && det.round == 0 &&
                          code.hz.get(det.check, target);
            CHECK(r.detectors[d] == uint8_t(expect));
        }
    }
}

TEST_CASE("[[4,2,2]] detector marginals match the first-order oracle") {
    Circuit circ = foursix_sec_experiment(1);
    NoiseParams noise{1e-2, 0, 0};
    FaultOracle oracle(circ, noise);
    std::vector<double> expect = oracle.detector_marginals();
    const size_t shots = 100000;
    SampleStats stats = sample(circ, noise, shots, 2026);
    REQUIRE(stats.detector_flips.size() == expect.size());
    for (size_t d = 0; d < expect.size(); d++) {
        double got = double(stats.detector_flips[d]) / double(shots);
        double sigma = std::sqrt(expect[d] * (1 - expect[d]) / double(shots));
        CAPTURE(d);
        CAPTURE(expect[d]);
        CAPTURE(got);
        CHECK(std::abs(got - expect[d]) <= 3 * sigma + 3e-4);
    }
}

TEST_CASE("compound Poisson: zero rate is a point mass") {
    LossDistribution dist = compound_poisson_loss(140, 27.70, 0);
    CHECK(dist.pmf[0] == 1.0);
    CHECK(dist.mean() == 0.0);
}

TEST_CASE("compound Poisson reproduces the published Q70 tail entries") {
    LossDistribution dist = compound_poisson_loss(140, 27.70, 1e-7);
    CHECK(dist.total() == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(std::abs(dist.prob(1) - 1.30e-5) / 1.30e-5 < 0.10);
    CHECK(std::abs(dist.prob(3) - 4.07e-4) / 4.07e-4 < 0.10);
}

TEST_CASE("compound Poisson two-event tail matches direct Monte Carlo") {
    const double p_loss = 2e-4;  // inflated so P(6) is samplable
    LossDistribution dist = compound_poisson_loss(140, 27.70, p_loss);
    double lambda = p_loss * 140 * 27.70;
    Rng rng(77);
    const size_t shots = 2000000;
    size_t six = 0;
    for (size_t s = 0; s < shots; s++) {
        // Sample X ~ Poisson(lambda) by inversion.
        double u = rng.next_double();
        double acc = std::exp(-lambda), term = acc;
        size_t xx = 0;
        while (u > acc && xx < 40) {
            xx++;
            term *= lambda / double(xx);
            acc += term;
        }
        size_t total = 0;
        for (size_t j = 0; j < xx; j++) {
            total += rng.bernoulli(1.0 / 27.70) ? 1 : 3;
        }
        six += total == 6;
    }
    double mc = double(six) / double(shots);
    double sigma = std::sqrt(mc * (1 - mc) / double(shots));
    CHECK(std::abs(dist.prob(6) - mc) <= 4 * sigma + 1e-7);
}

TEST_CASE("ansatz fit recovers synthetic parameters") {
    std::vector<std::pair<double, double>> pts;
    for (double p : {1e-3, 2e-3, 5e-3, 8e-3}) {
        pts.push_back({p, std::pow(p, 2.0)});  // d_circ = 3, (0,0,0)
    }
    AnsatzFit fit = fit_ansatz(pts, 3);
    CHECK(std::abs(fit.alpha) < 1e-6);
    CHECK(std::abs(fit.beta) < 1e-6);
    CHECK(std::abs(fit.zeta) < 1e-6);
}

TEST_CASE("published Q102 ansatz evaluates to the published rates") {
    AnsatzFit fit;
    fit.alpha = 6810;
    fit.beta = 656;
    fit.zeta = 19.3;
    fit.d_circ = 9;
    double at4 = fit.eval(1e-4);
    CHECK(std::abs(at4 - 2.50e-12) / 2.50e-12 < 0.05);
    // At p = 1e-3 the fit sits below the measured 5.28e-7; the gap is a
    // property of the published fit itself.
    double at3 = fit.eval(1e-3);
    CHECK(at3 == doctest::Approx(4.7e-7).epsilon(0.02));
}

TEST_CASE("reload overhead bounds") {
    CHECK(reload_overhead(1, 0, 33.70) == 0.0);
    CHECK(reload_overhead(1, 8.52e-4, 33.70) ==
          doctest::Approx(3.8e-6).epsilon(0.01));
    CHECK(reload_overhead(100, 4.20e-4, 27.70) ==
          doctest::Approx(2.3e-4).epsilon(0.02));
}

TEST_CASE("beacon circuits detect and replace lost qubits") {
    ThreeRingCode code = construct(CodeFamily::BB, 3, 3, "1,x", "1,xy");
    Schedule sched = {{'B', 1, 'B', 2}, {'A', 1, 'A', 1}, {'A', 2, 'A', 2},
                      {'B', 2, 'B', 1}};
    MemoryExperiment exp =
            build_memory_experiment(code, sched, Augment::Beacon, 2, 'Z');
    NoiseParams noise{0, 2e-4, 0};
    SampleStats stats = sample(exp.circuit, noise, 4000, 5);
    // Loss events occur and are tallied; per-shot totals land in the
    // histogram (bucket 0 dominates, some 1s and 3s).
    CHECK(stats.lost_histogram[0] > 3000);
    uint64_t nonzero = 0;
    for (size_t b = 1; b < stats.lost_histogram.size(); b++) {
        nonzero += stats.lost_histogram[b];
    }
    CHECK(nonzero > 0);
}

TEST_CASE("beacon+LDU structurally bounds leakage dwell to two SECs") {
    const NamedCode &nc = named_code("Q54");
    ThreeRingCode code = nc.build();
    CompiledSec sec = compile_sec(code, schedule_of(nc), Augment::BeaconLdu);
    // Every data qubit is LDU-checked and every ancilla measured once per
    // SEC, so a leak flagged in SEC t is reset before SEC t+2.
    std::vector<uint8_t> ldu(code.n, 0), meas(code.n, 0);
    for (const auto &m : sec.circuit.moments) {
        for (const auto &op : m.ops) {
            if (op.kind == OpKind::TeleportLdu) {
                ldu[op.q0] = 1;
            }
            if (op.kind == OpKind::MeasX) {
                meas[op.q0 - code.n] = 1;
            }
        }
    }
    for (size_t q = 0; q < code.n; q++) {
        CHECK(ldu[q] == 1);
        CHECK(meas[q] == 1);
    }
}
