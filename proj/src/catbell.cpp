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

#include "wck/catbell.h"

#include <cmath>
#include <mutex>
#include <stdexcept>

#include "wck/util.h"

namespace wck {

size_t cat_verification_rounds(double eps, double p) {
    if (eps <= 0 || eps >= 1 || p <= 0 || 2 * p >= 1) {
        throw std::invalid_argument("cat rounds need 0 < eps < 1, 0 < 2p < 1");
    }
    return size_t(std::ceil(std::log(eps) / (2 * std::log(2 * p)) - 1e-12));
}

size_t CatSpec::rounds() const {
    return m >= 0 ? size_t(m) : cat_verification_rounds(eps, p);
}

namespace {

size_t log2_ceil(size_t w) {
    size_t v = 0;
    while ((size_t(1) << v) < w) {
        v++;
    }
    return v;
}

size_t log2_floor(size_t w) {
    size_t v = 0;
    while ((size_t(2) << v) <= w) {
        v++;
    }
    return v;
}

// Two-row ring geometry of the cat register: top sites 0..w/2-1 left to
// right, bottom sites w/2..w-1 left to right; the clockwise ring runs along
// the top row and back right-to-left along the bottom.
struct CatRing {
    size_t w;
    std::vector<uint32_t> qubit_at_ring;  // ring position -> qubit id

    explicit CatRing(size_t w_) : w(w_), qubit_at_ring(w_) {
        for (size_t p = 0; p < w; p++) {
            qubit_at_ring[p] = uint32_t(site_of_ring(p));
        }
    }
    size_t site_of_ring(size_t p) const {
        return p < w / 2 ? p : 3 * w / 2 - 1 - p;
    }
    size_t ring_of_site(size_t s) const {
        return s < w / 2 ? s : 3 * w / 2 - 1 - s;
    }
    uint32_t qubit_at_site(size_t s) const {
        return qubit_at_ring[ring_of_site(s)];
    }
    void shift_clockwise(size_t steps) {
        std::vector<uint32_t> next(w);
        for (size_t p = 0; p < w; p++) {
            next[(p + steps) % w] = qubit_at_ring[p];
        }
        qubit_at_ring = std::move(next);
    }
};

void emit_prep(Circuit &circ, CatRing &ring, size_t w) {
    circ.compute_moment();
    circ.push_op(OpKind::PrepX, ring.qubit_at_site(0));
    for (size_t s = 1; s < w; s++) {
        circ.push_op(OpKind::PrepZ, ring.qubit_at_site(s));
    }
    size_t c = log2_floor(w) - 1;
    for (size_t i = 0; i <= c; i++) {
        circ.compute_moment();
        for (size_t j = 0; j < (size_t(1) << i); j++) {
            circ.push_op(OpKind::CX, ring.qubit_at_site(j),
                         ring.qubit_at_site(w / 2 + j));
        }
        if (i < c) {
            circ.transport_moment(uint32_t(size_t(1) << i), BudgetTag::Other);
            ring.shift_clockwise(size_t(1) << i);
        }
    }
    if ((size_t(2) << c) < w) {
        size_t steps = w / 2 - (size_t(1) << c);
        circ.transport_moment(uint32_t(steps), BudgetTag::Other);
        ring.shift_clockwise(steps);
        circ.compute_moment();
        for (size_t j = (size_t(2) << c) - w / 2; j < w / 2; j++) {
            circ.push_op(OpKind::CX, ring.qubit_at_site(j),
                         ring.qubit_at_site(w / 2 + j));
        }
    }
}

}  // namespace

Circuit cat_prep_circuit(size_t w) {
    if (w < 2 || w % 2) {
        throw std::invalid_argument("cat weight must be even and >= 2");
    }
    Circuit circ;
    circ.num_qubits = uint32_t(w);
    CatRing ring(w);
    emit_prep(circ, ring, w);
    return circ;
}

Circuit cat_verify_circuit(size_t w, size_t m, char readout_basis) {
    if (w < 2 || w % 2) {
        throw std::invalid_argument("cat weight must be even and >= 2");
    }
    Circuit circ;
    circ.num_qubits = uint32_t(2 * w);
    CatRing ring(w);
    emit_prep(circ, ring, w);

    // Ancilla adjacent to cat site s is qubit w + s.
    uint32_t meas = 0;
    for (size_t round = 0; round < m; round++) {
        circ.compute_moment();
        for (size_t s = 0; s < w; s++) {
            circ.push_op(OpKind::PrepX, uint32_t(w + s));
        }
        circ.compute_moment();
        for (size_t s = 0; s < w; s++) {
            circ.push_op(OpKind::CZ, uint32_t(w + s), ring.qubit_at_site(s));
        }
        circ.transport_moment(1, BudgetTag::Other);
        ring.shift_clockwise(1);
        circ.compute_moment();
        for (size_t s = 0; s < w; s++) {
            circ.push_op(OpKind::CZ, uint32_t(w + s), ring.qubit_at_site(s));
        }
        circ.compute_moment();
        for (size_t s = 0; s < w; s++) {
            circ.push_op(OpKind::MeasX, uint32_t(w + s));
            Detector d;
            d.meas = {meas++};
            d.sector = 0;
            d.round = uint32_t(round);
            d.check = uint32_t(s);
            circ.detectors.push_back(d);
        }
    }
    // Teleportation-based leakage detection; output lands back on the cat
    // site occupants.
    circ.compute_moment();
    for (size_t s = 0; s < w; s++) {
        circ.push_op(OpKind::TeleportLdu, ring.qubit_at_site(s),
                     uint32_t(w + s));
    }
    if (readout_basis == 'Z' || readout_basis == 'X') {
        circ.compute_moment();
        std::vector<uint32_t> out_meas;
        for (size_t s = 0; s < w; s++) {
            circ.push_op(readout_basis == 'Z' ? OpKind::MeasZ : OpKind::MeasX,
                         ring.qubit_at_site(s));
            out_meas.push_back(meas++);
        }
        if (readout_basis == 'Z') {
            for (uint32_t mi : out_meas) {
                Observable obs;
                obs.meas = {mi};
                circ.observables.push_back(obs);
            }
        } else {
            Observable obs;
            obs.meas = out_meas;
            circ.observables.push_back(obs);
        }
    }
    return circ;
}

CatModel cat_model(const CatSpec &spec) {
    if (spec.w < 2 || spec.w % 2) {
        throw std::invalid_argument("cat weight must be even and >= 2");
    }
    CatModel model;
    model.w = spec.w;
    model.m = spec.rounds();
    double w = double(spec.w), m = double(model.m), p = spec.p;
    double lg = double(log2_ceil(spec.w));
    model.x_rate_per_qubit = p / 2;
    model.z_rate_per_qubit = 4 * (m + 1) * p / 15;
    model.reject_error = (2 * m + 1) * w * p;
    model.reject_leak = spec.p_leak * w * (lg + w / 40 + 6 * m + 4);
    model.reject_loss = spec.p_loss * w * (lg + w / 40 + 8 * m + 4);
    model.flow_per_sec = w;
    model.prod_pocs = lg + 3 * m + 3;
    model.prod_transport = w / 2 + m - 1;
    model.loss_pmf_peaks[1] = 2 * w * spec.p_loss;
    model.loss_pmf_peaks[size_t(4 * m)] += 8 * w * m * spec.p_loss;
    model.loss_pmf_peaks[size_t(8 * m)] += spec.p_loss * (lg + 1) / 2;
    model.loss_pmf_peaks[2 * spec.w] += spec.p_loss * (lg + 1) / 2;
    return model;
}

LossDistribution CatModel::loss_pmf() const {
    size_t maxk = 0;
    double total = 0;
    for (const auto &[k, p] : loss_pmf_peaks) {
        maxk = std::max(maxk, k);
        total += p;
    }
    LossDistribution dist;
    dist.pmf.assign(maxk + 1, 0.0);
    dist.pmf[0] = 1 - total;
    for (const auto &[k, p] : loss_pmf_peaks) {
        dist.pmf[k] += p;
    }
    return dist;
}

CatSimResult cat_sim(const CatSpec &spec, size_t shots, char readout_basis,
                     uint64_t seed) {
    Circuit circ = cat_verify_circuit(spec.w, spec.rounds(), readout_basis);
    NoiseParams noise{spec.p, spec.p_loss, spec.p_leak};
    CatSimResult out;
    out.shots = shots;
    out.x_weight_histogram.assign(spec.w / 2 + 1, 0);
    out.lost_histogram.assign(4 * spec.w + 1, 0);

    std::mutex mu;
    int workers = worker_count();
    size_t chunk = (shots + workers - 1) / workers;
    parallel_for(size_t(workers), [&](size_t wi) {
        CatSimResult local = out;
        size_t lo = wi * chunk, hi = std::min(shots, lo + chunk);
        for (size_t s = lo; s < hi; s++) {
            ShotResult r = sample_shot(circ, noise, seed, s);
            local.lost_histogram[std::min<size_t>(r.lost,
                                                  local.lost_histogram.size() -
                                                          1)]++;
            if (r.lost > 0) {
                local.rejected_loss++;
                continue;
            }
            if (r.leaked > 0) {
                local.rejected_leak++;
                continue;
            }
            bool flagged = false;
            for (uint8_t d : r.detectors) {
                flagged |= d != 0;
            }
            if (flagged) {
                local.rejected_error++;
                continue;
            }
            local.accepted++;
            if (readout_basis == 'Z') {
                size_t ones = 0;
                for (uint8_t b : r.observables) {
                    ones += b;
                }
                size_t weight = std::min(ones, spec.w - ones);
                local.x_weight_histogram[weight]++;
            } else if (readout_basis == 'X') {
                local.z_errors += r.observables[0];
            }
        }
        std::lock_guard<std::mutex> lock(mu);
        out.rejected_error += local.rejected_error;
        out.rejected_leak += local.rejected_leak;
        out.rejected_loss += local.rejected_loss;
        out.accepted += local.accepted;
        out.z_errors += local.z_errors;
        for (size_t i = 0; i < out.x_weight_histogram.size(); i++) {
            out.x_weight_histogram[i] += local.x_weight_histogram[i];
        }
        for (size_t i = 0; i < out.lost_histogram.size(); i++) {
            out.lost_histogram[i] += local.lost_histogram[i];
        }
    });
    return out;
}

StitchModel stitch_model(double eps, double p) {
    double pp = 4 * p;
    if (pp <= 0 || pp >= 1 || eps <= 0 || eps >= 1) {
        throw std::invalid_argument("stitch model needs 0 < 4p < 1, 0 < eps < 1");
    }
    size_t m = 1;
    double acc = pp;
    while (acc > eps && m < 64) {
        acc *= pp;
        m++;
    }
    StitchModel out;
    out.m = m + 1;  // one extra round of margin
    out.reject = 4 * double(out.m) * p;
    return out;
}

BellSizing bell_sizing(size_t n_cat_factories, size_t m_stitch) {
    BellSizing out;
    out.factories = (n_cat_factories + 2) / 3;
    out.flow_per_round = 2 * ((3 * m_stitch + 1) / 2);
    out.qubits_per_factory = out.flow_per_round;
    return out;
}

}  // namespace wck
