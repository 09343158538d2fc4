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

#include "wck/simkit.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <mutex>
#include <stdexcept>

namespace wck {

double LossDistribution::mean() const {
    double m = 0;
    for (size_t k = 0; k < pmf.size(); k++) {
        m += double(k) * pmf[k];
    }
    return m;
}

double LossDistribution::total() const {
    double t = 0;
    for (double v : pmf) {
        t += v;
    }
    return t;
}

LossDistribution LossDistribution::convolved(const LossDistribution &o) const {
    LossDistribution out;
    out.pmf.assign(pmf.size() + o.pmf.size() - 1, 0.0);
    for (size_t i = 0; i < pmf.size(); i++) {
        if (pmf[i] == 0) {
            continue;
        }
        for (size_t j = 0; j < o.pmf.size(); j++) {
            out.pmf[i + j] += pmf[i] * o.pmf[j];
        }
    }
    return out;
}

LossDistribution LossDistribution::point_mass_zero() {
    return LossDistribution{{1.0}};
}

Tableau::Tableau(size_t n)
    : n_(n),
      words_((n + 63) / 64),
      xs_(2 * n * words_, 0),
      zs_(2 * n * words_, 0),
      signs_(2 * n, 0),
      scratch_x_(words_, 0),
      scratch_z_(words_, 0) {
    for (size_t i = 0; i < n; i++) {
        xs_[i * words_ + (i >> 6)] |= uint64_t{1} << (i & 63);          // destab X_i
        zs_[(n + i) * words_ + (i >> 6)] |= uint64_t{1} << (i & 63);    // stab Z_i
    }
}

void Tableau::h(size_t q) {
    size_t w = q >> 6;
    uint64_t mask = uint64_t{1} << (q & 63);
    for (size_t r = 0; r < 2 * n_; r++) {
        uint64_t &xw = xs_[r * words_ + w];
        uint64_t &zw = zs_[r * words_ + w];
        uint64_t xv = xw & mask, zv = zw & mask;
        signs_[r] ^= (xv && zv) ? 1 : 0;
        xw = (xw & ~mask) | zv;
        zw = (zw & ~mask) | xv;
    }
}

void Tableau::x(size_t q) {
    size_t w = q >> 6;
    uint64_t mask = uint64_t{1} << (q & 63);
    for (size_t r = 0; r < 2 * n_; r++) {
        signs_[r] ^= (zs_[r * words_ + w] & mask) ? 1 : 0;
    }
}

void Tableau::z(size_t q) {
    size_t w = q >> 6;
    uint64_t mask = uint64_t{1} << (q & 63);
    for (size_t r = 0; r < 2 * n_; r++) {
        signs_[r] ^= (xs_[r * words_ + w] & mask) ? 1 : 0;
    }
}

void Tableau::y(size_t q) {
    size_t w = q >> 6;
    uint64_t mask = uint64_t{1} << (q & 63);
    for (size_t r = 0; r < 2 * n_; r++) {
        uint64_t xv = xs_[r * words_ + w] & mask;
        uint64_t zv = zs_[r * words_ + w] & mask;
        signs_[r] ^= (bool(xv) != bool(zv)) ? 1 : 0;
    }
}

void Tableau::cx(size_t c, size_t t) {
    size_t wc = c >> 6, wt = t >> 6;
    uint64_t mc = uint64_t{1} << (c & 63), mt = uint64_t{1} << (t & 63);
    for (size_t r = 0; r < 2 * n_; r++) {
        uint64_t *xr = &xs_[r * words_];
        uint64_t *zr = &zs_[r * words_];
        bool xc = xr[wc] & mc, zc = zr[wc] & mc;
        bool xt = xr[wt] & mt, zt = zr[wt] & mt;
        signs_[r] ^= (xc && zt && (xt == zc)) ? 1 : 0;
        if (xc) {
            xr[wt] ^= mt;
        }
        if (zt) {
            zr[wc] ^= mc;
        }
    }
}

void Tableau::cz(size_t a, size_t b) {
    h(b);
    cx(a, b);
    h(b);
}

size_t Tableau::rowmult_phase(size_t h, size_t i) const {
    // Sum of per-qubit g() for row_i * row_h products, plus both signs.
    const uint64_t *x1 = &xs_[i * words_], *z1 = &zs_[i * words_];
    const uint64_t *x2 = &xs_[h * words_], *z2 = &zs_[h * words_];
    long total = 0;
    for (size_t w = 0; w < words_; w++) {
        uint64_t yy = x1[w] & z1[w];
        uint64_t xx = x1[w] & ~z1[w];
        uint64_t zz = ~x1[w] & z1[w];
        // Y row1: +1 where row2 is Z-only, -1 where X-only.
        total += std::popcount(yy & ~x2[w] & z2[w]);
        total -= std::popcount(yy & x2[w] & ~z2[w]);
        // X row1: +1 where row2 is Y, -1 where Z-only.
        total += std::popcount(xx & x2[w] & z2[w]);
        total -= std::popcount(xx & ~x2[w] & z2[w]);
        // Z row1: +1 where row2 is X-only, -1 where Y.
        total += std::popcount(zz & x2[w] & ~z2[w]);
        total -= std::popcount(zz & x2[w] & z2[w]);
    }
    long phase = 2L * signs_[h] + 2L * signs_[i] + total;
    phase = ((phase % 4) + 4) % 4;
    return size_t(phase);
}

void Tableau::rowmult(size_t h, size_t i) {
    size_t ph = rowmult_phase(h, i);
    signs_[h] = uint8_t(ph >> 1);
    uint64_t *xh = &xs_[h * words_], *zh = &zs_[h * words_];
    const uint64_t *xi = &xs_[i * words_], *zi = &zs_[i * words_];
    for (size_t w = 0; w < words_; w++) {
        xh[w] ^= xi[w];
        zh[w] ^= zi[w];
    }
}

void Tableau::rowcopy(size_t dst, size_t src) {
    std::copy(&xs_[src * words_], &xs_[src * words_] + words_,
              &xs_[dst * words_]);
    std::copy(&zs_[src * words_], &zs_[src * words_] + words_,
              &zs_[dst * words_]);
    signs_[dst] = signs_[src];
}

void Tableau::rowset(size_t r, size_t q, bool is_z) {
    std::fill(&xs_[r * words_], &xs_[r * words_] + words_, 0);
    std::fill(&zs_[r * words_], &zs_[r * words_] + words_, 0);
    signs_[r] = 0;
    if (is_z) {
        zs_[r * words_ + (q >> 6)] |= uint64_t{1} << (q & 63);
    } else {
        xs_[r * words_ + (q >> 6)] |= uint64_t{1} << (q & 63);
    }
}

bool Tableau::z_deterministic(size_t q) const {
    size_t w = q >> 6;
    uint64_t mask = uint64_t{1} << (q & 63);
    for (size_t r = n_; r < 2 * n_; r++) {
        if (xs_[r * words_ + w] & mask) {
            return false;
        }
    }
    return true;
}

bool Tableau::measure_z(size_t q, Rng &rng) {
    size_t w = q >> 6;
    uint64_t mask = uint64_t{1} << (q & 63);
    size_t p = 2 * n_;
    for (size_t r = n_; r < 2 * n_; r++) {
        if (xs_[r * words_ + w] & mask) {
            p = r;
            break;
        }
    }
    if (p < 2 * n_) {
        // Random outcome.
        for (size_t r = 0; r < 2 * n_; r++) {
            if (r != p && (xs_[r * words_ + w] & mask)) {
                rowmult(r, p);
            }
        }
        rowcopy(p - n_, p);
        bool outcome = rng.bernoulli(0.5);
        rowset(p, q, true);
        signs_[p] = outcome;
        return outcome;
    }
    // Deterministic: accumulate stabilizer product into scratch.
    std::fill(scratch_x_.begin(), scratch_x_.end(), 0);
    std::fill(scratch_z_.begin(), scratch_z_.end(), 0);
    long sign2 = 0;  // phase exponent mod 4, accumulated manually
    auto scratch_mult = [&](size_t i) {
        const uint64_t *x1 = scratch_x_.data(), *z1 = scratch_z_.data();
        const uint64_t *x2 = &xs_[i * words_], *z2 = &zs_[i * words_];
        long total = 0;
        for (size_t ww = 0; ww < words_; ww++) {
            uint64_t yy = x1[ww] & z1[ww];
            uint64_t xx = x1[ww] & ~z1[ww];
            uint64_t zz = ~x1[ww] & z1[ww];
            total += std::popcount(yy & ~x2[ww] & z2[ww]);
            total -= std::popcount(yy & x2[ww] & ~z2[ww]);
            total += std::popcount(xx & x2[ww] & z2[ww]);
            total -= std::popcount(xx & ~x2[ww] & z2[ww]);
            total += std::popcount(zz & x2[ww] & ~z2[ww]);
            total -= std::popcount(zz & x2[ww] & z2[ww]);
        }
        sign2 += 2L * signs_[i] + total;
        for (size_t ww = 0; ww < words_; ww++) {
            scratch_x_[ww] ^= x2[ww];
            scratch_z_[ww] ^= z2[ww];
        }
    };
    for (size_t i = 0; i < n_; i++) {
        if (xs_[i * words_ + w] & mask) {
            scratch_mult(i + n_);
        }
    }
    sign2 = ((sign2 % 4) + 4) % 4;
    return (sign2 >> 1) & 1;
}

bool Tableau::measure_x(size_t q, Rng &rng) {
    h(q);
    bool outcome = measure_z(q, rng);
    h(q);
    return outcome;
}

void Tableau::prep_z(size_t q, Rng &rng) {
    if (measure_z(q, rng)) {
        x(q);
    }
}

void Tableau::prep_x(size_t q, Rng &rng) {
    prep_z(q, rng);
    h(q);
}

void Tableau::reset_mixed(size_t q, Rng &rng) {
    prep_z(q, rng);
    if (rng.bernoulli(0.5)) {
        x(q);
    }
}

void Tableau::swap_qubits(size_t a, size_t b) {
    if (a == b) {
        return;
    }
    size_t wa = a >> 6, wb = b >> 6;
    uint64_t ma = uint64_t{1} << (a & 63), mb = uint64_t{1} << (b & 63);
    for (size_t r = 0; r < 2 * n_; r++) {
        uint64_t *xr = &xs_[r * words_];
        uint64_t *zr = &zs_[r * words_];
        bool xa = xr[wa] & ma, xb = xr[wb] & mb;
        bool za = zr[wa] & ma, zb = zr[wb] & mb;
        if (xa != xb) {
            xr[wa] ^= ma;
            xr[wb] ^= mb;
        }
        if (za != zb) {
            zr[wa] ^= ma;
            zr[wb] ^= mb;
        }
    }
}

namespace {

struct ShotContext {
    Tableau tab;
    Rng rng;
    std::vector<QubitStatus> status;
    std::vector<uint32_t> last_partner;
    std::vector<MeasRecord> records;
    uint32_t lost = 0;
    uint32_t leaked = 0;
    const NoiseParams *noise;

    ShotContext(size_t n, uint64_t seed, uint64_t shot, const NoiseParams *np)
        : tab(n),
          rng(Rng::for_stream(seed, shot)),
          status(n, QubitStatus::Computational),
          last_partner(n, UINT32_MAX),
          noise(np) {}

    bool comp(size_t q) const { return status[q] == QubitStatus::Computational; }

    void depolarize1(size_t q, double rate) {
        if (rate <= 0 || !comp(q)) {
            return;
        }
        if (rng.bernoulli(rate)) {
            switch (rng.next_below(3)) {
                case 0: tab.x(q); break;
                case 1: tab.y(q); break;
                default: tab.z(q); break;
            }
        }
    }

    void depolarize2(size_t a, size_t b, double rate) {
        if (rate <= 0) {
            return;
        }
        if (rng.bernoulli(rate)) {
            uint64_t pick = rng.next_below(15) + 1;  // nonzero 2q Pauli
            int pa = int(pick % 4), pb = int(pick / 4);
            if (comp(a)) {
                if (pa == 1) tab.x(a);
                if (pa == 2) tab.y(a);
                if (pa == 3) tab.z(a);
            }
            if (comp(b)) {
                if (pb == 1) tab.x(b);
                if (pb == 2) tab.y(b);
                if (pb == 3) tab.z(b);
            }
        }
    }

    void mark_lost(size_t q) {
        if (status[q] != QubitStatus::Lost) {
            status[q] = QubitStatus::Lost;
        }
    }

    // Ambient loss/leak on every qubit, scaled to the moment duration.
    void ambient(double loss_p, double leak_p) {
        if (loss_p > 0) {
            for (size_t q = 0; q < status.size(); q++) {
                if (status[q] != QubitStatus::Lost && rng.bernoulli(loss_p)) {
                    mark_lost(q);
                }
            }
        }
        if (leak_p > 0) {
            for (size_t q = 0; q < status.size(); q++) {
                if (status[q] == QubitStatus::Computational &&
                    rng.bernoulli(leak_p)) {
                    status[q] = QubitStatus::Leaked;
                }
            }
        }
    }

    void reload_fresh(size_t q) {
        tab.reset_mixed(q, rng);
        status[q] = QubitStatus::Computational;
    }
};

void run_compute_moment(ShotContext &ctx, const Moment &m) {
    const NoiseParams &noise = *ctx.noise;
    std::vector<uint8_t> touched(ctx.status.size(), 0);
    for (const auto &op : m.ops) {
        // Beacon merge/split leaves the data qubit idling.
        if (op.kind != OpKind::BeaconCheck) {
            touched[op.q0] = 1;
        }
        if (op_is_two_qubit(op.kind)) {
            touched[op.q1] = 1;
        }
        switch (op.kind) {
            case OpKind::PrepZ:
            case OpKind::PrepX: {
                size_t q = op.q0;
                if (ctx.status[q] == QubitStatus::Lost) {
                    break;
                }
                if (ctx.status[q] == QubitStatus::Leaked) {
                    break;  // replaced by identity; Pauli noise is moot
                }
                if (op.kind == OpKind::PrepZ) {
                    ctx.tab.prep_z(q, ctx.rng);
                } else {
                    ctx.tab.prep_x(q, ctx.rng);
                }
                ctx.depolarize1(q, noise.p_1q());
                break;
            }
            case OpKind::H: {
                size_t q = op.q0;
                if (ctx.comp(q)) {
                    ctx.tab.h(q);
                    ctx.depolarize1(q, noise.p_1q());
                }
                break;
            }
            case OpKind::PauliX:
                if (ctx.comp(op.q0)) ctx.tab.x(op.q0);
                break;
            case OpKind::PauliY:
                if (ctx.comp(op.q0)) ctx.tab.y(op.q0);
                break;
            case OpKind::PauliZ:
                if (ctx.comp(op.q0)) ctx.tab.z(op.q0);
                break;
            case OpKind::CX:
            case OpKind::CZ: {
                size_t a = op.q0, b = op.q1;
                bool lost_a = ctx.status[a] == QubitStatus::Lost;
                bool lost_b = ctx.status[b] == QubitStatus::Lost;
                if (lost_a || lost_b) {
                    // Loss propagates through the attempted merge.
                    ctx.mark_lost(a);
                    ctx.mark_lost(b);
                    break;
                }
                ctx.last_partner[a] = uint32_t(b);
                ctx.last_partner[b] = uint32_t(a);
                bool leaked = ctx.status[a] == QubitStatus::Leaked ||
                              ctx.status[b] == QubitStatus::Leaked;
                if (!leaked) {
                    if (op.kind == OpKind::CX) {
                        ctx.tab.cx(a, b);
                    } else {
                        ctx.tab.cz(a, b);
                    }
                }
                // Gate noise is retained even when the gate is removed.
                ctx.depolarize2(a, b, noise.p_2q());
                break;
            }
            case OpKind::MeasX:
            case OpKind::MeasZ: {
                size_t q = op.q0;
                MeasRecord rec;
                if (ctx.status[q] == QubitStatus::Lost) {
                    rec.flag = 1;
                    ctx.lost += 1;
                    ctx.reload_fresh(q);
                } else if (ctx.status[q] == QubitStatus::Leaked) {
                    rec.flag = 2;
                    ctx.leaked += 1;
                    ctx.reload_fresh(q);
                } else {
                    bool bit = op.kind == OpKind::MeasX
                                       ? ctx.tab.measure_x(q, ctx.rng)
                                       : ctx.tab.measure_z(q, ctx.rng);
                    if (ctx.rng.bernoulli(noise.p_meas_flip())) {
                        bit = !bit;
                    }
                    rec.bit = bit;
                }
                ctx.records.push_back(rec);
                break;
            }
            case OpKind::LeakReset: {
                size_t q = op.q0;
                if (ctx.status[q] == QubitStatus::Leaked) {
                    ctx.reload_fresh(q);
                } else if (ctx.comp(q)) {
                    ctx.depolarize1(q, noise.p_1q());
                }
                break;
            }
            case OpKind::BeaconCheck: {
                size_t q = op.q0;
                if (ctx.status[q] == QubitStatus::Lost) {
                    // Beacon merge/split flags the loss: the beacon, the data
                    // qubit, and the most recent ancilla partner are ejected
                    // and replaced from the local reservoir.
                    ctx.lost += 3;
                    ctx.reload_fresh(q);
                    uint32_t partner = ctx.last_partner[q];
                    if (partner != UINT32_MAX) {
                        ctx.reload_fresh(partner);
                    }
                }
                break;
            }
            case OpKind::TeleportLdu: {
                size_t d = op.q0, a = op.q1;
                if (ctx.status[d] == QubitStatus::Lost ||
                    ctx.status[a] == QubitStatus::Lost) {
                    ctx.mark_lost(d);
                    ctx.mark_lost(a);
                    break;
                }
                if (ctx.status[d] == QubitStatus::Leaked) {
                    // Teleport fails; flagged, output reset to mixed.
                    ctx.leaked += 1;
                    ctx.reload_fresh(d);
                    if (ctx.comp(a)) {
                        ctx.tab.prep_z(a, ctx.rng);
                    }
                    break;
                }
                if (ctx.status[a] == QubitStatus::Leaked) {
                    // Replacement ancilla: flag, reset, skip this round.
                    ctx.leaked += 1;
                    ctx.reload_fresh(a);
                    break;
                }
                ctx.tab.prep_z(a, ctx.rng);
                ctx.tab.cx(d, a);
                bool mout = ctx.tab.measure_x(d, ctx.rng);
                if (mout) {
                    ctx.tab.z(a);
                }
                ctx.tab.swap_qubits(d, a);
                ctx.depolarize2(d, a, noise.p_2q());
                ctx.depolarize1(a, noise.p_1q());
                break;
            }
        }
    }
    // Idle noise for untouched qubits, then ambient loss/leak for the POC.
    if (ctx.noise->p_idle() > 0) {
        for (size_t q = 0; q < ctx.status.size(); q++) {
            if (!touched[q]) {
                ctx.depolarize1(q, ctx.noise->p_idle());
            }
        }
    }
    ctx.ambient(ctx.noise->p_loss, ctx.noise->p_leak);
}

void run_transport_moment(ShotContext &ctx, const Moment &m) {
    const NoiseParams &noise = *ctx.noise;
    double steps = double(m.transport_steps);
    double p_dep = 1 - std::pow(1 - noise.p_transport(), steps);
    double p_lo = 1 - std::pow(1 - noise.p_loss / 20, steps);
    double p_le = 1 - std::pow(1 - noise.p_leak / 20, steps);
    for (size_t q = 0; q < ctx.status.size(); q++) {
        ctx.depolarize1(q, p_dep);
    }
    ctx.ambient(p_lo, p_le);
}

}  // namespace

ShotResult sample_shot(const Circuit &circuit, const NoiseParams &noise,
                       uint64_t seed, uint64_t shot_index) {
    if (circuit.detectors.empty() && circuit.observables.empty()) {
        throw std::invalid_argument("circuit has no detector annotations");
    }
    ShotContext ctx(circuit.num_qubits, seed, shot_index, &noise);
    ctx.records.reserve(circuit.num_measurements);
    for (const auto &m : circuit.moments) {
        if (m.is_transport) {
            run_transport_moment(ctx, m);
        } else {
            run_compute_moment(ctx, m);
        }
    }
    ShotResult out;
    out.lost = ctx.lost;
    out.leaked = ctx.leaked;
    out.detectors.resize(circuit.detectors.size());
    for (size_t i = 0; i < circuit.detectors.size(); i++) {
        uint8_t v = 0;
        for (uint32_t mi : circuit.detectors[i].meas) {
            v ^= ctx.records.at(mi).bit;
        }
        out.detectors[i] = v;
    }
    out.observables.resize(circuit.observables.size());
    for (size_t i = 0; i < circuit.observables.size(); i++) {
        uint8_t v = 0;
        for (uint32_t mi : circuit.observables[i].meas) {
            v ^= ctx.records.at(mi).bit;
        }
        out.observables[i] = v;
    }
    return out;
}

SampleStats sample(const Circuit &circuit, const NoiseParams &noise,
                   size_t shots, uint64_t seed) {
    SampleStats stats;
    stats.shots = shots;
    stats.detector_flips.assign(circuit.detectors.size(), 0);
    stats.observable_flips.assign(circuit.observables.size(), 0);
    stats.lost_histogram.assign(16, 0);

    std::mutex mu;
    int workers = worker_count();
    size_t chunk = (shots + workers - 1) / workers;
    parallel_for(size_t(workers), [&](size_t w) {
        SampleStats local;
        local.detector_flips.assign(circuit.detectors.size(), 0);
        local.observable_flips.assign(circuit.observables.size(), 0);
        local.lost_histogram.assign(16, 0);
        size_t lo = w * chunk, hi = std::min(shots, lo + chunk);
        for (size_t s = lo; s < hi; s++) {
            ShotResult r = sample_shot(circuit, noise, seed, s);
            bool any = false;
            for (size_t i = 0; i < r.detectors.size(); i++) {
                local.detector_flips[i] += r.detectors[i];
                any |= r.detectors[i] != 0;
            }
            local.any_detector_flip_shots += any;
            for (size_t i = 0; i < r.observables.size(); i++) {
                local.observable_flips[i] += r.observables[i];
            }
            size_t bucket = std::min<size_t>(r.lost, 15);
            local.lost_histogram[bucket]++;
            local.leaked_total += r.leaked;
        }
        std::lock_guard<std::mutex> lock(mu);
        for (size_t i = 0; i < stats.detector_flips.size(); i++) {
            stats.detector_flips[i] += local.detector_flips[i];
        }
        for (size_t i = 0; i < stats.observable_flips.size(); i++) {
            stats.observable_flips[i] += local.observable_flips[i];
        }
        for (size_t i = 0; i < 16; i++) {
            stats.lost_histogram[i] += local.lost_histogram[i];
        }
        stats.any_detector_flip_shots += local.any_detector_flip_shots;
        stats.leaked_total += local.leaked_total;
    });
    return stats;
}

DetectorData sample_detectors(const Circuit &circuit, const NoiseParams &noise,
                              size_t shots, uint64_t seed) {
    DetectorData data;
    data.shots = shots;
    data.num_detectors = circuit.detectors.size();
    data.num_observables = circuit.observables.size();
    data.detectors = BitMatrix(shots, std::max<size_t>(1, data.num_detectors));
    data.observables =
            BitMatrix(shots, std::max<size_t>(1, data.num_observables));
    data.lost.assign(shots, 0);
    data.leaked.assign(shots, 0);
    parallel_for(shots, [&](size_t s) {
        ShotResult r = sample_shot(circuit, noise, seed, s);
        for (size_t i = 0; i < r.detectors.size(); i++) {
            if (r.detectors[i]) {
                data.detectors.set(s, i, true);
            }
        }
        for (size_t i = 0; i < r.observables.size(); i++) {
            if (r.observables[i]) {
                data.observables.set(s, i, true);
            }
        }
        data.lost[s] = r.lost;
        data.leaked[s] = r.leaked;
    });
    return data;
}

LossDistribution compound_poisson_loss(size_t n_data_plus_ancilla, double d_poc,
                                       double p_loss, size_t max_k) {
    LossDistribution out;
    out.pmf.assign(max_k + 1, 0.0);
    if (p_loss <= 0) {
        out.pmf[0] = 1.0;
        return out;
    }
    double lambda = p_loss * double(n_data_plus_ancilla) * d_poc;
    double q3 = 1.0 - 1.0 / d_poc;  // event outside the final layer -> 3 lost
    // P(L = l) = sum_j Pois(j; lambda) * P(j ones/threes summing to l).
    double pois = std::exp(-lambda);
    size_t jmax = std::max<size_t>(8, max_k);
    for (size_t j = 0; j <= jmax; j++) {
        if (j > 0) {
            pois *= lambda / double(j);
        }
        // Y-sum = j + 2t where t of the j events are threes.
        double binom = std::pow(1 - q3, double(j));
        for (size_t t = 0; t <= j; t++) {
            size_t l = j + 2 * t;
            double term = pois * binom;
            if (l <= max_k) {
                out.pmf[l] += term;
            } else {
                out.pmf[max_k] += term;  // folded tail
            }
            if (t < j) {
                binom *= (double(j - t) / double(t + 1)) * (q3 / (1 - q3));
            }
        }
    }
    // Residual mass (events beyond jmax) folded into the tail bucket.
    double total = out.total();
    if (total < 1.0) {
        out.pmf[max_k] += 1.0 - total;
    }
    return out;
}

double AnsatzFit::eval(double p) const {
    return std::pow(p, std::ceil(double(d_circ) / 2)) *
           std::exp(alpha * p * p + beta * p + zeta);
}

AnsatzFit fit_ansatz(const std::vector<std::pair<double, double>> &points,
                     size_t d_circ) {
    if (points.size() < 3) {
        throw std::invalid_argument("ansatz fit needs >= 3 points");
    }
    // Linear least squares on log(rate) - ceil(d/2) log(p) = a p^2 + b p + c.
    double m[3][3] = {};
    double rhs[3] = {};
    double e = std::ceil(double(d_circ) / 2);
    for (const auto &[p, rate] : points) {
        double y = std::log(rate) - e * std::log(p);
        double row[3] = {p * p, p, 1.0};
        for (int i = 0; i < 3; i++) {
            for (int j = 0; j < 3; j++) {
                m[i][j] += row[i] * row[j];
            }
            rhs[i] += row[i] * y;
        }
    }
    // Gaussian elimination, 3x3.
    for (int col = 0; col < 3; col++) {
        int piv = col;
        for (int r = col + 1; r < 3; r++) {
            if (std::abs(m[r][col]) > std::abs(m[piv][col])) {
                piv = r;
            }
        }
        std::swap(m[col], m[piv]);
        std::swap(rhs[col], rhs[piv]);
        for (int r = 0; r < 3; r++) {
            if (r == col || m[col][col] == 0) {
                continue;
            }
            double f = m[r][col] / m[col][col];
            for (int c = 0; c < 3; c++) {
                m[r][c] -= f * m[col][c];
            }
            rhs[r] -= f * rhs[col];
        }
    }
    AnsatzFit fit;
    fit.d_circ = d_circ;
    fit.alpha = rhs[0] / m[0][0];
    fit.beta = rhs[1] / m[1][1];
    fit.zeta = rhs[2] / m[2][2];
    return fit;
}

double reload_overhead(size_t n_blk, double q_reload, double t_sec0_poc) {
    return 3.0 * double(n_blk) * q_reload / (20.0 * t_sec0_poc);
}

}  // namespace wck
