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

#include "wck/streamdec.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

namespace wck {

namespace {

// Pauli-frame propagation of a single fault through the tail of a circuit.
struct FramePropagator {
    const Circuit &circ;
    std::vector<uint8_t> x, z;
    std::vector<uint8_t> meas_flips;  // per recorded measurement

    explicit FramePropagator(const Circuit &c)
        : circ(c), x(c.num_qubits, 0), z(c.num_qubits, 0) {
        meas_flips.reserve(c.num_measurements);
    }

    void apply_op(const Op &op, bool active) {
        switch (op.kind) {
            case OpKind::H:
                if (active) std::swap(x[op.q0], z[op.q0]);
                break;
            case OpKind::CX:
                if (active) {
                    x[op.q1] = uint8_t(x[op.q1] ^ x[op.q0]);
                    z[op.q0] = uint8_t(z[op.q0] ^ z[op.q1]);
                }
                break;
            case OpKind::CZ:
                if (active) {
                    z[op.q1] = uint8_t(z[op.q1] ^ x[op.q0]);
                    z[op.q0] = uint8_t(z[op.q0] ^ x[op.q1]);
                }
                break;
            case OpKind::PrepZ:
            case OpKind::PrepX:
                if (active) x[op.q0] = z[op.q0] = 0;
                break;
            case OpKind::MeasX:
                meas_flips.push_back(active ? z[op.q0] : 0);
                if (active) z[op.q0] = 0;
                break;
            case OpKind::MeasZ:
                meas_flips.push_back(active ? x[op.q0] : 0);
                if (active) x[op.q0] = 0;
                break;
            case OpKind::TeleportLdu:
                if (active) {
                    uint32_t d = op.q0, a = op.q1;
                    // prep a; CX(d, a); X-measure d with conditional Z(a);
                    // exchange roles.
                    x[a] = z[a] = 0;
                    x[a] = uint8_t(x[a] ^ x[d]);
                    uint8_t flip = z[d];
                    z[a] = uint8_t(z[a] ^ flip);  // conditional correction
                    x[d] = z[d] = 0;
                    std::swap(x[d], x[a]);
                    std::swap(z[d], z[a]);
                }
                break;
            default:
                break;
        }
    }
};

struct FaultSite {
    size_t moment;
    size_t op;         // op index after which the Pauli lands
    uint32_t q0, q1;   // q1 == UINT32_MAX for single-qubit faults
    uint8_t px0, pz0, px1, pz1;
    bool meas_flip;    // flips the measurement recorded by this op instead
    double prob;
};

struct ColumnSignature {
    std::vector<uint32_t> dets;  // sector-0 detector ordinals, sorted
    std::vector<uint8_t> obs;
    bool operator<(const ColumnSignature &o) const {
        if (dets != o.dets) return dets < o.dets;
        return obs < o.obs;
    }
};

std::vector<uint8_t> propagate_fault(const Circuit &circ, const FaultSite &f) {
    FramePropagator fp(circ);
    bool active = false;
    for (size_t mi = 0; mi < circ.moments.size(); mi++) {
        const auto &m = circ.moments[mi];
        for (size_t oi = 0; oi < m.ops.size(); oi++) {
            fp.apply_op(m.ops[oi], active);
            if (!active && mi == f.moment && oi == f.op) {
                active = true;
                fp.x[f.q0] = uint8_t(fp.x[f.q0] ^ f.px0);
                fp.z[f.q0] = uint8_t(fp.z[f.q0] ^ f.pz0);
                if (f.q1 != UINT32_MAX) {
                    fp.x[f.q1] = uint8_t(fp.x[f.q1] ^ f.px1);
                    fp.z[f.q1] = uint8_t(fp.z[f.q1] ^ f.pz1);
                }
                if (f.meas_flip && !fp.meas_flips.empty()) {
                    fp.meas_flips.back() ^= 1;
                }
            }
        }
    }
    return fp.meas_flips;
}

void enumerate_faults(const Circuit &circ, const NoiseParams &noise,
                      std::vector<FaultSite> &out) {
    size_t last_mi = 0, last_oi = 0;
    bool have_anchor = false;
    for (size_t mi = 0; mi < circ.moments.size(); mi++) {
        const auto &m = circ.moments[mi];
        if (m.is_transport) {
            // Transport depolarizing lands between gate layers; anchor the
            // fault after the previous compute op.
            if (have_anchor && noise.p_transport() > 0) {
                double pq = 1 - std::pow(1 - noise.p_transport(),
                                         double(m.transport_steps));
                for (uint32_t q = 0; q < circ.num_qubits; q++) {
                    for (int p = 1; p < 4; p++) {
                        out.push_back({last_mi, last_oi, q, UINT32_MAX,
                                       uint8_t(p & 1), uint8_t(p >> 1), 0, 0,
                                       false, pq / 3});
                    }
                }
            }
            continue;
        }
        std::vector<uint8_t> touched(circ.num_qubits, 0);
        for (size_t oi = 0; oi < m.ops.size(); oi++) {
            const auto &op = m.ops[oi];
            if (op.kind != OpKind::BeaconCheck) {
                touched[op.q0] = 1;
            }
            if (op_is_two_qubit(op.kind)) {
                touched[op.q1] = 1;
            }
            switch (op.kind) {
                case OpKind::PrepZ:
                case OpKind::PrepX:
                case OpKind::H:
                case OpKind::LeakReset:
                    for (int p = 1; p < 4; p++) {
                        out.push_back({mi, oi, op.q0, UINT32_MAX,
                                       uint8_t(p & 1), uint8_t(p >> 1), 0, 0,
                                       false, noise.p_1q() / 3});
                    }
                    break;
                case OpKind::CX:
                case OpKind::CZ:
                    for (int pp = 1; pp < 16; pp++) {
                        int pa = pp & 3, pb = pp >> 2;
                        out.push_back({mi, oi, op.q0, op.q1, uint8_t(pa & 1),
                                       uint8_t(pa >> 1), uint8_t(pb & 1),
                                       uint8_t(pb >> 1), false,
                                       noise.p_2q() / 15});
                    }
                    break;
                case OpKind::TeleportLdu:
                    for (int pp = 1; pp < 16; pp++) {
                        int pa = pp & 3, pb = pp >> 2;
                        out.push_back({mi, oi, op.q0, op.q1, uint8_t(pa & 1),
                                       uint8_t(pa >> 1), uint8_t(pb & 1),
                                       uint8_t(pb >> 1), false,
                                       noise.p_2q() / 15});
                    }
                    break;
                case OpKind::MeasX:
                case OpKind::MeasZ:
                    out.push_back({mi, oi, op.q0, UINT32_MAX, 0, 0, 0, 0, true,
                                   noise.p_meas_flip()});
                    break;
                default:
                    break;
            }
        }
        if (!m.ops.empty()) {
            size_t last = m.ops.size() - 1;
            if (noise.p_idle() > 0) {
                for (uint32_t q = 0; q < circ.num_qubits; q++) {
                    if (touched[q]) {
                        continue;
                    }
                    for (int p = 1; p < 4; p++) {
                        out.push_back({mi, last, q, UINT32_MAX, uint8_t(p & 1),
                                       uint8_t(p >> 1), 0, 0, false,
                                       noise.p_idle() / 3});
                    }
                }
            }
            last_mi = mi;
            last_oi = last;
            have_anchor = true;
        }
    }
}

double merge_prob(double a, double b) {
    return a * (1 - b) + b * (1 - a);
}

}  // namespace

size_t StaircaseModel::cols_of_block(size_t bc) const {
    if (bc == 0) {
        return h0p.cols();
    }
    if (bc == block_cols() - 1) {
        return h0pp.cols();
    }
    return (bc % 2) ? h1.cols() : h0.cols();
}

size_t StaircaseModel::total_cols() const {
    size_t total = 0;
    for (size_t bc = 0; bc < block_cols(); bc++) {
        total += cols_of_block(bc);
    }
    return total;
}

size_t StaircaseModel::col_base(size_t bc) const {
    size_t base = 0;
    for (size_t i = 0; i < bc; i++) {
        base += cols_of_block(i);
    }
    return base;
}

BitMatrix StaircaseModel::global_matrix() const {
    size_t rows = rounds * rows_per_round;
    BitMatrix g(rows, total_cols());
    size_t col = 0;
    for (size_t bc = 0; bc < block_cols(); bc++) {
        size_t row_block = bc / 2;
        const BitMatrix *upper = nullptr;
        const BitMatrix *lower = nullptr;
        if (bc == 0) {
            upper = &h0p;
        } else if (bc == block_cols() - 1) {
            upper = &h0pp;
        } else if (bc % 2) {
            upper = &h1;
            lower = &h2;
        } else {
            upper = &h0;
        }
        for (size_t cidx = 0; cidx < upper->cols(); cidx++) {
            for (size_t r = 0; r < rows_per_round; r++) {
                if (upper->get(r, cidx)) {
                    g.set(row_block * rows_per_round + r, col, true);
                }
                if (lower && lower->get(r, cidx)) {
                    g.set((row_block + 1) * rows_per_round + r, col, true);
                }
            }
            col++;
        }
    }
    return g;
}

std::vector<double> StaircaseModel::global_priors() const {
    std::vector<double> pri;
    for (size_t bc = 0; bc < block_cols(); bc++) {
        const std::vector<double> *src = nullptr;
        if (bc == 0) {
            src = &p0p;
        } else if (bc == block_cols() - 1) {
            src = &p0pp;
        } else if (bc % 2) {
            src = &p1;
        } else {
            src = &p0;
        }
        pri.insert(pri.end(), src->begin(), src->end());
    }
    return pri;
}

StaircaseModel build_staircase(const Circuit &circuit,
                               const NoiseParams &noise) {
    // Sector-0 detector ordering: (round, check), densely indexed.
    std::vector<uint32_t> det_ids;
    size_t max_round = 0, rows_per_round = 0;
    for (uint32_t d = 0; d < circuit.detectors.size(); d++) {
        const Detector &det = circuit.detectors[d];
        if (det.sector != 0) {
            continue;
        }
        det_ids.push_back(d);
        max_round = std::max<size_t>(max_round, det.round);
        rows_per_round = std::max<size_t>(rows_per_round, det.check + 1);
    }
    size_t rounds = max_round + 1;
    if (rounds < 3) {
        throw std::invalid_argument("staircase needs >= 3 detector rounds");
    }
    // Ordinal of detector (round, check).
    std::map<std::pair<uint32_t, uint32_t>, uint32_t> ord;
    for (uint32_t d : det_ids) {
        const Detector &det = circuit.detectors[d];
        ord[{det.round, det.check}] =
                uint32_t(det.round * rows_per_round + det.check);
    }

    std::vector<FaultSite> faults;
    enumerate_faults(circuit, noise, faults);

    std::map<ColumnSignature, double> classes;
    for (const auto &f : faults) {
        std::vector<uint8_t> flips = propagate_fault(circuit, f);
        ColumnSignature sig;
        for (uint32_t d : det_ids) {
            const Detector &det = circuit.detectors[d];
            uint8_t v = 0;
            for (uint32_t mi : det.meas) {
                v ^= flips[mi];
            }
            if (v) {
                sig.dets.push_back(
                        uint32_t(det.round * rows_per_round + det.check));
            }
        }
        if (sig.dets.empty()) {
            continue;  // undetectable in this sector (or trivial)
        }
        std::sort(sig.dets.begin(), sig.dets.end());
        sig.obs.resize(circuit.observables.size());
        for (size_t ob = 0; ob < circuit.observables.size(); ob++) {
            uint8_t v = 0;
            for (uint32_t mi : circuit.observables[ob].meas) {
                v ^= flips[mi];
            }
            sig.obs[ob] = v;
        }
        auto [it, fresh] = classes.emplace(sig, 0.0);
        it->second = fresh ? f.prob : merge_prob(it->second, f.prob);
    }

    StaircaseModel model;
    model.rows_per_round = rows_per_round;
    model.rounds = rounds;
    model.num_observables = circuit.observables.size();

    struct RawCol {
        std::vector<uint8_t> upper, lower;
        std::vector<uint8_t> obs;
        double prob;
    };
    // Interior columns keyed by their round-relative pattern, to check the
    // staircase uniformity while assembling representative blocks.
    std::map<std::vector<uint8_t>, std::pair<double, std::vector<uint8_t>>>
            first_cols, last_cols;
    std::map<std::pair<std::vector<uint8_t>, std::vector<uint8_t>>,
             std::map<size_t, std::pair<double, std::vector<uint8_t>>>>
            double_cols;
    std::map<std::vector<uint8_t>,
             std::map<size_t, std::pair<double, std::vector<uint8_t>>>>
            single_cols;

    for (const auto &[sig, prob] : classes) {
        size_t lo = sig.dets.front() / rows_per_round;
        size_t hi = sig.dets.back() / rows_per_round;
        if (hi - lo > 1) {
            throw std::invalid_argument(
                    "fault class spans more than two rounds; circuit is not "
                    "staircase-periodic");
        }
        std::vector<uint8_t> upper(rows_per_round, 0), lower(rows_per_round, 0);
        for (uint32_t d : sig.dets) {
            size_t r = d / rows_per_round, c = d % rows_per_round;
            (r == lo ? upper : lower)[c] = 1;
        }
        bool two_round = hi != lo;
        if (!two_round) {
            if (lo == 0) {
                auto [it, fresh] = first_cols.emplace(
                        upper, std::make_pair(prob, sig.obs));
                if (!fresh) {
                    it->second.first = merge_prob(it->second.first, prob);
                }
            } else if (lo == rounds - 1) {
                auto [it, fresh] = last_cols.emplace(
                        upper, std::make_pair(prob, sig.obs));
                if (!fresh) {
                    it->second.first = merge_prob(it->second.first, prob);
                }
            } else {
                single_cols[upper][lo] = {prob, sig.obs};
            }
        } else {
            double_cols[{upper, lower}][lo] = {prob, sig.obs};
        }
    }

    // Interior single-round classes must appear identically in every
    // interior round; two-round classes in every round pair.
    auto fill_block = [&](auto &group, size_t expect_rounds, BitMatrix &up,
                          BitMatrix *down, std::vector<double> &pri,
                          std::vector<std::vector<uint8_t>> &obs) {
        up = BitMatrix(rows_per_round, group.size());
        if (down) {
            *down = BitMatrix(rows_per_round, group.size());
        }
        size_t c = 0;
        for (auto &[key, per_round] : group) {
            if (per_round.size() != expect_rounds) {
                throw std::invalid_argument(
                        "interior staircase blocks are not uniform across "
                        "rounds");
            }
            double prob = per_round.begin()->second.first;
            for (auto &[r, pv] : per_round) {
                if (std::abs(pv.first - prob) > 1e-12 ||
                    pv.second != per_round.begin()->second.second) {
                    throw std::invalid_argument(
                            "interior staircase priors are not uniform");
                }
            }
            const std::vector<uint8_t> *upper_pat;
            const std::vector<uint8_t> *lower_pat = nullptr;
            if constexpr (std::is_same_v<std::decay_t<decltype(key)>,
                                         std::pair<std::vector<uint8_t>,
                                                   std::vector<uint8_t>>>) {
                upper_pat = &key.first;
                lower_pat = &key.second;
            } else {
                upper_pat = &key;
            }
            for (size_t r = 0; r < rows_per_round; r++) {
                if ((*upper_pat)[r]) {
                    up.set(r, c, true);
                }
                if (down && lower_pat && (*lower_pat)[r]) {
                    down->set(r, c, true);
                }
            }
            pri.push_back(prob);
            obs.push_back(per_round.begin()->second.second);
            c++;
        }
    };

    fill_block(single_cols, rounds - 2, model.h0, nullptr, model.p0,
               model.obs0);
    fill_block(double_cols, rounds - 1, model.h1, &model.h2, model.p1,
               model.obs1);

    model.h0p = BitMatrix(rows_per_round, first_cols.size());
    size_t c0 = 0;
    for (auto &[pat, pv] : first_cols) {
        for (size_t r = 0; r < rows_per_round; r++) {
            if (pat[r]) {
                model.h0p.set(r, c0, true);
            }
        }
        model.p0p.push_back(pv.first);
        model.obs0p.push_back(pv.second);
        c0++;
    }
    model.h0pp = BitMatrix(rows_per_round, last_cols.size());
    size_t c1 = 0;
    for (auto &[pat, pv] : last_cols) {
        for (size_t r = 0; r < rows_per_round; r++) {
            if (pat[r]) {
                model.h0pp.set(r, c1, true);
            }
        }
        model.p0pp.push_back(pv.first);
        model.obs0pp.push_back(pv.second);
        c1++;
    }
    return model;
}

WindowPlan window_plan(size_t r, size_t w, size_t c) {
    if (w < 1 || c < 1 || c > w || w > r) {
        throw std::invalid_argument("window plan requires 1 <= c <= w <= r");
    }
    WindowPlan plan;
    if (r == w) {
        plan.n_win = 1;
        plan.w_last = r;
        return plan;
    }
    // floor((r - w - 1) / c) + 2 with signed floor semantics.
    long num = long(r) - long(w) - 1;
    long t = num >= 0 ? num / long(c) : -((-num + long(c) - 1) / long(c));
    plan.n_win = size_t(t + 2);
    plan.w_last = r - (plan.n_win - 1) * c;
    return plan;
}

namespace {

struct MergedTail {
    BitMatrix h1m;
    std::vector<double> p1m;
};

MergedTail merge_h1(const BitMatrix &h1, const std::vector<double> &p1) {
    MergedTail out;
    std::vector<std::vector<uint8_t>> cols;
    std::vector<double> pri;
    for (size_t c = 0; c < h1.cols(); c++) {
        std::vector<uint8_t> col(h1.rows());
        for (size_t r = 0; r < h1.rows(); r++) {
            col[r] = h1.get(r, c);
        }
        bool merged = false;
        for (size_t i = 0; i < cols.size(); i++) {
            if (cols[i] == col) {
                pri[i] = merge_prob(pri[i], p1[c]);
                merged = true;
                break;
            }
        }
        if (!merged) {
            cols.push_back(col);
            pri.push_back(p1[c]);
        }
    }
    out.h1m = BitMatrix(h1.rows(), cols.size());
    for (size_t c = 0; c < cols.size(); c++) {
        for (size_t r = 0; r < h1.rows(); r++) {
            if (cols[c][r]) {
                out.h1m.set(r, c, true);
            }
        }
    }
    out.p1m = pri;
    return out;
}

// Assembles a window matrix of `win` rounds from the staircase blocks.
// kind: 0 = first (H0' leading), 1 = middle (H0 leading), 2 = last (H0''
// trailing, no merge).
void assemble_window(const StaircaseModel &m, size_t win, int kind,
                     const MergedTail &tail, BitMatrix &h,
                     std::vector<double> &pri) {
    size_t rows = win * m.rows_per_round;
    std::vector<const BitMatrix *> uppers;
    std::vector<const BitMatrix *> lowers;
    std::vector<const std::vector<double> *> priors;
    size_t nblocks = (kind == 2) ? 2 * win - 1 : 2 * win;
    for (size_t bc = 0; bc < nblocks; bc++) {
        if (bc % 2 == 0) {
            const BitMatrix *blk = &m.h0;
            const std::vector<double> *pp = &m.p0;
            if (bc == 0 && kind == 0) {
                blk = &m.h0p;
                pp = &m.p0p;
            }
            if (bc == nblocks - 1 && kind == 2) {
                blk = &m.h0pp;
                pp = &m.p0pp;
            }
            uppers.push_back(blk);
            lowers.push_back(nullptr);
            priors.push_back(pp);
        } else if (bc == nblocks - 1 && kind != 2) {
            uppers.push_back(&tail.h1m);
            lowers.push_back(nullptr);
            priors.push_back(&tail.p1m);
        } else {
            uppers.push_back(&m.h1);
            lowers.push_back(&m.h2);
            priors.push_back(&m.p1);
        }
    }
    size_t total = 0;
    for (auto *u : uppers) {
        total += u->cols();
    }
    h = BitMatrix(rows, total);
    pri.clear();
    size_t col = 0;
    for (size_t bc = 0; bc < nblocks; bc++) {
        size_t row_block = bc / 2;
        for (size_t cc = 0; cc < uppers[bc]->cols(); cc++) {
            for (size_t r = 0; r < m.rows_per_round; r++) {
                if (uppers[bc]->get(r, cc)) {
                    h.set(row_block * m.rows_per_round + r, col, true);
                }
                if (lowers[bc] && lowers[bc]->get(r, cc)) {
                    h.set((row_block + 1) * m.rows_per_round + r, col, true);
                }
            }
            col++;
        }
        pri.insert(pri.end(), priors[bc]->begin(), priors[bc]->end());
    }
}

}  // namespace

WindowMatrices init_windows(const StaircaseModel &model, size_t w, size_t c) {
    if (c < 1 || c >= w) {
        throw std::invalid_argument("window config requires 1 <= c < w");
    }
    WindowMatrices wm;
    MergedTail tail = merge_h1(model.h1, model.p1);
    wm.first_tail_cols = tail.h1m.cols();
    assemble_window(model, w, 0, tail, wm.h_first, wm.p_first);
    assemble_window(model, w, 1, tail, wm.h_mid, wm.p_mid);
    WindowPlan plan = window_plan(model.rounds, w, c);
    assemble_window(model, plan.w_last, 2, tail, wm.h_last, wm.p_last);
    return wm;
}

std::vector<uint8_t> inner_bp(const BitMatrix &h,
                              const std::vector<double> &priors,
                              const std::vector<uint8_t> &syndrome,
                              const InnerDecoderConfig &cfg) {
    size_t rows = h.rows(), cols = h.cols();
    if (priors.size() != cols || syndrome.size() != rows) {
        throw std::invalid_argument("inner_bp dimension mismatch");
    }
    // Sparse adjacency.
    std::vector<std::vector<uint32_t>> row_cols(rows), col_rows(cols);
    for (size_t r = 0; r < rows; r++) {
        for (size_t c = 0; c < cols; c++) {
            if (h.get(r, c)) {
                row_cols[r].push_back(uint32_t(c));
                col_rows[c].push_back(uint32_t(r));
            }
        }
    }
    std::vector<double> llr0(cols);
    for (size_t c = 0; c < cols; c++) {
        double p = std::clamp(priors[c], 1e-12, 1 - 1e-12);
        llr0[c] = std::log((1 - p) / p);
    }
    // Messages keyed by (row, position-in-row).
    std::vector<std::vector<double>> c2v(rows), v2c(rows);
    for (size_t r = 0; r < rows; r++) {
        c2v[r].assign(row_cols[r].size(), 0.0);
        v2c[r].assign(row_cols[r].size(), 0.0);
    }
    // Position of row r within col c's list, for gathering.
    std::vector<std::vector<uint32_t>> col_pos(cols);
    for (size_t r = 0; r < rows; r++) {
        for (size_t k = 0; k < row_cols[r].size(); k++) {
            col_pos[row_cols[r][k]].push_back(uint32_t(r) << 8 | uint32_t(k));
        }
    }
    std::vector<double> posterior(cols);
    std::vector<uint8_t> hard(cols, 0);

    auto syndrome_ok = [&]() {
        for (size_t r = 0; r < rows; r++) {
            uint8_t v = 0;
            for (uint32_t c : row_cols[r]) {
                v ^= hard[c];
            }
            if (v != syndrome[r]) {
                return false;
            }
        }
        return true;
    };

    // Initialize variable-to-check with priors.
    for (size_t r = 0; r < rows; r++) {
        for (size_t k = 0; k < row_cols[r].size(); k++) {
            v2c[r][k] = llr0[row_cols[r][k]];
        }
    }
    bool converged = false;
    for (size_t it = 0; it < cfg.iterations && !converged; it++) {
        // Check update: normalized min-sum.
        for (size_t r = 0; r < rows; r++) {
            size_t deg = row_cols[r].size();
            double min1 = 1e300, min2 = 1e300;
            size_t arg = 0;
            int sign = syndrome[r] ? -1 : 1;
            for (size_t k = 0; k < deg; k++) {
                double v = v2c[r][k];
                if (v < 0) {
                    sign = -sign;
                }
                double a = std::abs(v);
                if (a < min1) {
                    min2 = min1;
                    min1 = a;
                    arg = k;
                } else if (a < min2) {
                    min2 = a;
                }
            }
            for (size_t k = 0; k < deg; k++) {
                double mag = (k == arg) ? min2 : min1;
                int s = sign;
                if (v2c[r][k] < 0) {
                    s = -s;
                }
                c2v[r][k] = cfg.min_sum_factor * s * mag;
            }
        }
        // Variable update.
        for (size_t c = 0; c < cols; c++) {
            double total = llr0[c];
            for (uint32_t rp : col_pos[c]) {
                total += c2v[rp >> 8][rp & 0xff];
            }
            posterior[c] = total;
            hard[c] = total < 0;
            for (uint32_t rp : col_pos[c]) {
                v2c[rp >> 8][rp & 0xff] = total - c2v[rp >> 8][rp & 0xff];
            }
        }
        converged = syndrome_ok();
    }
    if (converged || !cfg.osd0) {
        return hard;
    }
    // OSD-0: order columns by posterior likelihood of being flipped, pick a
    // pivot set greedily, zero the rest.
    std::vector<size_t> order(cols);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        return posterior[a] < posterior[b];
    });
    BitMatrix aug(rows, cols + 1);
    for (size_t r = 0; r < rows; r++) {
        for (size_t c = 0; c < cols; c++) {
            if (h.get(r, c)) {
                aug.set(r, c, true);
            }
        }
        if (syndrome[r]) {
            aug.set(r, cols, true);
        }
    }
    std::vector<size_t> pivot_col;
    size_t rr = 0;
    for (size_t oi = 0; oi < cols && rr < rows; oi++) {
        size_t c = order[oi];
        size_t p = rr;
        while (p < rows && !aug.get(p, c)) {
            p++;
        }
        if (p == rows) {
            continue;
        }
        aug.swap_rows(p, rr);
        for (size_t r2 = 0; r2 < rows; r2++) {
            if (r2 != rr && aug.get(r2, c)) {
                aug.xor_row_into(rr, r2);
            }
        }
        pivot_col.push_back(c);
        rr++;
    }
    std::vector<uint8_t> est(cols, 0);
    for (size_t i = 0; i < pivot_col.size(); i++) {
        if (aug.get(i, cols)) {
            est[pivot_col[i]] = 1;
        }
    }
    return est;
}

namespace {

// Sparse column lists of H2 for the committed-offset update.
std::vector<std::vector<uint32_t>> h2_sparse_cols(const BitMatrix &h2) {
    std::vector<std::vector<uint32_t>> cols(h2.cols());
    for (size_t c = 0; c < h2.cols(); c++) {
        for (size_t r = 0; r < h2.rows(); r++) {
            if (h2.get(r, c)) {
                cols[c].push_back(uint32_t(r));
            }
        }
    }
    return cols;
}

}  // namespace

StreamResult stream_decode(const StaircaseModel &model, size_t w, size_t c,
                           const std::vector<uint8_t> &detector_stream,
                           const InnerDecoderConfig &cfg) {
    size_t rr = model.rows_per_round;
    size_t r = model.rounds;
    if (detector_stream.size() < r * rr) {
        throw std::invalid_argument("detector stream shorter than declared r");
    }
    WindowPlan plan = window_plan(r, w, c);
    if (plan.n_win == 1) {
        return global_decode(model, detector_stream, cfg);
    }
    WindowMatrices wm = init_windows(model, w, c);
    auto h2cols = h2_sparse_cols(model.h2);

    StreamResult out;
    out.committed.assign(model.total_cols(), 0);
    out.observable_flips.assign(model.num_observables, 0);

    std::vector<uint8_t> stream(detector_stream.begin(),
                                detector_stream.begin() + r * rr);

    auto commit_columns = [&](const std::vector<uint8_t> &est,
                              size_t first_block, size_t nblocks,
                              size_t est_offset) {
        // Applies the estimate for block columns [first_block,
        // first_block + nblocks) into the global committed vector, XORing
        // observables, and returns the estimate sub-vector of the last
        // committed odd block (for the syndrome offset).
        size_t off = est_offset;
        std::vector<uint8_t> last_odd;
        for (size_t b = 0; b < nblocks; b++) {
            size_t abs_block = first_block + b;
            size_t ncols = model.cols_of_block(abs_block);
            size_t base = model.col_base(abs_block);
            const std::vector<std::vector<uint8_t>> *obs;
            if (abs_block == 0) {
                obs = &model.obs0p;
            } else if (abs_block == model.block_cols() - 1) {
                obs = &model.obs0pp;
            } else if (abs_block % 2) {
                obs = &model.obs1;
            } else {
                obs = &model.obs0;
            }
            bool is_odd = abs_block % 2 == 1;
            if (is_odd) {
                last_odd.assign(est.begin() + off, est.begin() + off + ncols);
            }
            for (size_t i = 0; i < ncols; i++) {
                uint8_t bit = est[off + i];
                out.committed[base + i] = bit;
                if (bit) {
                    for (size_t ob = 0; ob < model.num_observables; ob++) {
                        out.observable_flips[ob] ^= (*obs)[i][ob];
                    }
                }
            }
            off += ncols;
        }
        return last_odd;
    };

    auto offset_syndrome = [&](size_t round, const std::vector<uint8_t> &e1) {
        for (size_t col = 0; col < e1.size(); col++) {
            if (e1[col]) {
                for (uint32_t row : h2cols[col]) {
                    stream[round * rr + row] ^= 1;
                }
            }
        }
    };

    size_t win_rounds_start = 0;
    for (size_t win = 0; win < plan.n_win; win++) {
        bool is_first = win == 0;
        bool is_last = win + 1 == plan.n_win;
        size_t wsize = is_last ? plan.w_last : w;
        const BitMatrix &hwin =
                is_first ? wm.h_first : (is_last ? wm.h_last : wm.h_mid);
        const std::vector<double> &pwin =
                is_first ? wm.p_first : (is_last ? wm.p_last : wm.p_mid);
        std::vector<uint8_t> syndrome(
                stream.begin() + win_rounds_start * rr,
                stream.begin() + (win_rounds_start + wsize) * rr);
        auto t0 = std::chrono::steady_clock::now();
        std::vector<uint8_t> est = inner_bp(hwin, pwin, syndrome, cfg);
        auto t1 = std::chrono::steady_clock::now();
        out.window_micros.push_back(
                std::chrono::duration<double, std::micro>(t1 - t0).count());
        if (is_last) {
            commit_columns(est, 2 * win_rounds_start, 2 * plan.w_last - 1, 0);
        } else {
            std::vector<uint8_t> last_odd =
                    commit_columns(est, 2 * win_rounds_start, 2 * c, 0);
            offset_syndrome(win_rounds_start + c, last_odd);
        }
        win_rounds_start += c;
    }
    out.reaction_micros = out.window_micros.back();

    // Committed parity check against the full staircase.
    BitMatrix g = model.global_matrix();
    out.committed_parity_ok = true;
    for (size_t row = 0; row < g.rows(); row++) {
        uint8_t v = 0;
        for (size_t col = 0; col < g.cols(); col++) {
            if (out.committed[col] && g.get(row, col)) {
                v ^= 1;
            }
        }
        if (v != detector_stream[row]) {
            out.committed_parity_ok = false;
            break;
        }
    }
    return out;
}

StreamResult global_decode(const StaircaseModel &model,
                           const std::vector<uint8_t> &detector_stream,
                           const InnerDecoderConfig &cfg) {
    size_t rr = model.rows_per_round;
    size_t r = model.rounds;
    if (detector_stream.size() < r * rr) {
        throw std::invalid_argument("detector stream shorter than declared r");
    }
    BitMatrix g = model.global_matrix();
    std::vector<double> pri = model.global_priors();
    std::vector<uint8_t> syndrome(detector_stream.begin(),
                                  detector_stream.begin() + r * rr);
    StreamResult out;
    auto t0 = std::chrono::steady_clock::now();
    out.committed = inner_bp(g, pri, syndrome, cfg);
    auto t1 = std::chrono::steady_clock::now();
    out.window_micros.push_back(
            std::chrono::duration<double, std::micro>(t1 - t0).count());
    out.reaction_micros = out.window_micros.back();
    out.observable_flips.assign(model.num_observables, 0);
    for (size_t bc = 0; bc < model.block_cols(); bc++) {
        size_t base = model.col_base(bc);
        const std::vector<std::vector<uint8_t>> *obs;
        if (bc == 0) {
            obs = &model.obs0p;
        } else if (bc == model.block_cols() - 1) {
            obs = &model.obs0pp;
        } else if (bc % 2) {
            obs = &model.obs1;
        } else {
            obs = &model.obs0;
        }
        for (size_t i = 0; i < model.cols_of_block(bc); i++) {
            if (out.committed[base + i]) {
                for (size_t ob = 0; ob < model.num_observables; ob++) {
                    out.observable_flips[ob] ^= (*obs)[i][ob];
                }
            }
        }
    }
    out.committed_parity_ok = true;
    for (size_t row = 0; row < g.rows(); row++) {
        uint8_t v = 0;
        for (size_t col = 0; col < g.cols(); col++) {
            if (out.committed[col] && g.get(row, col)) {
                v ^= 1;
            }
        }
        if (v != syndrome[row]) {
            out.committed_parity_ok = false;
            break;
        }
    }
    return out;
}

std::vector<uint8_t> sector0_stream(const Circuit &circuit,
                                    const DetectorData &data, size_t shot) {
    size_t max_round = 0, rows_per_round = 0;
    for (const auto &det : circuit.detectors) {
        if (det.sector != 0) {
            continue;
        }
        max_round = std::max<size_t>(max_round, det.round);
        rows_per_round = std::max<size_t>(rows_per_round, det.check + 1);
    }
    std::vector<uint8_t> stream((max_round + 1) * rows_per_round, 0);
    for (size_t d = 0; d < circuit.detectors.size(); d++) {
        const auto &det = circuit.detectors[d];
        if (det.sector != 0) {
            continue;
        }
        stream[det.round * rows_per_round + det.check] =
                data.detectors.get(shot, d);
    }
    return stream;
}

}  // namespace wck
