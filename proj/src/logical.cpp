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

#include "wck/logical.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "wck/util.h"

namespace wck {

CliffordFrame::CliffordFrame(size_t k) : k_(k) {
    for (size_t i = 0; i < 2 * k; i++) {
        PauliOperator p(k);
        if (i < k) {
            p.set_x(i, true);
        } else {
            p.set_z(i - k, true);
        }
        imgs_.push_back(p);
    }
}

CliffordFrame CliffordFrame::hadamard(size_t k, size_t q) {
    CliffordFrame f(k);
    std::swap(f.imgs_[q], f.imgs_[k + q]);  // X <-> Z
    return f;
}

CliffordFrame CliffordFrame::phase_gate(size_t k, size_t q) {
    CliffordFrame f(k);
    // S^dag X S = -Y = -i X Z; images stay Hermitian: X -> Y with sign.
    PauliOperator y(k);
    y.set_x(q, true);
    y.set_z(q, true);
    y.phase = 1;  // Y = i X Z
    f.imgs_[q] = y;
    return f;
}

CliffordFrame CliffordFrame::cx(size_t k, size_t c, size_t t) {
    CliffordFrame f(k);
    f.imgs_[c].set_x(t, true);          // X_c -> X_c X_t
    f.imgs_[k + t].set_z(c, true);      // Z_t -> Z_c Z_t
    return f;
}

CliffordFrame CliffordFrame::from_symplectic(const BitMatrix &m) {
    size_t k = m.rows() / 2;
    if (m.rows() != 2 * k || m.cols() != 2 * k) {
        throw std::invalid_argument("symplectic matrix must be 2k x 2k");
    }
    CliffordFrame f(k);
    for (size_t i = 0; i < 2 * k; i++) {
        PauliOperator p(k);
        for (size_t j = 0; j < k; j++) {
            p.set_x(j, m.get(i, j));
            p.set_z(j, m.get(i, k + j));
        }
        if (p.x_bools() != std::vector<uint8_t>(k, 0) ||
            p.z_bools() != std::vector<uint8_t>(k, 0)) {
            // keep Hermitian convention: phase i per Y factor
        }
        size_t ys = 0;
        for (size_t j = 0; j < k; j++) {
            ys += p.x_bit(j) && p.z_bit(j);
        }
        p.phase = uint8_t(ys & 3);
        f.imgs_[i] = p;
    }
    if (!f.is_symplectic()) {
        throw std::invalid_argument("matrix is not symplectic");
    }
    return f;
}

PauliOperator CliffordFrame::conjugate(const PauliOperator &p) const {
    if (p.n != k_) {
        throw std::invalid_argument("frame/Pauli size mismatch");
    }
    PauliOperator out(k_);
    out.phase = p.phase;
    for (size_t i = 0; i < k_; i++) {
        if (p.x_bit(i)) {
            out = out * imgs_[i];
        }
    }
    for (size_t i = 0; i < k_; i++) {
        if (p.z_bit(i)) {
            out = out * imgs_[k_ + i];
        }
    }
    return out;
}

void CliffordFrame::update(const CliffordFrame &v) {
    // New retargeting is P -> U^dag (V^dag P V) U.
    std::vector<PauliOperator> next;
    next.reserve(2 * k_);
    for (size_t i = 0; i < 2 * k_; i++) {
        next.push_back(conjugate(v.imgs_[i]));
    }
    imgs_ = std::move(next);
}

BitMatrix CliffordFrame::symplectic_matrix() const {
    BitMatrix m(2 * k_, 2 * k_);
    for (size_t i = 0; i < 2 * k_; i++) {
        for (size_t j = 0; j < k_; j++) {
            m.set(i, j, imgs_[i].x_bit(j));
            m.set(i, k_ + j, imgs_[i].z_bit(j));
        }
    }
    return m;
}

bool CliffordFrame::is_symplectic() const {
    for (size_t i = 0; i < 2 * k_; i++) {
        for (size_t j = 0; j < 2 * k_; j++) {
            bool want = (i + k_ == j) || (j + k_ == i);
            if (imgs_[i].commutes(imgs_[j]) == want) {
                return false;
            }
        }
    }
    return true;
}

CliffordFrame CliffordFrame::inverse() const {
    BitMatrix m = symplectic_matrix();
    // For symplectic M over GF(2): M^-1 = Omega M^T Omega.
    size_t k = k_;
    auto omega_conj = [&](const BitMatrix &a) {
        BitMatrix out(2 * k, 2 * k);
        for (size_t i = 0; i < 2 * k; i++) {
            for (size_t j = 0; j < 2 * k; j++) {
                out.set((i + k) % (2 * k), (j + k) % (2 * k), a.get(j, i));
            }
        }
        return out;
    };
    CliffordFrame inv = from_symplectic(omega_conj(m));
    // Fix signs so that conjugating a generator through both maps returns it.
    for (size_t i = 0; i < 2 * k_; i++) {
        PauliOperator gen(k_);
        if (i < k_) {
            gen.set_x(i, true);
        } else {
            gen.set_z(i - k_, true);
        }
        PauliOperator round = conjugate(inv.imgs_[i]);
        if (round.phase != gen.phase) {
            inv.imgs_[i].phase = uint8_t((inv.imgs_[i].phase + 2) & 3);
        }
    }
    return inv;
}

namespace {

std::vector<PauliOperator> stabilizer_generators(const ThreeRingCode &code) {
    std::vector<PauliOperator> gens;
    for (size_t r = 0; r < code.hx.rows(); r++) {
        PauliOperator p(code.n);
        for (size_t q = 0; q < code.n; q++) {
            p.set_x(q, code.hx.get(r, q));
        }
        gens.push_back(p);
    }
    for (size_t r = 0; r < code.hz.rows(); r++) {
        PauliOperator p(code.n);
        for (size_t q = 0; q < code.n; q++) {
            p.set_z(q, code.hz.get(r, q));
        }
        gens.push_back(p);
    }
    // Keep an independent subset.
    std::vector<PauliOperator> indep;
    BitMatrix acc(0, 2 * code.n);
    std::vector<std::vector<uint8_t>> rows;
    for (auto &g : gens) {
        std::vector<uint8_t> row(2 * code.n);
        for (size_t q = 0; q < code.n; q++) {
            row[q] = g.x_bit(q);
            row[code.n + q] = g.z_bit(q);
        }
        rows.push_back(row);
        BitMatrix cand = BitMatrix::from_rows(rows);
        if (rank(cand) == rows.size()) {
            indep.push_back(g);
        } else {
            rows.pop_back();
        }
    }
    return indep;
}

size_t pauli_weight_xor(const PauliOperator &a, const PauliOperator &b) {
    size_t w = 0;
    for (size_t i = 0; i < a.x.size(); i++) {
        w += std::popcount((a.x[i] ^ b.x[i]) | (a.z[i] ^ b.z[i]));
    }
    return w;
}

void xor_into(PauliOperator &a, const PauliOperator &b) {
    for (size_t i = 0; i < a.x.size(); i++) {
        a.x[i] ^= b.x[i];
        a.z[i] ^= b.z[i];
    }
}

bool lex_less(const PauliOperator &a, const PauliOperator &b) {
    if (a.weight() != b.weight()) {
        return a.weight() < b.weight();
    }
    if (a.x != b.x) {
        return a.x < b.x;
    }
    return a.z < b.z;
}

}  // namespace

OptimizedRep stabilizer_optimized(const PauliOperator &p,
                                  const ThreeRingCode &code,
                                  size_t search_iters, uint64_t seed) {
    std::vector<PauliOperator> gens = stabilizer_generators(code);
    for (const auto &g : gens) {
        if (!p.commutes(g)) {
            throw std::invalid_argument(
                    "operator anticommutes with a stabilizer");
        }
    }
    OptimizedRep out;
    if (gens.size() <= 24) {
        // Exhaustive span walk in Gray-code order.
        PauliOperator cur = p;
        PauliOperator best = p;
        uint32_t prev = 0;
        uint64_t total = uint64_t(1) << gens.size();
        for (uint64_t i = 1; i < total; i++) {
            uint32_t gray = uint32_t(i ^ (i >> 1));
            uint32_t diff = gray ^ prev;
            prev = gray;
            int bit = std::countr_zero(diff);
            xor_into(cur, gens[size_t(bit)]);
            if (lex_less(cur, best)) {
                best = cur;
            }
        }
        out.rep = best;
        out.exact = true;
        return out;
    }
    // Randomized information-set coset search plus greedy descent.
    size_t n = code.n;
    PauliOperator best = p;
    Rng rng(seed);
    std::vector<size_t> symbols(n);
    std::iota(symbols.begin(), symbols.end(), 0);
    size_t rows = gens.size() + 1;
    for (size_t iter = 0; iter < search_iters; iter++) {
        for (size_t i = n - 1; i > 0; i--) {
            std::swap(symbols[i], symbols[rng.next_below(i + 1)]);
        }
        std::vector<PauliOperator> work = gens;
        work.push_back(best);
        std::vector<uint8_t> marker(rows, 0);
        marker[rows - 1] = 1;
        size_t pivot_row = 0;
        for (size_t si = 0; si < n && pivot_row < rows; si++) {
            size_t q = symbols[si];
            for (int comp = 0; comp < 2 && pivot_row < rows; comp++) {
                size_t pr = pivot_row;
                auto bit_of = [&](const PauliOperator &op) {
                    return comp == 0 ? op.x_bit(q) : op.z_bit(q);
                };
                while (pr < rows && !bit_of(work[pr])) {
                    pr++;
                }
                if (pr == rows) {
                    continue;
                }
                std::swap(work[pr], work[pivot_row]);
                std::swap(marker[pr], marker[pivot_row]);
                for (size_t r = 0; r < rows; r++) {
                    if (r != pivot_row && bit_of(work[r])) {
                        xor_into(work[r], work[pivot_row]);
                        marker[r] ^= marker[pivot_row];
                    }
                }
                pivot_row++;
            }
        }
        for (size_t r = 0; r < rows; r++) {
            if (marker[r] && lex_less(work[r], best)) {
                best = work[r];
            }
        }
        // Pairwise sums containing the target odd times.
        for (size_t r = 0; r < rows; r++) {
            if (!marker[r]) {
                continue;
            }
            for (size_t r2 = 0; r2 < rows && r2 < 48; r2++) {
                if (r2 == r || marker[r2]) {
                    continue;
                }
                if (pauli_weight_xor(work[r], work[r2]) < best.weight()) {
                    PauliOperator cand = work[r];
                    xor_into(cand, work[r2]);
                    if (lex_less(cand, best)) {
                        best = cand;
                    }
                }
            }
        }
    }
    // Greedy descent over generators.
    bool improved = true;
    while (improved) {
        improved = false;
        for (const auto &g : gens) {
            if (pauli_weight_xor(best, g) < best.weight()) {
                xor_into(best, g);
                improved = true;
            }
        }
    }
    best.phase = 0;
    out.rep = best;
    out.exact = false;
    return out;
}

RepCache::RepCache(const ThreeRingCode &code, const SymplecticBasis &basis,
                   uint64_t seed)
    : code_(code), basis_(basis), rng_(seed) {
    stab_gens_ = stabilizer_generators(code);
}

std::vector<uint8_t> RepCache::class_of(const PauliOperator &p) const {
    std::vector<uint8_t> sig(2 * basis_.k());
    for (size_t i = 0; i < basis_.k(); i++) {
        sig[i] = !p.commutes(basis_.z_ops[i]);              // X exponent
        sig[basis_.k() + i] = !p.commutes(basis_.x_ops[i]);  // Z exponent
    }
    return sig;
}

void RepCache::offer(const PauliOperator &p) {
    std::vector<uint8_t> sig = class_of(p);
    bool is_stab = true;
    for (uint8_t b : sig) {
        is_stab &= b == 0;
    }
    if (is_stab) {
        if (p.weight() > 0 && p.weight() <= 2 * code_.check_weight &&
            stab_pool_.size() < 1200) {
            stab_pool_.push_back(p);
        }
        return;
    }
    auto it = best_.find(sig);
    if (it == best_.end()) {
        best_.emplace(sig, p);
    } else if (lex_less(p, it->second)) {
        it->second = p;
    }
}

void RepCache::harvest(size_t iters) {
    size_t n = code_.n;
    std::vector<PauliOperator> rows0 = stab_gens_;
    for (size_t i = 0; i < basis_.k(); i++) {
        rows0.push_back(basis_.x_ops[i]);
        rows0.push_back(basis_.z_ops[i]);
    }
    size_t rows = rows0.size();
    std::vector<size_t> symbols(n);
    std::iota(symbols.begin(), symbols.end(), 0);
    for (size_t iter = 0; iter < iters; iter++) {
        for (size_t i = n - 1; i > 0; i--) {
            std::swap(symbols[i], symbols[rng_.next_below(i + 1)]);
        }
        std::vector<PauliOperator> work = rows0;
        size_t pivot_row = 0;
        for (size_t si = 0; si < n && pivot_row < rows; si++) {
            size_t q = symbols[si];
            for (int comp = 0; comp < 2 && pivot_row < rows; comp++) {
                auto bit_of = [&](const PauliOperator &op) {
                    return comp == 0 ? op.x_bit(q) : op.z_bit(q);
                };
                size_t pr = pivot_row;
                while (pr < rows && !bit_of(work[pr])) {
                    pr++;
                }
                if (pr == rows) {
                    continue;
                }
                std::swap(work[pr], work[pivot_row]);
                for (size_t r = 0; r < rows; r++) {
                    if (r != pivot_row && bit_of(work[r])) {
                        xor_into(work[r], work[pivot_row]);
                    }
                }
                pivot_row++;
            }
        }
        for (size_t r = 0; r < rows; r++) {
            offer(work[r]);
        }
        size_t cap = std::min<size_t>(rows, 64);
        for (size_t r = 0; r + 1 < cap; r++) {
            for (size_t r2 = r + 1; r2 < cap; r2++) {
                PauliOperator cand = work[r];
                xor_into(cand, work[r2]);
                offer(cand);
            }
        }
    }
}

void RepCache::polish_worst(size_t threshold, size_t iters,
                            size_t max_classes, size_t batch) {
    std::vector<std::vector<uint8_t>> worst;
    for (const auto &[sig, rep] : best_) {
        if (rep.weight() > threshold) {
            worst.push_back(sig);
        }
    }
    if (worst.size() > max_classes) {
        // Keep the heaviest classes.
        std::sort(worst.begin(), worst.end(),
                  [&](const auto &a, const auto &b) {
                      return best_.at(a).weight() > best_.at(b).weight();
                  });
        worst.resize(max_classes);
    }
    polish_classes(worst, iters, batch);
}

void RepCache::polish_classes(const std::vector<std::vector<uint8_t>> &sigs,
                              size_t iters, size_t batch) {
    const std::vector<std::vector<uint8_t>> &worst = sigs;
    // Batched information-set coset search: one elimination serves up to 64
    // target classes, tracked through marker masks.
    const size_t batch_size = std::max<size_t>(1, std::min<size_t>(batch, 64));
    size_t nbatches = (worst.size() + batch_size - 1) / batch_size;
    std::vector<uint64_t> seeds(nbatches);
    for (size_t i = 0; i < nbatches; i++) {
        seeds[i] = rng_.next_u64();
    }
    std::vector<std::vector<PauliOperator>> improved(nbatches);
    parallel_for(nbatches, [&](size_t bi) {
        size_t lo = bi * batch_size;
        size_t hi = std::min(worst.size(), lo + batch_size);
        size_t ntargets = hi - lo;
        std::vector<PauliOperator> bests;
        for (size_t t = lo; t < hi; t++) {
            bests.push_back(best_.at(worst[t]));
        }
        size_t n = code_.n;
        Rng rng(seeds[bi]);
        std::vector<size_t> symbols(n);
        std::iota(symbols.begin(), symbols.end(), 0);
        size_t rows = stab_gens_.size() + ntargets;
        std::vector<PauliOperator> work;
        std::vector<uint64_t> marker;
        for (size_t iter = 0; iter < iters; iter++) {
            for (size_t i = n - 1; i > 0; i--) {
                std::swap(symbols[i], symbols[rng.next_below(i + 1)]);
            }
            work = stab_gens_;
            marker.assign(rows, 0);
            for (size_t t = 0; t < ntargets; t++) {
                work.push_back(bests[t]);
                marker[stab_gens_.size() + t] = uint64_t{1} << t;
            }
            size_t pivot_row = 0;
            for (size_t si = 0; si < n && pivot_row < rows; si++) {
                size_t q = symbols[si];
                for (int comp = 0; comp < 2 && pivot_row < rows; comp++) {
                    auto bit_of = [&](const PauliOperator &op) {
                        return comp == 0 ? op.x_bit(q) : op.z_bit(q);
                    };
                    size_t pr = pivot_row;
                    while (pr < rows && !bit_of(work[pr])) {
                        pr++;
                    }
                    if (pr == rows) {
                        continue;
                    }
                    std::swap(work[pr], work[pivot_row]);
                    std::swap(marker[pr], marker[pivot_row]);
                    for (size_t r = 0; r < rows; r++) {
                        if (r != pivot_row && bit_of(work[r])) {
                            xor_into(work[r], work[pivot_row]);
                            marker[r] ^= marker[pivot_row];
                        }
                    }
                    pivot_row++;
                }
            }
            auto consider = [&](const PauliOperator &cand, uint64_t mask) {
                if (std::popcount(mask) != 1) {
                    return;
                }
                size_t t = size_t(std::countr_zero(mask));
                if (lex_less(cand, bests[t])) {
                    bests[t] = cand;
                }
            };
            for (size_t r = 0; r < rows; r++) {
                if (marker[r]) {
                    consider(work[r], marker[r]);
                }
            }
            for (size_t r = 0; r < rows; r++) {
                if (!marker[r]) {
                    continue;
                }
                for (size_t r2 = 0; r2 < rows; r2++) {
                    if (r2 == r) {
                        continue;
                    }
                    uint64_t mask = marker[r] ^ marker[r2];
                    if (std::popcount(mask) != 1) {
                        continue;
                    }
                    size_t t = size_t(std::countr_zero(mask));
                    if (pauli_weight_xor(work[r], work[r2]) <
                        bests[t].weight()) {
                        PauliOperator cand = work[r];
                        xor_into(cand, work[r2]);
                        consider(cand, mask);
                    }
                }
            }
        }
        for (auto &b : bests) {
            b.phase = 0;
        }
        improved[bi] = std::move(bests);
    });
    for (size_t bi = 0; bi < nbatches; bi++) {
        size_t lo = bi * batch_size;
        for (size_t t = 0; t < improved[bi].size(); t++) {
            PauliOperator cand = descend(improved[bi][t]);
            auto it = best_.find(worst[lo + t]);
            if (lex_less(cand, it->second)) {
                it->second = cand;
            }
        }
    }
}

void RepCache::anneal_worst(size_t threshold, size_t steps) {
    std::vector<std::vector<uint8_t>> sigs;
    for (const auto &[sig, rep] : best_) {
        if (rep.weight() > threshold) {
            sigs.push_back(sig);
        }
    }
    std::vector<const PauliOperator *> moves;
    for (const auto &g : stab_gens_) {
        moves.push_back(&g);
    }
    for (const auto &g : stab_pool_) {
        moves.push_back(&g);
    }
    if (moves.empty()) {
        return;
    }
    std::vector<uint64_t> seeds(sigs.size());
    for (size_t i = 0; i < sigs.size(); i++) {
        seeds[i] = rng_.next_u64();
    }
    std::vector<PauliOperator> results(sigs.size());
    parallel_for(sigs.size(), [&](size_t ci) {
        Rng rng(seeds[ci]);
        PauliOperator cur = best_.at(sigs[ci]);
        PauliOperator best = cur;
        size_t cur_w = cur.weight();
        size_t best_w = cur_w;
        const double t0 = 2.5, t1 = 0.05;
        PauliOperator pair_mv(cur.n);
        for (size_t step = 0; step < steps; step++) {
            double frac = double(step) / double(steps);
            double temp = t0 * std::pow(t1 / t0, frac);
            const PauliOperator *mv = moves[rng.next_below(moves.size())];
            if (rng.next_below(5) == 0) {
                // Compound move: a product of two stabilizers tunnels
                // through barriers a single move cannot.
                pair_mv = *mv;
                xor_into(pair_mv, *moves[rng.next_below(moves.size())]);
                mv = &pair_mv;
            }
            size_t cand_w = pauli_weight_xor(cur, *mv);
            double delta = double(cand_w) - double(cur_w);
            if (delta <= 0 ||
                rng.next_double() < std::exp(-delta / temp)) {
                xor_into(cur, *mv);
                cur_w = cand_w;
                if (cur_w < best_w ||
                    (cur_w == best_w && lex_less(cur, best))) {
                    best = cur;
                    best_w = cur_w;
                }
            }
        }
        best.phase = 0;
        results[ci] = best;
    });
    for (size_t ci = 0; ci < sigs.size(); ci++) {
        PauliOperator cand = descend(results[ci]);
        auto it = best_.find(sigs[ci]);
        if (lex_less(cand, it->second)) {
            it->second = cand;
        }
    }
}

const PauliOperator *RepCache::find_class(
        const std::vector<uint8_t> &sig) const {
    auto it = best_.find(sig);
    return it == best_.end() ? nullptr : &it->second;
}

void RepCache::offer_permuted(const std::vector<uint32_t> &perm,
                              bool swap_xz) {
    std::vector<PauliOperator> snapshot;
    snapshot.reserve(best_.size());
    for (const auto &[sig, rep] : best_) {
        snapshot.push_back(rep);
    }
    for (const auto &rep : snapshot) {
        PauliOperator moved(rep.n);
        for (size_t q = 0; q < rep.n; q++) {
            bool xb = rep.x_bit(q), zb = rep.z_bit(q);
            if (swap_xz) {
                std::swap(xb, zb);
            }
            if (xb) {
                moved.set_x(perm[q], true);
            }
            if (zb) {
                moved.set_z(perm[q], true);
            }
        }
        offer(moved);
    }
}

PauliOperator RepCache::descend(PauliOperator p) {
    bool improved = true;
    while (improved) {
        improved = false;
        for (const auto &g : stab_gens_) {
            if (pauli_weight_xor(p, g) < p.weight()) {
                xor_into(p, g);
                improved = true;
            }
        }
        for (const auto &g : stab_pool_) {
            if (pauli_weight_xor(p, g) < p.weight()) {
                xor_into(p, g);
                improved = true;
            }
        }
    }
    return p;
}

const PauliOperator &RepCache::best(const PauliOperator &p) {
    std::vector<uint8_t> sig = class_of(p);
    auto it = best_.find(sig);
    PauliOperator cand = descend(p);
    if (it == best_.end()) {
        it = best_.emplace(sig, cand).first;
    } else if (lex_less(cand, it->second)) {
        it->second = cand;
    }
    return it->second;
}

size_t RepCache::best_weight(const PauliOperator &p) {
    return best(p).weight();
}

namespace {

bool valid_symplectic_basis(const SymplecticBasis &basis,
                            const ThreeRingCode &code) {
    size_t k = basis.k();
    for (size_t i = 0; i < k; i++) {
        for (size_t j = 0; j < k; j++) {
            if (basis.x_ops[i].commutes(basis.z_ops[j]) != (i != j)) {
                return false;
            }
            if (!basis.x_ops[i].commutes(basis.x_ops[j]) ||
                !basis.z_ops[i].commutes(basis.z_ops[j])) {
                return false;
            }
        }
    }
    for (const auto &g : stabilizer_generators(code)) {
        for (size_t i = 0; i < k; i++) {
            if (!basis.x_ops[i].commutes(g) || !basis.z_ops[i].commutes(g)) {
                return false;
            }
        }
    }
    return true;
}

}  // namespace

TabuResult tabu_reduce_basis(const SymplecticBasis &start,
                             const ThreeRingCode &code, size_t steps,
                             size_t tabu_tenure, bool preserve_self_similarity,
                             uint64_t seed, size_t harvest_iters) {
    if (!valid_symplectic_basis(start, code)) {
        throw std::invalid_argument("tabu start is not a symplectic basis");
    }
    size_t k = start.k();
    RepCache cache(code, start, seed);
    cache.harvest(harvest_iters);

    auto weights_of = [&](const SymplecticBasis &b) {
        std::vector<size_t> w;
        for (size_t i = 0; i < k; i++) {
            w.push_back(cache.best_weight(b.x_ops[i]));
        }
        for (size_t i = 0; i < k; i++) {
            w.push_back(cache.best_weight(b.z_ops[i]));
        }
        return w;
    };
    auto score = [](const std::vector<size_t> &w) {
        size_t mx = 0, sum = 0;
        for (size_t v : w) {
            mx = std::max(mx, v);
            sum += v;
        }
        return std::make_pair(mx, sum);
    };

    SymplecticBasis cur = start;
    std::vector<size_t> cur_w = weights_of(cur);
    SymplecticBasis best_basis = cur;
    auto best_score = score(cur_w);

    struct Move {
        size_t u, v;
    };
    std::vector<Move> moves;
    for (size_t u = 0; u < k; u++) {
        for (size_t v = 0; v < k; v++) {
            if (u != v && (!preserve_self_similarity || u < v)) {
                moves.push_back({u, v});
            }
        }
    }
    if (moves.empty()) {
        TabuResult out;
        out.basis = cur;
        out.weights = cur_w;
        out.max_weight = best_score.first;
        return out;
    }
    std::vector<size_t> tabu_until(moves.size(), 0);

    auto apply_move = [&](const SymplecticBasis &b, const Move &m) {
        SymplecticBasis nb = b;
        if (!preserve_self_similarity) {
            nb.x_ops[m.u] = b.x_ops[m.u] * b.x_ops[m.v];
            nb.z_ops[m.v] = b.z_ops[m.u] * b.z_ops[m.v];
        } else {
            // Quadruple rule on {Xu, Xv, Zu, Zv}: each becomes the product
            // of the other three.
            const PauliOperator &xu = b.x_ops[m.u], &xv = b.x_ops[m.v];
            const PauliOperator &zu = b.z_ops[m.u], &zv = b.z_ops[m.v];
            nb.x_ops[m.u] = xv * zu * zv;
            nb.x_ops[m.v] = xu * zu * zv;
            nb.z_ops[m.u] = xu * xv * zv;
            nb.z_ops[m.v] = xu * xv * zu;
        }
        return nb;
    };

    for (size_t step = 1; step <= steps; step++) {
        size_t chosen = SIZE_MAX;
        std::pair<size_t, size_t> chosen_score{SIZE_MAX, SIZE_MAX};
        SymplecticBasis chosen_basis;
        std::vector<size_t> chosen_w;
        for (size_t mi = 0; mi < moves.size(); mi++) {
            SymplecticBasis nb = apply_move(cur, moves[mi]);
            std::vector<size_t> w = weights_of(nb);
            auto sc = score(w);
            bool tabu = tabu_until[mi] >= step;
            if (tabu && !(sc < best_score)) {
                continue;  // aspiration: only a new global best overrides
            }
            if (sc < chosen_score) {
                chosen_score = sc;
                chosen = mi;
                chosen_basis = nb;
                chosen_w = w;
            }
        }
        if (chosen == SIZE_MAX) {
            break;
        }
        cur = std::move(chosen_basis);
        cur_w = std::move(chosen_w);
        tabu_until[chosen] = step + tabu_tenure;
        if (chosen_score < best_score) {
            best_score = chosen_score;
            best_basis = cur;
        }
    }

    // Report the best basis with stabilizer-optimized representatives.
    TabuResult out;
    out.basis = best_basis;
    for (size_t i = 0; i < k; i++) {
        out.basis.x_ops[i] = cache.best(best_basis.x_ops[i]);
        out.basis.x_ops[i].phase = 0;
    }
    for (size_t i = 0; i < k; i++) {
        out.basis.z_ops[i] = cache.best(best_basis.z_ops[i]);
        out.basis.z_ops[i].phase = 0;
    }
    if (!valid_symplectic_basis(out.basis, code)) {
        throw std::logic_error("tabu produced an invalid basis");
    }
    out.weights = weights_of(out.basis);
    out.max_weight = score(out.weights).first;
    return out;
}

AccessibleSet accessible_set(const ThreeRingCode &code,
                             const SymplecticBasis &basis, size_t w,
                             size_t harvest_iters, uint64_t seed,
                             size_t polish_rounds) {
    size_t k = basis.k();
    if (w > k) {
        throw std::invalid_argument("logical width exceeds k");
    }
    RepCache cache(code, basis, seed);
    cache.harvest(harvest_iters);

    // Enumerate logical classes of weight <= w as (a, b) exponent vectors.
    std::vector<std::vector<uint8_t>> classes;
    std::vector<uint8_t> a(k, 0), b(k, 0);
    std::vector<size_t> support;
    std::function<void(size_t, size_t)> rec = [&](size_t start, size_t left) {
        if (!support.empty()) {
            std::vector<uint8_t> key(2 * k);
            std::copy(a.begin(), a.end(), key.begin());
            std::copy(b.begin(), b.end(), key.begin() + k);
            classes.push_back(key);
        }
        if (left == 0) {
            return;
        }
        for (size_t i = start; i < k; i++) {
            for (int pauli = 1; pauli < 4; pauli++) {
                a[i] = pauli & 1;
                b[i] = pauli >> 1;
                support.push_back(i);
                rec(i + 1, left - 1);
                support.pop_back();
                a[i] = b[i] = 0;
            }
        }
    };
    rec(0, w);

    auto rep_of_key = [&](const std::vector<uint8_t> &key) {
        PauliOperator p(code.n);
        for (size_t i = 0; i < k; i++) {
            if (key[i]) {
                p = p * basis.x_ops[i];
            }
            if (key[k + i]) {
                p = p * basis.z_ops[i];
            }
        }
        p.phase = 0;
        return p;
    };

    AccessibleSet out;
    out.logical_width = w;
    out.count = classes.size();
    for (const auto &key : classes) {
        PauliOperator rep = cache.best(rep_of_key(key));
        rep.phase = 0;
        out.table.emplace(key, rep);
    }

    // CSS split: minimize the pure-X and pure-Z part classes first (a purely
    // binary coset problem with much better information-set behavior), then
    // seed every mixed class from the product of its parts.
    {
        std::map<std::vector<uint8_t>, uint8_t> sided;
        for (const auto &key : classes) {
            std::vector<uint8_t> xa(2 * k, 0), zb(2 * k, 0);
            bool has_x = false, has_z = false;
            for (size_t i = 0; i < k; i++) {
                xa[i] = key[i];
                has_x |= key[i] != 0;
                zb[k + i] = key[k + i];
                has_z |= key[k + i] != 0;
            }
            if (has_x) {
                sided.emplace(xa, 1);
            }
            if (has_z) {
                sided.emplace(zb, 1);
            }
        }
        std::vector<std::vector<uint8_t>> sided_list;
        for (const auto &[sig, tag] : sided) {
            cache.best(rep_of_key(sig));  // ensure cached
            sided_list.push_back(sig);
        }
        size_t side_iters = sided_list.size() > 500 ? 700 : 1500;
        cache.polish_classes(sided_list, side_iters, 64);
        for (auto &[key, rep] : out.table) {
            std::vector<uint8_t> xa(2 * k, 0), zb(2 * k, 0);
            bool has_x = false, has_z = false;
            for (size_t i = 0; i < k; i++) {
                xa[i] = key[i];
                has_x |= key[i] != 0;
                zb[k + i] = key[k + i];
                has_z |= key[k + i] != 0;
            }
            const PauliOperator *px =
                    has_x ? cache.find_class(xa) : nullptr;
            const PauliOperator *pz =
                    has_z ? cache.find_class(zb) : nullptr;
            PauliOperator cand(code.n);
            if (has_x && has_z && px && pz) {
                cand = *px * *pz;
            } else if (has_x && px) {
                cand = *px;
            } else if (has_z && pz) {
                cand = *pz;
            } else {
                continue;
            }
            cand.phase = 0;
            if (cand.weight() < rep.weight()) {
                rep = cand;
            }
        }
    }
    // Closure polish: try assembling each class from a lighter sub-class
    // plus a single-symbol class.
    for (size_t round = 0; round < polish_rounds; round++) {
        bool improved = false;
        for (auto &[key, rep] : out.table) {
            for (size_t i = 0; i < k; i++) {
                int pauli = key[i] | (key[k + i] << 1);
                if (!pauli) {
                    continue;
                }
                std::vector<uint8_t> sub = key;
                sub[i] = sub[k + i] = 0;
                std::vector<uint8_t> single(2 * k, 0);
                single[i] = key[i];
                single[k + i] = key[k + i];
                auto sit = out.table.find(single);
                PauliOperator cand(code.n);
                bool sub_empty = true;
                for (uint8_t vbit : sub) {
                    sub_empty &= vbit == 0;
                }
                if (sub_empty) {
                    continue;
                }
                auto bit = out.table.find(sub);
                if (bit == out.table.end() || sit == out.table.end()) {
                    continue;
                }
                cand = bit->second * sit->second;
                cand.phase = 0;
                if (cand.weight() < rep.weight()) {
                    const PauliOperator &better = cache.best(cand);
                    if (better.weight() < rep.weight()) {
                        rep = better;
                        rep.phase = 0;
                        improved = true;
                    }
                }
            }
        }
        if (!improved) {
            break;
        }
    }
    // Cyclic-shift permutations preserve weight and the stabilizer group,
    // so minima propagate across shift orbits. The transpose duality
    // (half swap, exponent negation, X<->Z exchange) is a further
    // weight-preserving automorphism coupling the two sectors.
    struct SymAction {
        std::vector<uint32_t> perm;
        bool swap_xz = false;
    };
    std::vector<SymAction> shift_perms;
    for (auto [si, sj] : {std::pair<int, int>{1, 0}, {0, 1}}) {
        if ((si && code.b < 2) || (sj && code.c < 2)) {
            continue;
        }
        SymAction act;
        act.perm.resize(code.n);
        size_t half = code.half();
        for (size_t q = 0; q < code.n; q++) {
            size_t base = q < half ? 0 : half;
            size_t idx = q - base;
            int v = int(idx) / code.c, z = int(idx) % code.c;
            act.perm[q] = uint32_t(base +
                                   size_t((v + si) % code.b) * size_t(code.c) +
                                   size_t((z + sj) % code.c));
        }
        shift_perms.push_back(std::move(act));
    }
    {
        SymAction dual;
        dual.swap_xz = true;
        dual.perm.resize(code.n);
        size_t half = code.half();
        for (size_t q = 0; q < code.n; q++) {
            size_t base = q < half ? half : 0;  // swap halves
            size_t idx = q < half ? q : q - half;
            int v = int(idx) / code.c, z = int(idx) % code.c;
            dual.perm[q] = uint32_t(base +
                                    size_t((code.b - v) % code.b) *
                                            size_t(code.c) +
                                    size_t((code.c - z) % code.c));
        }
        shift_perms.push_back(std::move(dual));
    }

    auto closure_sweep = [&]() {
        bool improved = false;
        for (auto &[key, rep] : out.table) {
            // All proper splits of the symbol support.
            std::vector<size_t> supp;
            for (size_t i = 0; i < k; i++) {
                if (key[i] || key[k + i]) {
                    supp.push_back(i);
                }
            }
            if (supp.size() < 2) {
                continue;
            }
            size_t combos = size_t(1) << supp.size();
            for (size_t mask = 1; mask + 1 < combos; mask++) {
                std::vector<uint8_t> part1(2 * k, 0), part2(2 * k, 0);
                for (size_t s = 0; s < supp.size(); s++) {
                    size_t i = supp[s];
                    auto &dst = ((mask >> s) & 1) ? part1 : part2;
                    dst[i] = key[i];
                    dst[k + i] = key[k + i];
                }
                auto it1 = out.table.find(part1);
                auto it2 = out.table.find(part2);
                if (it1 == out.table.end() || it2 == out.table.end()) {
                    continue;
                }
                if (it1->second.weight() + it2->second.weight() >=
                    rep.weight()) {
                    continue;
                }
                PauliOperator cand = it1->second * it2->second;
                cand.phase = 0;
                if (cand.weight() < rep.weight()) {
                    rep = cand;
                    improved = true;
                }
            }
        }
        return improved;
    };

    auto table_width = [&]() {
        size_t bw = 0;
        for (const auto &[key, rep] : out.table) {
            bw = std::max(bw, rep.weight());
        }
        return bw;
    };
    auto refresh_from_cache = [&]() {
        for (auto &[key, rep] : out.table) {
            const PauliOperator &better = cache.best(rep);
            if (better.weight() < rep.weight()) {
                rep = better;
                rep.phase = 0;
            }
        }
    };

    // Cyclic shifts act linearly on class signatures, so each class can scan
    // its whole orbit for a lighter cached representative and pull it back
    // through the inverse permutation.
    auto apply_action = [&](const PauliOperator &p,
                            const std::vector<uint32_t> &perm, bool swap_xz) {
        PauliOperator moved(p.n);
        for (size_t q = 0; q < p.n; q++) {
            bool xb = p.x_bit(q), zb = p.z_bit(q);
            if (swap_xz) {
                std::swap(xb, zb);
            }
            if (xb) {
                moved.set_x(perm[q], true);
            }
            if (zb) {
                moved.set_z(perm[q], true);
            }
        }
        return moved;
    };
    struct OrbitAction {
        std::vector<uint32_t> inv_perm;
        bool swap_xz = false;
        std::vector<std::vector<uint8_t>> sig_images;  // per generator index
    };
    std::vector<OrbitAction> actions;
    for (const auto &sym : shift_perms) {
        // The action must fix the stabilizer group; skip it otherwise.
        bool preserves = true;
        for (size_t r = 0; r < code.hx.rows() && preserves; r++) {
            PauliOperator sx(code.n), sz(code.n);
            for (size_t q = 0; q < code.n; q++) {
                sx.set_x(q, code.hx.get(r, q));
                sz.set_z(q, code.hz.get(r, q));
            }
            std::vector<uint8_t> zero(2 * k, 0);
            preserves &= cache.class_of(apply_action(sx, sym.perm,
                                                     sym.swap_xz)) == zero;
            preserves &= cache.class_of(apply_action(sz, sym.perm,
                                                     sym.swap_xz)) == zero;
        }
        if (!preserves) {
            continue;
        }
        OrbitAction act;
        act.swap_xz = sym.swap_xz;
        act.inv_perm.resize(sym.perm.size());
        for (size_t q = 0; q < sym.perm.size(); q++) {
            act.inv_perm[sym.perm[q]] = uint32_t(q);
        }
        for (size_t i = 0; i < 2 * k; i++) {
            const PauliOperator &gen =
                    i < k ? basis.x_ops[i] : basis.z_ops[i - k];
            act.sig_images.push_back(
                    cache.class_of(apply_action(gen, sym.perm, sym.swap_xz)));
        }
        actions.push_back(std::move(act));
    }
    auto act_on_sig = [&](const OrbitAction &act,
                          const std::vector<uint8_t> &sig) {
        std::vector<uint8_t> out(2 * k, 0);
        for (size_t i = 0; i < 2 * k; i++) {
            if (!sig[i]) {
                continue;
            }
            for (size_t j = 0; j < 2 * k; j++) {
                out[j] ^= act.sig_images[i][j];
            }
        }
        return out;
    };
    auto orbit_boost = [&]() {
        // Push cached representatives one step along each orbit; affordable
        // for small k, where the cache stays compact.
        if (k <= 8) {
            for (const auto &sym : shift_perms) {
                cache.offer_permuted(sym.perm, sym.swap_xz);
            }
        }
        for (const auto &act : actions) {
            for (auto &[key, rep] : out.table) {
                std::vector<uint8_t> sig = key;
                size_t best_j = 0;
                size_t best_w = rep.weight();
                const PauliOperator *best_src = nullptr;
                for (size_t j = 1; j < size_t(code.b) * size_t(code.c); j++) {
                    sig = act_on_sig(act, sig);
                    if (sig == key) {
                        break;  // full orbit walked
                    }
                    const PauliOperator *src = cache.find_class(sig);
                    if (src && src->weight() < best_w) {
                        best_w = src->weight();
                        best_j = j;
                        best_src = src;
                    }
                }
                if (best_src) {
                    PauliOperator pulled = *best_src;
                    for (size_t j = 0; j < best_j; j++) {
                        pulled = apply_action(pulled, act.inv_perm,
                                              act.swap_xz);
                    }
                    pulled.phase = 0;
                    if (cache.class_of(pulled) != key) {
                        throw std::logic_error(
                                "orbit pull landed in the wrong class");
                    }
                    rep = pulled;
                }
            }
        }
    };

    auto table_total = [&]() {
        size_t total = 0;
        for (const auto &[key, rep] : out.table) {
            total += rep.weight();
        }
        return total;
    };
    size_t stale = 0;
    size_t bw = table_width();
    size_t total = table_total();
    bool big = out.table.size() > 10000;
    for (size_t round = 0; round < 14 && stale < 3; round++) {
        orbit_boost();
        refresh_from_cache();
        while (closure_sweep()) {
        }
        std::vector<size_t> ws;
        ws.reserve(out.table.size());
        for (const auto &[key, rep] : out.table) {
            ws.push_back(rep.weight());
        }
        std::sort(ws.begin(), ws.end());
        size_t thresh_low = ws[ws.size() / 4];
        (void)thresh_low;
        if (big) {
            // Anneal broadly over stabilizer moves, then a deep
            // information-set pass on the stragglers near the top.
            cache.anneal_worst(thresh_low, 2500);
            orbit_boost();
            refresh_from_cache();
            while (closure_sweep()) {
            }
            cache.polish_worst(table_width() >= 4 ? table_width() - 4 : 0, 300,
                               2048, 8);
        } else {
            cache.anneal_worst(thresh_low, 4000);
            orbit_boost();
            refresh_from_cache();
            while (closure_sweep()) {
            }
            cache.polish_worst(thresh_low, 100, SIZE_MAX, 16);
            cache.polish_worst(table_width() >= 3 ? table_width() - 3 : 0, 300,
                               512, 1);
        }
        orbit_boost();
        refresh_from_cache();
        while (closure_sweep()) {
        }
        size_t nbw = table_width();
        size_t ntotal = table_total();
        stale = (nbw == bw && ntotal >= total) ? stale + 1 : 0;
        bw = nbw;
        total = ntotal;
    }
    out.block_width = table_width();
    return out;
}

CyclicGateAction cyclic_gate_action(const ThreeRingCode &code,
                                    const SymplecticBasis &basis, int shift_i,
                                    int shift_j) {
    size_t half = code.half();
    int b = code.b, c = code.c;
    auto perm = [&](size_t q) {
        size_t base = q < half ? 0 : half;
        size_t idx = q - base;
        int v = int(idx) / c, z = int(idx) % c;
        int v2 = ((v + shift_i) % b + b) % b;
        int z2 = ((z + shift_j) % c + c) % c;
        return base + size_t(v2) * size_t(c) + size_t(z2);
    };
    // Stabilizer preservation: the permuted HX rows must be a permutation of
    // the original rows.
    auto permuted_rows_match = [&](const BitMatrix &h) {
        std::vector<std::vector<uint8_t>> orig, moved;
        for (size_t r = 0; r < h.rows(); r++) {
            std::vector<uint8_t> row(h.cols(), 0), prow(h.cols(), 0);
            for (size_t q = 0; q < h.cols(); q++) {
                row[q] = h.get(r, q);
                if (h.get(r, q)) {
                    prow[perm(q)] = 1;
                }
            }
            orig.push_back(row);
            moved.push_back(prow);
        }
        std::sort(orig.begin(), orig.end());
        std::sort(moved.begin(), moved.end());
        return orig == moved;
    };
    if (!permuted_rows_match(code.hx) || !permuted_rows_match(code.hz)) {
        throw std::invalid_argument("shift does not preserve the stabilizers");
    }
    size_t k = basis.k();
    BitMatrix lx(k, code.n), lz(k, code.n), lxp(k, code.n), lzp(k, code.n);
    for (size_t i = 0; i < k; i++) {
        for (size_t q = 0; q < code.n; q++) {
            if (basis.x_ops[i].x_bit(q)) {
                lx.set(i, q, true);
                lxp.set(i, perm(q), true);
            }
            if (basis.z_ops[i].z_bit(q)) {
                lz.set(i, q, true);
                lzp.set(i, perm(q), true);
            }
        }
    }
    CyclicGateAction out;
    out.g = lxp * lz.transposed();
    // (G^-1)^T from the Z side: L'_Z L_X^T.
    BitMatrix ginv_t = lzp * lx.transposed();
    // Sanity: G * (ginv_t)^T = I.
    if (!(out.g * ginv_t.transposed() == BitMatrix::identity(k))) {
        throw std::logic_error("cyclic gate blocks are inconsistent");
    }
    out.full = BitMatrix(2 * k, 2 * k);
    for (size_t i = 0; i < k; i++) {
        for (size_t j = 0; j < k; j++) {
            out.full.set(i, j, out.g.get(i, j));
            out.full.set(k + i, k + j, ginv_t.get(i, j));
        }
    }
    // Order of G.
    BitMatrix acc = out.g;
    size_t order = 1;
    while (!(acc == BitMatrix::identity(k)) && order < 100000) {
        acc = acc * out.g;
        order++;
    }
    out.order = order;
    return out;
}

}  // namespace wck
