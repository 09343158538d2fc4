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

#include "wck/codes.h"

#include <algorithm>
#include <bit>
#include <fstream>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "wck/util.h"

namespace wck {

std::string family_name(CodeFamily f) {
    switch (f) {
        case CodeFamily::GB:
            return "GB";
        case CodeFamily::BB:
            return "BB";
        case CodeFamily::CyclicHGP:
            return "cyclic-HGP";
    }
    return "?";
}

CodeFamily family_from_name(const std::string &s) {
    if (s == "GB" || s == "gb") {
        return CodeFamily::GB;
    }
    if (s == "BB" || s == "bb") {
        return CodeFamily::BB;
    }
    if (s == "cyclic-HGP" || s == "HGP" || s == "hgp" || s == "cyclic-hgp") {
        return CodeFamily::CyclicHGP;
    }
    throw std::invalid_argument("unknown code family '" + s + "'");
}

ThreeRingCode construct(CodeFamily family, int ell, int m,
                        const MonomialPolynomial &A,
                        const MonomialPolynomial &B) {
    if (A.terms.empty() || B.terms.empty()) {
        throw std::invalid_argument("A and B must be nonempty");
    }
    if (A.ell != ell || A.m != m || B.ell != ell || B.m != m) {
        throw std::invalid_argument("polynomial ring sizes disagree with (ell, m)");
    }
    if (family == CodeFamily::GB && m != 1) {
        throw std::invalid_argument("GB codes require m = 1");
    }
    if (family == CodeFamily::CyclicHGP) {
        for (const auto &t : A.terms) {
            if (t.j != 0) {
                throw std::invalid_argument(
                        "cyclic-HGP requires A to use powers of x only");
            }
        }
        for (const auto &t : B.terms) {
            if (t.i != 0) {
                throw std::invalid_argument(
                        "cyclic-HGP requires B to use powers of y only");
            }
        }
    }
    ThreeRingCode code;
    code.family = family;
    code.a = 2;
    code.b = ell;
    code.c = m;
    code.A = A;
    code.B = B;
    BitMatrix ea = A.expand();
    BitMatrix eb = B.expand();
    code.hx = ea.hstack(eb);
    code.hz = eb.transposed().hstack(ea.transposed());
    code.n = 2 * size_t(ell) * size_t(m);
    code.check_weight = A.weight() + B.weight();
    if (!(code.hx * code.hz.transposed()).is_zero()) {
        // Impossible for [A|B] / [B^T|A^T] over a commutative monomial ring.
        throw std::logic_error("internal: CSS condition violated");
    }
    size_t rx = rank(code.hx);
    size_t rz = rank(code.hz);
    code.k = code.n - rx - rz;
    return code;
}

ThreeRingCode construct(CodeFamily family, int ell, int m, const std::string &A,
                        const std::string &B) {
    return construct(family, ell, m, MonomialPolynomial::parse(ell, m, A),
                     MonomialPolynomial::parse(ell, m, B));
}

namespace {

// Membership test against a fixed row space, prepared once.
struct RowSpaceTester {
    BitMatrix ech;
    std::vector<size_t> pivots;

    explicit RowSpaceTester(const BitMatrix &m) : ech(m) {
        pivots = row_echelon(ech);
    }

    bool contains(const uint64_t *v, size_t words) const {
        std::vector<uint64_t> tmp(v, v + words);
        for (size_t i = 0; i < pivots.size(); i++) {
            size_t c = pivots[i];
            if ((tmp[c >> 6] >> (c & 63)) & 1) {
                const uint64_t *r = ech.row(i);
                for (size_t w = 0; w < words; w++) {
                    tmp[w] ^= r[w];
                }
            }
        }
        for (uint64_t w : tmp) {
            if (w) {
                return false;
            }
        }
        return true;
    }
};

// Exact minimum weight over gen's row space excluding the rows spanned by
// `sub`, certified with information-set lower bounds (Brouwer-Zimmermann).
size_t exact_coset_min(const BitMatrix &gen, const BitMatrix &sub,
                       uint64_t combo_budget) {
    size_t n = gen.cols();
    size_t words = gen.words_per_row();
    size_t big_k = gen.rows();
    RowSpaceTester tester(sub);

    // Build information sets by repeated systematization over unused columns.
    struct InfoSet {
        BitMatrix rows;   // big_k x n, pivot rows in systematic form first
        size_t rank = 0;  // pivots found inside this set's columns
    };
    std::vector<InfoSet> sets;
    std::vector<uint8_t> used(n, 0);
    while (true) {
        BitMatrix work = sets.empty() ? gen : sets.back().rows;
        // Eliminate using only unused columns.
        size_t r = 0;
        std::vector<size_t> pivots;
        for (size_t c = 0; c < n && r < big_k; c++) {
            if (used[c]) {
                continue;
            }
            size_t pr = r;
            while (pr < big_k && !work.get(pr, c)) {
                pr++;
            }
            if (pr == big_k) {
                continue;
            }
            work.swap_rows(pr, r);
            for (size_t rr = 0; rr < big_k; rr++) {
                if (rr != r && work.get(rr, c)) {
                    work.xor_row_into(r, rr);
                }
            }
            pivots.push_back(c);
            r++;
        }
        if (r == 0) {
            break;
        }
        for (size_t c : pivots) {
            used[c] = 1;
        }
        sets.push_back({work, r});
        if (sets.size() > 8) {
            break;
        }
    }

    size_t ub = n + 1;
    std::vector<uint64_t> acc(words);
    uint64_t combos_done = 0;

    // Enumerates all XOR-combinations of exactly `w` rows.
    std::function<void(const BitMatrix &, size_t, size_t, size_t)> enumerate =
            [&](const BitMatrix &rows, size_t start, size_t remaining,
                size_t weight_so_far) {
                if (remaining == 0) {
                    (void)weight_so_far;
                    size_t wt = 0;
                    for (size_t i = 0; i < words; i++) {
                        wt += std::popcount(acc[i]);
                    }
                    combos_done++;
                    if (wt > 0 && wt < ub &&
                        !tester.contains(acc.data(), words)) {
                        ub = wt;
                    }
                    return;
                }
                for (size_t i = start; i + remaining <= big_k; i++) {
                    const uint64_t *r = rows.row(i);
                    for (size_t w = 0; w < words; w++) {
                        acc[w] ^= r[w];
                    }
                    enumerate(rows, i + 1, remaining - 1, 0);
                    for (size_t w = 0; w < words; w++) {
                        acc[w] ^= r[w];
                    }
                }
            };

    for (size_t w = 1; w <= big_k; w++) {
        for (const auto &setj : sets) {
            std::fill(acc.begin(), acc.end(), 0);
            enumerate(setj.rows, 0, w, 0);
            if (combos_done > combo_budget) {
                throw std::runtime_error(
                        "exact distance enumeration budget exceeded");
            }
        }
        size_t lb = 0;
        for (const auto &setj : sets) {
            size_t deficiency = big_k - setj.rank;
            if (w + 1 > deficiency) {
                lb += w + 1 - deficiency;
            }
        }
        if (lb >= ub) {
            return ub;
        }
    }
    return ub;
}

// Randomized information-set harvest (qdist RND style): random column
// permutation, row reduction, and low-weight codeword collection from the
// reduced rows and their pairwise sums.
size_t randomized_coset_bound(const BitMatrix &gen, const BitMatrix &sub,
                              size_t iters, uint64_t seed, size_t target) {
    size_t n = gen.cols();
    size_t words = gen.words_per_row();
    size_t big_k = gen.rows();
    RowSpaceTester tester(sub);

    int nworkers = worker_count();
    std::vector<size_t> best(nworkers, n + 1);
    size_t chunk = (iters + nworkers - 1) / nworkers;

    parallel_for(nworkers, [&](size_t wi) {
        Rng rng = Rng::for_stream(seed, wi);
        std::vector<size_t> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        size_t local = n + 1;
        std::vector<uint64_t> tmp(words);
        for (size_t it = 0; it < chunk; it++) {
            if (local <= target && target > 0) {
                break;
            }
            for (size_t i = n - 1; i > 0; i--) {
                std::swap(perm[i], perm[rng.next_below(i + 1)]);
            }
            // Permuted copy, then plain echelon.
            BitMatrix work(big_k, n);
            for (size_t r = 0; r < big_k; r++) {
                for (size_t c = 0; c < n; c++) {
                    if (gen.get(r, perm[c])) {
                        work.set(r, c, true);
                    }
                }
            }
            std::vector<size_t> pivots = row_echelon(work);
            auto consider = [&](const uint64_t *row, const uint64_t *row2) {
                size_t wt = 0;
                for (size_t w = 0; w < words; w++) {
                    tmp[w] = row[w] ^ (row2 ? row2[w] : 0);
                    wt += std::popcount(tmp[w]);
                }
                if (wt == 0 || wt >= local) {
                    return;
                }
                // Un-permute before membership test.
                std::vector<uint64_t> orig(words, 0);
                for (size_t c = 0; c < n; c++) {
                    if ((tmp[c >> 6] >> (c & 63)) & 1) {
                        orig[perm[c] >> 6] ^= uint64_t{1} << (perm[c] & 63);
                    }
                }
                if (!tester.contains(orig.data(), words)) {
                    local = wt;
                }
            };
            for (size_t r = 0; r < pivots.size(); r++) {
                consider(work.row(r), nullptr);
            }
            size_t npairs = pivots.size() <= 48 ? pivots.size() : 48;
            for (size_t r = 0; r + 1 < npairs; r++) {
                for (size_t r2 = r + 1; r2 < npairs; r2++) {
                    consider(work.row(r), work.row(r2));
                }
            }
        }
        best[wi] = local;
    });
    return *std::min_element(best.begin(), best.end());
}

BitMatrix basis_matrix(const std::vector<std::vector<uint8_t>> &rows) {
    return BitMatrix::from_rows(rows);
}

}  // namespace

DistanceResult distance(const ThreeRingCode &code, DistanceMode mode,
                        size_t iters, uint64_t seed) {
    if (code.k == 0) {
        throw std::invalid_argument("distance undefined for k = 0");
    }
    auto kz = nullspace(code.hx);  // Z-type logical candidates
    auto kx = nullspace(code.hz);  // X-type logical candidates
    BitMatrix genz = basis_matrix(kz);
    BitMatrix genx = basis_matrix(kx);
    DistanceResult out;
    if (mode == DistanceMode::Exact) {
        const uint64_t budget = 400000000ULL;
        size_t dz = exact_coset_min(genz, code.hz, budget);
        size_t dx = exact_coset_min(genx, code.hx, budget);
        out.d = std::min(dx, dz);
        out.is_upper_bound = false;
    } else {
        // Two rounds, as in the reference protocol.
        size_t b1z = randomized_coset_bound(genz, code.hz, iters, seed, 0);
        size_t b1x = randomized_coset_bound(genx, code.hx, iters, seed + 101, 0);
        size_t b2z = randomized_coset_bound(genz, code.hz, iters, seed + 202, 0);
        size_t b2x = randomized_coset_bound(genx, code.hx, iters, seed + 303, 0);
        out.d = std::min(std::min(b1x, b1z), std::min(b2x, b2z));
        out.is_upper_bound = true;
    }
    return out;
}

std::optional<Monomial> is_self_orthogonal(const ThreeRingCode &code) {
    MonomialPolynomial at = code.A.inverted_vars();
    MonomialPolynomial bt = code.B.inverted_vars();
    for (int i = 0; i < code.b; i++) {
        for (int j = 0; j < code.c; j++) {
            Monomial t{i, j};
            if (code.A.times(t) == bt && code.B.times(t) == at) {
                return t;
            }
        }
    }
    return std::nullopt;
}

bool biplanar_obstructed(const ThreeRingCode &code) {
    return code.check_weight >= 8;
}

ThreeRingCode CodeRecord::build() const {
    ThreeRingCode code = construct(family, ell, m,
                                   MonomialPolynomial::parse(ell, m, A),
                                   MonomialPolynomial::parse(ell, m, B));
    code.d = d;
    code.d_exact = d_is_exact;
    return code;
}

std::vector<CodeRecord> parse_code_database(const std::string &text) {
    std::vector<CodeRecord> out;
    std::istringstream ss(text);
    std::string line;
    size_t lineno = 0;
    while (std::getline(ss, line)) {
        lineno++;
        size_t hash = line.find('#');
        if (hash != std::string::npos) {
            line = line.substr(0, hash);
        }
        std::istringstream ls(line);
        std::string fam;
        if (!(ls >> fam)) {
            continue;
        }
        CodeRecord rec;
        rec.family = family_from_name(fam);
        int exact = 0;
        if (!(ls >> rec.w >> rec.ell >> rec.m >> rec.A >> rec.B >> rec.n >>
              rec.k >> rec.d >> exact)) {
            throw std::invalid_argument("bad code database line " +
                                        std::to_string(lineno));
        }
        rec.d_is_exact = exact != 0;
        out.push_back(rec);
    }
    return out;
}

std::vector<CodeRecord> load_code_database(const std::string &path) {
    std::ifstream f(path);
    if (!f) {
        throw std::runtime_error("cannot open code database '" + path + "'");
    }
    std::stringstream buf;
    buf << f.rdbuf();
    return parse_code_database(buf.str());
}

namespace {

NamedCode make_named(const std::string &name, CodeFamily fam, size_t w, int ell,
                     int m, const std::string &A, const std::string &B,
                     size_t n, size_t k, size_t d, size_t d_circ, size_t bw,
                     size_t lw, double p_log,
                     std::vector<std::pair<char, int>> sx,
                     std::vector<std::pair<char, int>> sz, double reset,
                     double gates, double shift, double ll, double meas,
                     std::vector<double> pmf) {
    NamedCode c;
    c.name = name;
    c.record = {fam, w, ell, m, A, B, n, k, d, true};
    c.d_circ = d_circ;
    c.block_width = bw;
    c.logical_width = lw;
    c.p_log = p_log;
    c.sched_x = std::move(sx);
    c.sched_z = std::move(sz);
    c.budget_reset = reset;
    c.budget_gates = gates;
    c.budget_shift = shift;
    c.budget_loss_leak = ll;
    c.budget_meas = meas;
    c.loss_pmf = std::move(pmf);
    return c;
}

}  // namespace

const std::vector<NamedCode> &named_codes() {
    static const std::vector<NamedCode> codes = [] {
        std::vector<NamedCode> v;
        v.push_back(make_named(
                "Q102", CodeFamily::GB, 8, 51, 1, "x22,x26,x37,x50",
                "x19,x28,x29,x35", 102, 22, 9, 9, 30, 3, 1e-11,
                {{'B', 1}, {'A', 1}, {'A', 3}, {'B', 2}, {'B', 3}, {'A', 4}, {'A', 2}, {'B', 4}},
                {{'B', 4}, {'A', 2}, {'A', 4}, {'B', 3}, {'B', 2}, {'A', 3}, {'A', 1}, {'B', 1}},
                1, 8, 15.65, 8.05, 1,
                {0.999148, 3.20e-5, 3.20e-10, 8.18e-4, 2.09e-8, 2.64e-13,
                 2.00e-6, 1.03e-10}));
        // Q70's stored term order binds the schedule's A_i/B_i labels; it is
        // the binding consistent with the published cyclic-shift time.
        v.push_back(make_named(
                "Q70", CodeFamily::BB, 7, 7, 5, "x2,x3,y2,x4", "x,y,x3", 70, 6,
                9, 9, 18, 6, 1e-10,
                {{'B', 1}, {'A', 1}, {'A', 4}, {'B', 2}, {'A', 3}, {'A', 2}, {'B', 3}},
                {{'B', 3}, {'A', 3}, {'A', 2}, {'B', 2}, {'A', 1}, {'A', 4}, {'B', 1}},
                1, 7, 11.65, 7.05, 1,
                {0.999580, 1.30e-5, 1.15e-10, 4.07e-4, 6.14e-9, 4.65e-14,
                 8.19e-8, 1.23e-11}));
        v.push_back(make_named(
                "Q54", CodeFamily::GB, 8, 27, 1, "x8,x13,x15,x16",
                "x7,x8,x10,x15", 54, 2, 10, 9, 16, 2, 3e-10,
                {{'B', 2}, {'A', 1}, {'B', 4}, {'A', 3}, {'A', 2}, {'B', 3}, {'A', 4}, {'B', 1}},
                {{'B', 1}, {'A', 4}, {'B', 3}, {'A', 2}, {'A', 3}, {'B', 4}, {'A', 1}, {'B', 2}},
                1, 8, 10.10, 8.05, 1,
                {0.999689, 1.50e-5, 6.10e-11, 2.96e-4, 3.31e-9, 1.83e-14,
                 4.50e-8, 5.00e-12}));
        return v;
    }();
    return codes;
}

const NamedCode &named_code(const std::string &name) {
    for (const auto &c : named_codes()) {
        if (c.name == name) {
            return c;
        }
    }
    throw std::invalid_argument("unknown code name '" + name + "'");
}

}  // namespace wck
