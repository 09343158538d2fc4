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

#include "wck/gf2.h"

#include <algorithm>
#include <bit>
#include <set>
#include <sstream>
#include <stdexcept>

namespace wck {

BitMatrix::BitMatrix(size_t rows, size_t cols)
    : rows_(rows), cols_(cols), wpr_((cols + 63) / 64), bits_(rows * wpr_, 0) {}

BitMatrix BitMatrix::identity(size_t n) {
    BitMatrix m(n, n);
    for (size_t i = 0; i < n; i++) {
        m.set(i, i, true);
    }
    return m;
}

BitMatrix BitMatrix::zero(size_t rows, size_t cols) {
    return BitMatrix(rows, cols);
}

BitMatrix BitMatrix::from_rows(const std::vector<std::vector<uint8_t>> &rows) {
    if (rows.empty()) {
        return BitMatrix();
    }
    BitMatrix m(rows.size(), rows[0].size());
    for (size_t r = 0; r < rows.size(); r++) {
        if (rows[r].size() != m.cols_) {
            throw std::invalid_argument("ragged rows in BitMatrix::from_rows");
        }
        for (size_t c = 0; c < rows[r].size(); c++) {
            if (rows[r][c]) {
                m.set(r, c, true);
            }
        }
    }
    return m;
}

bool BitMatrix::get(size_t r, size_t c) const {
    return (bits_[r * wpr_ + (c >> 6)] >> (c & 63)) & 1;
}

void BitMatrix::set(size_t r, size_t c, bool v) {
    uint64_t &w = bits_[r * wpr_ + (c >> 6)];
    uint64_t mask = uint64_t{1} << (c & 63);
    w = v ? (w | mask) : (w & ~mask);
}

void BitMatrix::xor_row_into(size_t src, size_t dst) {
    const uint64_t *s = row(src);
    uint64_t *d = row(dst);
    for (size_t i = 0; i < wpr_; i++) {
        d[i] ^= s[i];
    }
}

void BitMatrix::xor_word_row(size_t r, const uint64_t *src) {
    uint64_t *d = row(r);
    for (size_t i = 0; i < wpr_; i++) {
        d[i] ^= src[i];
    }
}

size_t BitMatrix::row_weight(size_t r) const {
    const uint64_t *p = row(r);
    size_t w = 0;
    for (size_t i = 0; i < wpr_; i++) {
        w += std::popcount(p[i]);
    }
    return w;
}

void BitMatrix::swap_rows(size_t a, size_t b) {
    if (a == b) {
        return;
    }
    uint64_t *pa = row(a);
    uint64_t *pb = row(b);
    for (size_t i = 0; i < wpr_; i++) {
        std::swap(pa[i], pb[i]);
    }
}

BitMatrix BitMatrix::transposed() const {
    BitMatrix t(cols_, rows_);
    for (size_t r = 0; r < rows_; r++) {
        const uint64_t *p = row(r);
        for (size_t w = 0; w < wpr_; w++) {
            uint64_t bitsw = p[w];
            while (bitsw) {
                size_t c = (w << 6) + std::countr_zero(bitsw);
                bitsw &= bitsw - 1;
                t.set(c, r, true);
            }
        }
    }
    return t;
}

BitMatrix BitMatrix::operator*(const BitMatrix &rhs) const {
    if (cols_ != rhs.rows_) {
        throw std::invalid_argument("BitMatrix product shape mismatch");
    }
    BitMatrix out(rows_, rhs.cols_);
    for (size_t r = 0; r < rows_; r++) {
        const uint64_t *p = row(r);
        uint64_t *o = out.row(r);
        for (size_t w = 0; w < wpr_; w++) {
            uint64_t bitsw = p[w];
            while (bitsw) {
                size_t c = (w << 6) + std::countr_zero(bitsw);
                bitsw &= bitsw - 1;
                const uint64_t *s = rhs.row(c);
                for (size_t i = 0; i < rhs.wpr_; i++) {
                    o[i] ^= s[i];
                }
            }
        }
    }
    return out;
}

BitMatrix BitMatrix::operator+(const BitMatrix &rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) {
        throw std::invalid_argument("BitMatrix sum shape mismatch");
    }
    BitMatrix out = *this;
    for (size_t i = 0; i < bits_.size(); i++) {
        out.bits_[i] ^= rhs.bits_[i];
    }
    return out;
}

bool BitMatrix::operator==(const BitMatrix &rhs) const {
    return rows_ == rhs.rows_ && cols_ == rhs.cols_ && bits_ == rhs.bits_;
}

bool BitMatrix::is_zero() const {
    for (uint64_t w : bits_) {
        if (w) {
            return false;
        }
    }
    return true;
}

BitMatrix BitMatrix::hstack(const BitMatrix &rhs) const {
    if (rows_ != rhs.rows_) {
        throw std::invalid_argument("hstack row mismatch");
    }
    BitMatrix out(rows_, cols_ + rhs.cols_);
    for (size_t r = 0; r < rows_; r++) {
        for (size_t c = 0; c < cols_; c++) {
            if (get(r, c)) {
                out.set(r, c, true);
            }
        }
        for (size_t c = 0; c < rhs.cols_; c++) {
            if (rhs.get(r, c)) {
                out.set(r, cols_ + c, true);
            }
        }
    }
    return out;
}

BitMatrix BitMatrix::vstack(const BitMatrix &rhs) const {
    if (cols_ != rhs.cols_) {
        throw std::invalid_argument("vstack col mismatch");
    }
    BitMatrix out(rows_ + rhs.rows_, cols_);
    for (size_t r = 0; r < rows_; r++) {
        std::copy(row(r), row(r) + wpr_, out.row(r));
    }
    for (size_t r = 0; r < rhs.rows_; r++) {
        std::copy(rhs.row(r), rhs.row(r) + wpr_, out.row(rows_ + r));
    }
    return out;
}

BitMatrix BitMatrix::submatrix(size_t r0, size_t c0, size_t nr,
                               size_t nc) const {
    BitMatrix out(nr, nc);
    for (size_t r = 0; r < nr; r++) {
        for (size_t c = 0; c < nc; c++) {
            if (get(r0 + r, c0 + c)) {
                out.set(r, c, true);
            }
        }
    }
    return out;
}

std::vector<uint8_t> BitMatrix::row_bools(size_t r) const {
    std::vector<uint8_t> v(cols_);
    for (size_t c = 0; c < cols_; c++) {
        v[c] = get(r, c);
    }
    return v;
}

std::string BitMatrix::str() const {
    std::ostringstream ss;
    for (size_t r = 0; r < rows_; r++) {
        for (size_t c = 0; c < cols_; c++) {
            ss << (get(r, c) ? '1' : '.');
        }
        ss << '\n';
    }
    return ss.str();
}

std::vector<size_t> row_echelon(BitMatrix &m, BitMatrix *companion) {
    std::vector<size_t> pivots;
    size_t r = 0;
    for (size_t c = 0; c < m.cols() && r < m.rows(); c++) {
        size_t pivot = r;
        while (pivot < m.rows() && !m.get(pivot, c)) {
            pivot++;
        }
        if (pivot == m.rows()) {
            continue;
        }
        m.swap_rows(pivot, r);
        if (companion) {
            companion->swap_rows(pivot, r);
        }
        for (size_t rr = 0; rr < m.rows(); rr++) {
            if (rr != r && m.get(rr, c)) {
                m.xor_row_into(r, rr);
                if (companion) {
                    companion->xor_row_into(r, rr);
                }
            }
        }
        pivots.push_back(c);
        r++;
    }
    return pivots;
}

size_t rank(BitMatrix m) {
    return row_echelon(m).size();
}

std::vector<std::vector<uint8_t>> nullspace(const BitMatrix &m) {
    BitMatrix e = m;
    std::vector<size_t> pivots = row_echelon(e);
    std::vector<uint8_t> is_pivot(m.cols(), 0);
    for (size_t p : pivots) {
        is_pivot[p] = 1;
    }
    std::vector<std::vector<uint8_t>> basis;
    for (size_t c = 0; c < m.cols(); c++) {
        if (is_pivot[c]) {
            continue;
        }
        std::vector<uint8_t> v(m.cols(), 0);
        v[c] = 1;
        for (size_t i = 0; i < pivots.size(); i++) {
            if (e.get(i, c)) {
                v[pivots[i]] = 1;
            }
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

bool solve(const BitMatrix &m, const std::vector<uint8_t> &b,
           std::vector<uint8_t> &x) {
    if (b.size() != m.rows()) {
        throw std::invalid_argument("solve: rhs length mismatch");
    }
    BitMatrix aug(m.rows(), m.cols() + 1);
    for (size_t r = 0; r < m.rows(); r++) {
        std::copy(m.row(r), m.row(r) + m.words_per_row(), aug.row(r));
        if (b[r]) {
            aug.set(r, m.cols(), true);
        }
    }
    std::vector<size_t> pivots = row_echelon(aug);
    x.assign(m.cols(), 0);
    for (size_t i = 0; i < pivots.size(); i++) {
        if (pivots[i] == m.cols()) {
            return false;
        }
        if (aug.get(i, m.cols())) {
            x[pivots[i]] = 1;
        }
    }
    return true;
}

bool in_rowspace(const BitMatrix &m, const std::vector<uint8_t> &v) {
    BitMatrix stacked = m.vstack(BitMatrix::from_rows({v}));
    return rank(stacked) == rank(m);
}

MonomialPolynomial::MonomialPolynomial(int ell_, int m_,
                                       std::vector<Monomial> terms_)
    : ell(ell_), m(m_), terms(std::move(terms_)) {
    if (ell < 1 || m < 1) {
        throw std::invalid_argument("monomial polynomial requires ell, m >= 1");
    }
    for (auto &t : terms) {
        t.i = ((t.i % ell) + ell) % ell;
        t.j = ((t.j % m) + m) % m;
    }
    // Term order is preserved: syndrome-extraction schedules index into it.
    std::vector<Monomial> sorted = terms;
    std::sort(sorted.begin(), sorted.end());
    for (size_t i = 1; i < sorted.size(); i++) {
        if (sorted[i] == sorted[i - 1]) {
            throw std::invalid_argument("duplicate monomial term");
        }
    }
}

MonomialPolynomial MonomialPolynomial::transposed() const {
    std::vector<Monomial> out;
    out.reserve(terms.size());
    for (const auto &t : terms) {
        out.push_back({(ell - t.i) % ell, (m - t.j) % m});
    }
    return MonomialPolynomial(ell, m, out);
}

MonomialPolynomial MonomialPolynomial::times(const Monomial &t) const {
    std::vector<Monomial> out;
    out.reserve(terms.size());
    for (const auto &u : terms) {
        out.push_back({(u.i + t.i) % ell, (u.j + t.j) % m});
    }
    return MonomialPolynomial(ell, m, out);
}

bool MonomialPolynomial::operator==(const MonomialPolynomial &o) const {
    if (ell != o.ell || m != o.m || terms.size() != o.terms.size()) {
        return false;
    }
    std::vector<Monomial> a = terms, b = o.terms;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    return a == b;
}

BitMatrix MonomialPolynomial::expand() const {
    size_t n = size_t(ell) * size_t(m);
    BitMatrix out(n, n);
    for (const auto &t : terms) {
        for (int v = 0; v < ell; v++) {
            for (int z = 0; z < m; z++) {
                size_t r = size_t(v) * m + z;
                size_t c = size_t((v + t.i) % ell) * m + (z + t.j) % m;
                out.set(r, c, !out.get(r, c));
            }
        }
    }
    return out;
}

MonomialPolynomial MonomialPolynomial::parse(int ell, int m,
                                             const std::string &s) {
    std::vector<Monomial> terms;
    std::string cleaned;
    for (char ch : s) {
        if (!isspace(static_cast<unsigned char>(ch))) {
            cleaned.push_back(ch == '+' ? ',' : ch);
        }
    }
    std::stringstream ss(cleaned);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) {
            continue;
        }
        if (tok == "1") {
            terms.push_back({0, 0});
            continue;
        }
        Monomial t{0, 0};
        size_t pos = 0;
        bool any = false;
        while (pos < tok.size()) {
            char var = tok[pos];
            if (var != 'x' && var != 'y') {
                throw std::invalid_argument("bad monomial term '" + tok + "'");
            }
            pos++;
            size_t start = pos;
            while (pos < tok.size() && isdigit(static_cast<unsigned char>(tok[pos]))) {
                pos++;
            }
            int e = (pos == start) ? 1 : std::stoi(tok.substr(start, pos - start));
            if (var == 'x') {
                t.i += e;
            } else {
                t.j += e;
            }
            any = true;
        }
        if (!any) {
            throw std::invalid_argument("bad monomial term '" + tok + "'");
        }
        terms.push_back(t);
    }
    if (terms.empty()) {
        throw std::invalid_argument("empty polynomial '" + s + "'");
    }
    return MonomialPolynomial(ell, m, terms);
}

std::string MonomialPolynomial::str() const {
    std::ostringstream ss;
    for (size_t idx = 0; idx < terms.size(); idx++) {
        if (idx) {
            ss << ",";
        }
        const auto &t = terms[idx];
        if (t.i == 0 && t.j == 0) {
            ss << "1";
            continue;
        }
        if (t.i > 0) {
            ss << "x";
            if (t.i > 1) {
                ss << t.i;
            }
        }
        if (t.j > 0) {
            ss << "y";
            if (t.j > 1) {
                ss << t.j;
            }
        }
    }
    return ss.str();
}

PauliOperator::PauliOperator(size_t n_)
    : n(n_), x((n_ + 63) / 64, 0), z((n_ + 63) / 64, 0) {}

void PauliOperator::set_x(size_t q, bool v) {
    uint64_t mask = uint64_t{1} << (q & 63);
    x[q >> 6] = v ? (x[q >> 6] | mask) : (x[q >> 6] & ~mask);
}

void PauliOperator::set_z(size_t q, bool v) {
    uint64_t mask = uint64_t{1} << (q & 63);
    z[q >> 6] = v ? (z[q >> 6] | mask) : (z[q >> 6] & ~mask);
}

size_t PauliOperator::weight() const {
    size_t w = 0;
    for (size_t i = 0; i < x.size(); i++) {
        w += std::popcount(x[i] | z[i]);
    }
    return w;
}

bool PauliOperator::is_identity() const {
    for (size_t i = 0; i < x.size(); i++) {
        if (x[i] | z[i]) {
            return false;
        }
    }
    return true;
}

bool PauliOperator::commutes(const PauliOperator &o) const {
    uint64_t acc = 0;
    for (size_t i = 0; i < x.size(); i++) {
        acc ^= (x[i] & o.z[i]) ^ (z[i] & o.x[i]);
    }
    return std::popcount(acc) % 2 == 0;
}

PauliOperator PauliOperator::operator*(const PauliOperator &o) const {
    if (n != o.n) {
        throw std::invalid_argument("Pauli product length mismatch");
    }
    PauliOperator out(n);
    // (i^p X^a Z^b)(i^q X^c Z^d) = i^{p+q} (-1)^{b.c} X^{a+c} Z^{b+d}
    size_t crossings = 0;
    for (size_t i = 0; i < x.size(); i++) {
        crossings += std::popcount(z[i] & o.x[i]);
        out.x[i] = x[i] ^ o.x[i];
        out.z[i] = z[i] ^ o.z[i];
    }
    out.phase = uint8_t((phase + o.phase + 2 * (crossings & 1)) & 3);
    return out;
}

bool PauliOperator::equal_up_to_phase(const PauliOperator &o) const {
    return n == o.n && x == o.x && z == o.z;
}

bool PauliOperator::operator==(const PauliOperator &o) const {
    return equal_up_to_phase(o) && phase == o.phase;
}

std::vector<uint8_t> PauliOperator::x_bools() const {
    std::vector<uint8_t> v(n);
    for (size_t q = 0; q < n; q++) {
        v[q] = x_bit(q);
    }
    return v;
}

std::vector<uint8_t> PauliOperator::z_bools() const {
    std::vector<uint8_t> v(n);
    for (size_t q = 0; q < n; q++) {
        v[q] = z_bit(q);
    }
    return v;
}

PauliOperator PauliOperator::from_xz(const std::vector<uint8_t> &xb,
                                     const std::vector<uint8_t> &zb) {
    if (xb.size() != zb.size()) {
        throw std::invalid_argument("from_xz length mismatch");
    }
    PauliOperator p(xb.size());
    for (size_t q = 0; q < xb.size(); q++) {
        if (xb[q]) {
            p.set_x(q, true);
        }
        if (zb[q]) {
            p.set_z(q, true);
        }
    }
    return p;
}

std::string PauliOperator::str() const {
    static const char *phases[] = {"+", "i", "-", "-i"};
    std::string s = phases[phase & 3];
    for (size_t q = 0; q < n; q++) {
        bool xb = x_bit(q);
        bool zb = z_bit(q);
        s += xb ? (zb ? 'Y' : 'X') : (zb ? 'Z' : '_');
    }
    return s;
}

namespace {

// Quotient-space basis: rows of `space` that remain independent after
// reducing against the row space of `sub`.
std::vector<std::vector<uint8_t>> quotient_basis(
        const std::vector<std::vector<uint8_t>> &space, const BitMatrix &sub) {
    BitMatrix acc = sub;
    size_t r = rank(acc);
    std::vector<std::vector<uint8_t>> out;
    for (const auto &v : space) {
        BitMatrix cand = acc.vstack(BitMatrix::from_rows({v}));
        size_t r2 = rank(cand);
        if (r2 > r) {
            acc = cand;
            r = r2;
            out.push_back(v);
        }
    }
    return out;
}

}  // namespace

SymplecticBasis symplectic_basis(const BitMatrix &hx, const BitMatrix &hz,
                                 bool css) {
    if (hx.cols() != hz.cols()) {
        throw std::invalid_argument("HX/HZ length mismatch");
    }
    if (!(hx * hz.transposed()).is_zero()) {
        throw std::invalid_argument("HX * HZ^T != 0: checks do not commute");
    }
    size_t n = hx.cols();
    // X-type logical candidates: ker(HZ) modulo rowspace(HX).
    auto kx = nullspace(hz);
    auto kz = nullspace(hx);
    auto lx = quotient_basis(kx, hx);
    auto lz = quotient_basis(kz, hz);
    if (lx.size() != lz.size()) {
        throw std::invalid_argument("inconsistent logical dimensions");
    }
    size_t k = lx.size();
    SymplecticBasis basis;
    if (k == 0) {
        return basis;
    }
    BitMatrix mlx = BitMatrix::from_rows(lx);
    BitMatrix mlz = BitMatrix::from_rows(lz);
    // Pairing M = LX * LZ^T must be invertible; replace LZ <- (M^T)^-1 LZ so
    // that LX * LZ'^T = I.
    BitMatrix pairing = mlx * mlz.transposed();
    BitMatrix mt = pairing.transposed();
    BitMatrix inv = BitMatrix::identity(k);
    std::vector<size_t> piv = row_echelon(mt, &inv);
    if (piv.size() != k) {
        throw std::invalid_argument("degenerate symplectic pairing");
    }
    BitMatrix lz2 = inv * mlz;
    for (size_t i = 0; i < k; i++) {
        PauliOperator px(n), pz(n);
        for (size_t q = 0; q < n; q++) {
            if (mlx.get(i, q)) {
                px.set_x(q, true);
            }
            if (lz2.get(i, q)) {
                pz.set_z(q, true);
            }
        }
        basis.x_ops.push_back(px);
        basis.z_ops.push_back(pz);
    }
    if (!css) {
        // The CSS construction already satisfies the general contract; the
        // flag only promises X/Z purity when set.
    }
    return basis;
}

}  // namespace wck
