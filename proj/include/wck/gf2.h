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

#ifndef WCK_GF2_H
#define WCK_GF2_H

#include <cstdint>
#include <cstddef>
#include <string>
#include <vector>

namespace wck {

/// Dense GF(2) matrix with bit-packed rows. Rows are padded to whole 64-bit
/// words; bits past `cols` are kept zero.
class BitMatrix {
  public:
    BitMatrix() = default;
    BitMatrix(size_t rows, size_t cols);

    static BitMatrix identity(size_t n);
    static BitMatrix zero(size_t rows, size_t cols);
    static BitMatrix from_rows(const std::vector<std::vector<uint8_t>> &rows);

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    size_t words_per_row() const { return wpr_; }

    bool get(size_t r, size_t c) const;
    void set(size_t r, size_t c, bool v);
    void xor_row_into(size_t src, size_t dst);
    void xor_word_row(size_t r, const uint64_t *src);
    const uint64_t *row(size_t r) const { return bits_.data() + r * wpr_; }
    uint64_t *row(size_t r) { return bits_.data() + r * wpr_; }
    size_t row_weight(size_t r) const;

    void swap_rows(size_t a, size_t b);
    BitMatrix transposed() const;
    BitMatrix operator*(const BitMatrix &rhs) const;
    BitMatrix operator+(const BitMatrix &rhs) const;
    bool operator==(const BitMatrix &rhs) const;
    bool is_zero() const;

    // Horizontal concatenation [this | rhs].
    BitMatrix hstack(const BitMatrix &rhs) const;
    // Vertical concatenation.
    BitMatrix vstack(const BitMatrix &rhs) const;
    BitMatrix submatrix(size_t r0, size_t c0, size_t nr, size_t nc) const;
    std::vector<uint8_t> row_bools(size_t r) const;

    std::string str() const;

    friend size_t rank(BitMatrix m);
    friend std::vector<std::vector<uint8_t>> nullspace(const BitMatrix &m);

  private:
    size_t rows_ = 0;
    size_t cols_ = 0;
    size_t wpr_ = 0;
    std::vector<uint64_t> bits_;
};

/// Rank by Gaussian elimination; takes a copy.
size_t rank(BitMatrix m);

/// Basis of the right nullspace {v : M v = 0}, rows are basis vectors.
std::vector<std::vector<uint8_t>> nullspace(const BitMatrix &m);

/// Row-reduce `m` in place; returns pivot column list. Optionally carries a
/// companion matrix through the same row operations.
std::vector<size_t> row_echelon(BitMatrix &m, BitMatrix *companion = nullptr);

/// Solves M x = b. Returns false if inconsistent.
bool solve(const BitMatrix &m, const std::vector<uint8_t> &b,
           std::vector<uint8_t> &x);

/// True iff v lies in the row space of `m`.
bool in_rowspace(const BitMatrix &m, const std::vector<uint8_t> &v);

/// Monomial x^i y^j over Z_ell x Z_m.
struct Monomial {
    int i = 0;
    int j = 0;
    bool operator==(const Monomial &o) const { return i == o.i && j == o.j; }
    bool operator<(const Monomial &o) const {
        return i != o.i ? i < o.i : j < o.j;
    }
};

/// Sum of distinct monomials in F2[x, y] / (x^ell - 1, y^m - 1).
struct MonomialPolynomial {
    int ell = 1;
    int m = 1;
    std::vector<Monomial> terms;

    MonomialPolynomial() = default;
    MonomialPolynomial(int ell, int m, std::vector<Monomial> terms);

    size_t weight() const { return terms.size(); }
    // Transpose inverts every term: (x^i y^j)^T = x^-i y^-j.
    MonomialPolynomial transposed() const;
    MonomialPolynomial times(const Monomial &t) const;
    // Substitutes x -> x^-1, y -> y^-1.
    MonomialPolynomial inverted_vars() const { return transposed(); }
    bool operator==(const MonomialPolynomial &o) const;

    // (ell*m) x (ell*m) matrix: sum over terms of (S_ell)^i (x) (S_m)^j.
    BitMatrix expand() const;

    // Parses comma-separated monomials, e.g. "1,x2,x3y4". Throws on garbage.
    static MonomialPolynomial parse(int ell, int m, const std::string &s);
    std::string str() const;
};

/// n-qubit Pauli i^phase * X^x Z^z with phase an exponent of i mod 4.
struct PauliOperator {
    size_t n = 0;
    std::vector<uint64_t> x;
    std::vector<uint64_t> z;
    uint8_t phase = 0;

    PauliOperator() = default;
    explicit PauliOperator(size_t n);

    bool x_bit(size_t q) const { return (x[q >> 6] >> (q & 63)) & 1; }
    bool z_bit(size_t q) const { return (z[q >> 6] >> (q & 63)) & 1; }
    void set_x(size_t q, bool v);
    void set_z(size_t q, bool v);

    size_t weight() const;
    bool is_identity() const;
    bool commutes(const PauliOperator &o) const;
    PauliOperator operator*(const PauliOperator &o) const;
    bool equal_up_to_phase(const PauliOperator &o) const;
    bool operator==(const PauliOperator &o) const;

    // Restriction helpers for CSS manipulation.
    std::vector<uint8_t> x_bools() const;
    std::vector<uint8_t> z_bools() const;
    static PauliOperator from_xz(const std::vector<uint8_t> &xb,
                                 const std::vector<uint8_t> &zb);
    std::string str() const;
};

/// Computes a symplectic basis Xbar_1, Zbar_1, ..., Xbar_k, Zbar_k for the
/// CSS code with checks HX (X-type rows) and HZ (Z-type rows). Every element
/// commutes with all checks and Xbar_i anticommutes exactly with Zbar_i.
/// With `css` set, Xbar_i are pure X-type and Zbar_i pure Z-type.
/// Throws std::invalid_argument if HX * HZ^T != 0.
struct SymplecticBasis {
    std::vector<PauliOperator> x_ops;
    std::vector<PauliOperator> z_ops;
    size_t k() const { return x_ops.size(); }
};
SymplecticBasis symplectic_basis(const BitMatrix &hx, const BitMatrix &hz,
                                 bool css = true);

}  // namespace wck

#endif
