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

// Test-only reference implementations, deliberately naive and independent of
// the library code paths they are used to check.

#ifndef WCK_TESTS_ORACLES_H
#define WCK_TESTS_ORACLES_H

#include <cstdint>
#include <vector>

namespace wck_oracle {

using Mat = std::vector<std::vector<uint8_t>>;

// Dense byte-level row reduction.
inline size_t dense_rank(Mat m) {
    if (m.empty()) {
        return 0;
    }
    size_t rows = m.size(), cols = m[0].size(), r = 0;
    for (size_t c = 0; c < cols && r < rows; c++) {
        size_t p = r;
        while (p < rows && !m[p][c]) {
            p++;
        }
        if (p == rows) {
            continue;
        }
        std::swap(m[p], m[r]);
        for (size_t rr = 0; rr < rows; rr++) {
            if (rr != r && m[rr][c]) {
                for (size_t cc = 0; cc < cols; cc++) {
                    m[rr][cc] ^= m[r][cc];
                }
            }
        }
        r++;
    }
    return r;
}

// Kronecker product of byte matrices.
inline Mat kron(const Mat &a, const Mat &b) {
    size_t ar = a.size(), ac = a[0].size();
    size_t br = b.size(), bc = b[0].size();
    Mat out(ar * br, std::vector<uint8_t>(ac * bc, 0));
    for (size_t i = 0; i < ar; i++) {
        for (size_t j = 0; j < ac; j++) {
            if (!a[i][j]) {
                continue;
            }
            for (size_t k = 0; k < br; k++) {
                for (size_t l = 0; l < bc; l++) {
                    out[i * br + k][j * bc + l] ^= b[k][l];
                }
            }
        }
    }
    return out;
}

// k-fold product of the cyclic-shift matrix S_n (first row (0,1,0,...)).
inline Mat shift_power(size_t n, int k) {
    Mat s(n, std::vector<uint8_t>(n, 0));
    for (size_t r = 0; r < n; r++) {
        s[r][(r + k) % n] = 1;
    }
    return s;
}

inline Mat mat_add(Mat a, const Mat &b) {
    for (size_t i = 0; i < a.size(); i++) {
        for (size_t j = 0; j < a[i].size(); j++) {
            a[i][j] ^= b[i][j];
        }
    }
    return a;
}

inline Mat mat_mul(const Mat &a, const Mat &b) {
    size_t ar = a.size(), ac = a[0].size(), bc = b[0].size();
    Mat out(ar, std::vector<uint8_t>(bc, 0));
    for (size_t i = 0; i < ar; i++) {
        for (size_t k = 0; k < ac; k++) {
            if (!a[i][k]) {
                continue;
            }
            for (size_t j = 0; j < bc; j++) {
                out[i][j] ^= b[k][j];
            }
        }
    }
    return out;
}

// Symplectic inner product of two Paulis given as (x, z) bool vectors.
inline bool anticommute(const std::vector<uint8_t> &x1,
                        const std::vector<uint8_t> &z1,
                        const std::vector<uint8_t> &x2,
                        const std::vector<uint8_t> &z2) {
    int acc = 0;
    for (size_t i = 0; i < x1.size(); i++) {
        acc ^= (x1[i] & z2[i]) ^ (z1[i] & x2[i]);
    }
    return acc != 0;
}

}  // namespace wck_oracle

#endif
