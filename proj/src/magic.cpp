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

#include "wck/magic.h"

#include <cmath>
#include <stdexcept>

namespace wck {

InjectionModel injection_model(size_t w_inj, double p, double p_log,
                               double p_loss, double p_leak, double d_poc,
                               double c1, double c2) {
    InjectionModel out;
    out.p_flip = c1 * double(w_inj) * p;
    // Smallest EDM round count pushing the accepted-outcome error under 1e-5.
    size_t r = 1;
    while (c2 * p_log + std::pow(out.p_flip, double(r)) > 1e-5 && r < 16) {
        r++;
    }
    out.r_inj = r;
    out.q_y = (8.0 / 15 + 7.0 * double(r) / 15) * p +
              double(r + 1) * d_poc * p / 150;
    out.p_anc_det = double(r + 1) * d_poc * (p_loss + p_leak);
    out.p_retry = 1 - (std::pow(1 - out.p_flip, double(r)) +
                       std::pow(out.p_flip, double(r))) *
                              (1 - out.p_anc_det);
    return out;
}

FactoryModel ch2_model(const InjectionModel &inj, double tau_vit_54) {
    FactoryModel m;
    m.kind = FactoryKind::CH2;
    m.host_code = "Q54";
    m.width = 54;
    m.w_inj = 16;
    m.r_inj = inj.r_inj;
    m.q_y = inj.q_y;
    m.p_retry = inj.p_retry;
    double a_acc = 1 - inj.p_retry;
    m.a_inj = a_acc * a_acc;
    m.a_ver = (1 - inj.q_y) * (1 - inj.q_y) + inj.q_y * inj.q_y;
    m.p_fail = 1 - m.a_inj * m.a_ver;
    m.p_out = inj.q_y * inj.q_y / m.a_ver;
    // Runtime recursion: D1 = 4, D2 = 7, C = 1 + 2 r_inj + tau_vit.
    double n_inj = double(inj.r_inj);
    double d1 = 1 + n_inj;
    double d2 = 1 + 2 * n_inj;
    double c = 1 + 2 * n_inj + tau_vit_54;
    double s = inj.p_retry * d1 + a_acc * inj.p_retry * d2 + m.a_inj * c;
    m.n_sec_avg = s / (m.a_inj * m.a_ver);
    return m;
}

double mek_accept_poly(double q) {
    return 1 - 10 * q + 58 * q * q - 192 * std::pow(q, 3) +
           400 * std::pow(q, 4) - 544 * std::pow(q, 5) + 480 * std::pow(q, 6) -
           256 * std::pow(q, 7) + 64 * std::pow(q, 8);
}

double mek_bad_one_poly(double q) {
    return 9 * q * q - 56 * std::pow(q, 3) + 160 * std::pow(q, 4) -
           256 * std::pow(q, 5) + 240 * std::pow(q, 6) - 128 * std::pow(q, 7) +
           32 * std::pow(q, 8);
}

double mek_bad_any_poly(double q) {
    return 13 * q * q - 80 * std::pow(q, 3) + 228 * std::pow(q, 4) -
           368 * std::pow(q, 5) + 352 * std::pow(q, 6) - 192 * std::pow(q, 7) +
           48 * std::pow(q, 8);
}

FactoryModel mek_model(const InjectionModel &inj, double tau_vit_20) {
    FactoryModel m;
    m.kind = FactoryKind::MEK;
    m.host_code = "Q70";
    m.width = 18;
    m.w_inj = 18;
    m.r_inj = inj.r_inj;
    m.q_y = inj.q_y;
    m.p_retry = inj.p_retry;
    double a_acc = 1 - inj.p_retry;
    m.a_inj = std::pow(a_acc, 10);
    double q = inj.q_y;
    double a = mek_accept_poly(q);
    double u = mek_bad_one_poly(q);
    double u2 = mek_bad_any_poly(q);
    double odd = 2 * (u2 - u);
    m.a_ver = a - odd;
    m.p_fail = 1 - m.a_inj * m.a_ver;
    m.p_out = (2 * u - u2) / m.a_ver;
    // Runtime recursion with D_j = j * I, C = 10 I + 3 V.
    double big_i = double(inj.r_inj);
    double big_v = tau_vit_20;
    double c = 10 * big_i + 3 * big_v;
    double s = m.a_inj * c;
    for (int j = 1; j <= 10; j++) {
        s += std::pow(a_acc, j - 1) * inj.p_retry * double(j) * big_i;
    }
    m.n_sec_avg = s / (m.a_inj * m.a_ver);
    return m;
}

MekOracleResult mek_oracle(double q) {
    // Fault locations of one MEK attempt (Y faults on the ten injected
    // states): indices 0..3 pre-verification faults on the four physical
    // qubits hosting the [[4,2,2]] (first injection of each controlled-H),
    // 4..7 post-verification faults on the same qubits (second injections),
    // 8..9 logical Y on the two encoded inputs.
    //
    // Effects derived from the [[4,2,2]] structure: a pre fault adds a Z to
    // the verification ancilla (the Y anticommutes with the controlled
    // transversal H) and a physical Y; a post fault adds only the physical
    // Y; an input fault flips the logical H (x) H eigenvalue. Both code
    // checks XXXX and ZZZZ see the parity of the physical Y pattern, so the
    // syndrome contributes one accept bit; the decoded logical Y content of
    // an even Y pattern follows the qubit classification 1 -> (0,0),
    // 2 -> (1,0), 3 -> (0,1), 4 -> (1,1).
    static const std::array<uint8_t, 4> kOut1 = {0, 1, 0, 1};
    static const std::array<uint8_t, 4> kOut2 = {0, 0, 1, 1};

    double a = 0, u = 0, u2 = 0;
    for (uint32_t pattern = 0; pattern < 1024; pattern++) {
        int ver = 0, synd = 0, out1 = 0, out2 = 0;
        for (int qubit = 0; qubit < 4; qubit++) {
            if ((pattern >> qubit) & 1) {  // pre-CZ fault
                ver ^= 1;
                synd ^= 1;
                out1 ^= kOut1[qubit];
                out2 ^= kOut2[qubit];
            }
            if ((pattern >> (4 + qubit)) & 1) {  // post-CZ fault
                synd ^= 1;
                out1 ^= kOut1[qubit];
                out2 ^= kOut2[qubit];
            }
        }
        if ((pattern >> 8) & 1) {  // input Y on logical 1
            ver ^= 1;
            out1 ^= 1;
        }
        if ((pattern >> 9) & 1) {  // input Y on logical 2
            ver ^= 1;
            out2 ^= 1;
        }
        if (ver || synd) {
            continue;  // rejected
        }
        int weight = __builtin_popcount(pattern);
        double prob = std::pow(q, weight) * std::pow(1 - q, 10 - weight);
        a += prob;
        if (out1) {
            u += prob;
        }
        if (out1 || out2) {
            u2 += prob;
        }
    }
    return {a, u, u2};
}

double runtime_fixed_point(double success_prob, double per_attempt_cost,
                           double restart_cost_expectation, double tol,
                           size_t max_iters) {
    // N = restart_expectation + success_prob-weighted cost + (1 - s) N.
    double n = 0;
    for (size_t i = 0; i < max_iters; i++) {
        double next = restart_cost_expectation + per_attempt_cost +
                      (1 - success_prob) * n;
        if (std::abs(next - n) < tol) {
            return next;
        }
        n = next;
    }
    return n;
}

}  // namespace wck
