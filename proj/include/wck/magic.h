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

#ifndef WCK_MAGIC_H
#define WCK_MAGIC_H

#include <array>
#include <cstddef>
#include <string>

namespace wck {

enum class FactoryKind { CH2, MEK };

/// H-state injection gadget model: EDM round count, injected Y-fault rate,
/// and per-injection retry probability.
struct InjectionModel {
    size_t r_inj = 0;
    double q_y = 0;
    double p_retry = 0;
    double p_anc_det = 0;
    double p_flip = 0;
};

/// Round rule: smallest r with C2 p_log + (C1 w p)^r <= 1e-5; fault rate
/// (8/15 + 7r/15) p + (r+1) d_POC p / 150; retry
/// 1 - ((1-pf)^r + pf^r)(1 - p_anc_det).
InjectionModel injection_model(size_t w_inj, double p, double p_log,
                               double p_loss, double p_leak, double d_poc,
                               double c1 = 2.1, double c2 = 3.4);

struct FactoryModel {
    FactoryKind kind = FactoryKind::CH2;
    std::string host_code;
    size_t width = 0;       // cat size required
    size_t w_inj = 0;       // injection measurement weight
    size_t r_inj = 0;
    double q_y = 0;
    double p_retry = 0;
    double a_inj = 0;       // all injections accepted
    double a_ver = 0;       // verification/postselection acceptance
    double p_fail = 0;      // per-attempt failure rate
    double p_out = 0;       // output-state error estimate
    double n_sec_avg = 0;   // average SECs per successful pair
    size_t states_per_success = 2;
};

/// CH2 factory analytic model. `tau_vit_54` is the average SEC cost of the
/// weight-54 Viterbi verification (injected from the measurement module).
FactoryModel ch2_model(const InjectionModel &inj, double tau_vit_54);

/// MEK factory analytic model; `tau_vit_20` bounds the terminal readouts.
FactoryModel mek_model(const InjectionModel &inj, double tau_vit_20);

/// MEK acceptance / marginal-bad / either-bad polynomials in the input
/// Y-fault rate q.
double mek_accept_poly(double q);
double mek_bad_one_poly(double q);
double mek_bad_any_poly(double q);

/// Exhaustive enumeration of all 2^10 input Y-fault patterns through the
/// [[4,2,2]] MEK verification: each pattern deterministically toggles the
/// transversal-H verification bit, the code syndrome, and the two output
/// Y flips. Returns (a, u, u2) at fault rate q.
struct MekOracleResult {
    double a = 0;
    double u = 0;
    double u2 = 0;
};
MekOracleResult mek_oracle(double q);

/// Closed-form solution of the retry recursions, checked against
/// fixed-point iteration by the callers.
double runtime_fixed_point(double success_prob, double per_attempt_cost,
                           double restart_cost_expectation, double tol,
                           size_t max_iters);

}  // namespace wck

#endif
