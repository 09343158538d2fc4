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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "wck/magic.h"

using namespace wck;

namespace {

InjectionModel ch2_inj() {
    return injection_model(16, 1e-4, 3e-10, 1e-7, 1e-5, 28.15);
}

InjectionModel mek_inj() {
    return injection_model(18, 1e-4, 1e-10, 1e-7, 1e-5, 27.70);
}

}  // namespace

TEST_CASE("injection model reproduces the published CH2 values") {
    InjectionModel inj = ch2_inj();
    CHECK(inj.r_inj == 3);
    CHECK(inj.q_y == doctest::Approx(2.68e-4).epsilon(0.01));
    CHECK(inj.p_retry == doctest::Approx(1.12e-2).epsilon(0.01));
}

TEST_CASE("injection model reproduces the published MEK values") {
    InjectionModel inj = mek_inj();
    CHECK(inj.r_inj == 3);
    CHECK(inj.q_y == doctest::Approx(2.67e-4).epsilon(0.01));
    CHECK(inj.p_retry == doctest::Approx(1.24e-2).epsilon(0.01));
}

TEST_CASE("zero physical noise leaves only ancilla detection") {
    InjectionModel inj = injection_model(16, 0, 0, 1e-7, 1e-5, 28.15);
    CHECK(inj.q_y == 0.0);
    CHECK(inj.p_retry == doctest::Approx(inj.p_anc_det));
}

TEST_CASE("CH2 factory model matches the published table") {
    FactoryModel m = ch2_model(ch2_inj(), 6.31);
    CHECK(m.width == 54);
    CHECK(m.a_ver == doctest::Approx(0.99946).epsilon(1e-4));
    CHECK(m.p_fail == doctest::Approx(0.0228).epsilon(0.01));
    CHECK(m.p_out == doctest::Approx(7.2e-8).epsilon(0.01));
    CHECK(m.n_sec_avg == doctest::Approx(13.44).epsilon(0.01));
}

TEST_CASE("MEK factory model matches the published table") {
    FactoryModel m = mek_model(mek_inj(), 5.10);
    CHECK(m.width == 18);
    CHECK(m.a_ver == doctest::Approx(0.99733).epsilon(1e-4));
    CHECK(m.p_out == doctest::Approx(3.6e-7).epsilon(0.01));
    CHECK(m.p_fail == doctest::Approx(0.1197).epsilon(0.01));
    CHECK(m.n_sec_avg == doctest::Approx(47.6).epsilon(0.01));
    // Odd-parity accepted branch.
    double q = m.q_y;
    double odd = 2 * (mek_bad_any_poly(q) - mek_bad_one_poly(q));
    CHECK(odd == doctest::Approx(5.70e-7).epsilon(0.01));
}

TEST_CASE("MEK oracle: trivial and single-fault patterns") {
    MekOracleResult at0 = mek_oracle(0);
    CHECK(at0.a == 1.0);
    CHECK(at0.u == 0.0);
    CHECK(at0.u2 == 0.0);
    // Every single input Y fault is rejected: the q^1 coefficient of the
    // acceptance function must be -10 (all ten weight-1 patterns drop out).
    double eps = 1e-6;
    double slope = (mek_oracle(eps).a - 1.0) / eps;
    CHECK(slope == doctest::Approx(-10).epsilon(1e-3));
}

TEST_CASE("MEK oracle equals the published polynomials everywhere") {
    // Degree-10 agreement at 12 points implies coefficient-level equality.
    for (int i = 1; i <= 12; i++) {
        double q = 0.01 * i;
        MekOracleResult res = mek_oracle(q);
        CAPTURE(q);
        CHECK(std::abs(res.a - mek_accept_poly(q)) <= 1e-12);
        CHECK(std::abs(res.u - mek_bad_one_poly(q)) <= 1e-12);
        CHECK(std::abs(res.u2 - mek_bad_any_poly(q)) <= 1e-12);
    }
}

TEST_CASE("runtime recursions agree with fixed-point iteration") {
    FactoryModel ch2 = ch2_model(ch2_inj(), 6.31);
    double s = ch2.a_inj * ch2.a_ver;
    // The closed form solves N = S + (1 - s) N with S = s * N.
    double big_s = ch2.n_sec_avg * s;
    double fp = runtime_fixed_point(s, big_s, 0, 1e-15, 100000);
    CHECK(std::abs(fp - ch2.n_sec_avg) < 1e-12 * ch2.n_sec_avg);

    FactoryModel mek = mek_model(mek_inj(), 5.10);
    double s2 = mek.a_inj * mek.a_ver;
    double big_s2 = mek.n_sec_avg * s2;
    double fp2 = runtime_fixed_point(s2, big_s2, 0, 1e-15, 100000);
    CHECK(std::abs(fp2 - mek.n_sec_avg) < 1e-12 * mek.n_sec_avg);
}

TEST_CASE("output error is monotone in the injected fault rate") {
    double prev_ch2 = -1, prev_mek = -1;
    for (double q = 0.002; q <= 0.1; q += 0.002) {
        double ch2 = q * q / ((1 - q) * (1 - q) + q * q);
        double a_ver = mek_accept_poly(q) -
                       2 * (mek_bad_any_poly(q) - mek_bad_one_poly(q));
        double mek = (2 * mek_bad_one_poly(q) - mek_bad_any_poly(q)) / a_ver;
        CHECK(ch2 > prev_ch2);
        CHECK(mek > prev_mek);
        prev_ch2 = ch2;
        prev_mek = mek;
    }
}
