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

#include "wck/measure.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "wck/util.h"

namespace wck {

double p_flip(const MeasureParams &params) {
    return params.c1 * params.wbar * params.p;
}

namespace {

double binomial(size_t n, size_t k) {
    double v = 1;
    for (size_t i = 0; i < k; i++) {
        v *= double(n - i) / double(i + 1);
    }
    return v;
}

}  // namespace

double p_edm(const MeasureParams &params, size_t r) {
    return params.c2 * params.p_log + std::pow(p_flip(params), double(r));
}

double p_ecm(const MeasureParams &params, size_t r) {
    size_t half = (r + 1) / 2;
    return params.c2 * params.p_log +
           binomial(r, half) * std::pow(p_flip(params), double(half));
}

size_t viterbi_margin(const MeasureParams &params) {
    double pf = p_flip(params);
    if (params.eps >= 0.5 || pf >= 0.5 || pf <= 0) {
        throw std::invalid_argument("viterbi needs eps < 1/2, 0 < p_flip < 1/2");
    }
    double k = std::log((1 - params.eps) / params.eps) /
               std::log((1 - pf) / pf);
    return size_t(std::ceil(k - 1e-12));
}

ViterbiDuration viterbi_duration(const MeasureParams &params) {
    double pf = p_flip(params);
    double pm = params.miss_prob();
    size_t big_k = viterbi_margin(params);
    ViterbiDuration out;
    out.margin = big_k;
    out.closed_form = double(big_k) / ((1 - 2 * pf) * (1 - pm));

    // Absorbing walk over margins -K..K; E_m = 1/(1-pm) + q E_{m+1}
    // + pf E_{m-1}, absorbing at both ends.
    size_t states = 2 * big_k - 1;  // margins -K+1 .. K-1
    std::vector<double> diag(states, 1.0), upper(states, 0.0),
            lowr(states, 0.0), rhs(states, 1.0 / (1 - pm));
    double q = 1 - pf;
    for (size_t i = 0; i < states; i++) {
        if (i + 1 < states) {
            upper[i] = -q;  // E_m - q E_{m+1} - pf E_{m-1} = 1/(1-pm)
        }
        if (i > 0) {
            lowr[i] = -pf;
        }
    }
    // Thomas algorithm.
    for (size_t i = 1; i < states; i++) {
        double f = lowr[i] / diag[i - 1];
        diag[i] -= f * upper[i - 1];
        rhs[i] -= f * rhs[i - 1];
    }
    std::vector<double> e(states);
    e[states - 1] = rhs[states - 1] / diag[states - 1];
    for (size_t i = states - 1; i-- > 0;) {
        e[i] = (rhs[i] - upper[i] * e[i + 1]) / diag[i];
    }
    out.expected_sec = e[big_k - 1];  // margin 0

    // Quantiles from the step-wise margin distribution.
    std::vector<double> dist(states, 0.0);
    dist[big_k - 1] = 1.0;
    double absorbed = 0;
    std::vector<double> targets = {0.5, 0.9, 0.99};
    size_t ti = 0;
    for (size_t step = 1; step <= 100000 && ti < targets.size(); step++) {
        std::vector<double> next(states, 0.0);
        double newly = 0;
        for (size_t i = 0; i < states; i++) {
            double mass = dist[i];
            if (mass == 0) {
                continue;
            }
            next[i] += pm * mass;
            double up = (1 - pm) * q * mass;
            double down = (1 - pm) * pf * mass;
            if (i + 1 < states) {
                next[i + 1] += up;
            } else {
                newly += up;
            }
            if (i > 0) {
                next[i - 1] += down;
            } else {
                newly += down;
            }
        }
        absorbed += newly;
        dist.swap(next);
        while (ti < targets.size() && absorbed >= targets[ti]) {
            out.quantiles.push_back(double(step));
            ti++;
        }
    }
    while (out.quantiles.size() < targets.size()) {
        out.quantiles.push_back(out.expected_sec * 4);
    }
    return out;
}

double viterbi_monte_carlo(const MeasureParams &params, size_t trials,
                           uint64_t seed) {
    double pf = p_flip(params);
    double pm = params.miss_prob();
    size_t big_k = viterbi_margin(params);
    uint64_t total = 0;
    int workers = worker_count();
    std::vector<uint64_t> per_worker(workers, 0);
    size_t chunk = (trials + workers - 1) / workers;
    parallel_for(size_t(workers), [&](size_t w) {
        Rng rng = Rng::for_stream(seed, w);
        uint64_t local = 0;
        size_t lo = w * chunk, hi = std::min(trials, lo + chunk);
        for (size_t t = lo; t < hi; t++) {
            long margin = 0;
            size_t secs = 0;
            while (size_t(std::labs(margin)) < big_k) {
                secs++;
                if (rng.bernoulli(pm)) {
                    continue;  // missing cat state: SEC counted, no vote
                }
                margin += rng.bernoulli(pf) ? -1 : 1;
            }
            local += secs;
        }
        per_worker[w] = local;
    });
    for (uint64_t v : per_worker) {
        total += v;
    }
    return double(total) / double(trials);
}

size_t edm_duration(const MeasureParams &params, double eps) {
    double pf = p_flip(params);
    if (pf <= 0 || pf >= 1) {
        throw std::invalid_argument("edm_duration needs 0 < p_flip < 1");
    }
    size_t r = 1;
    double acc = pf;
    while (acc > eps && r < 64) {
        acc *= pf;
        r++;
    }
    return r + 1;  // one extra SEC for the decoding reaction
}

}  // namespace wck
