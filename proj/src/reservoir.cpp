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

#include "wck/reservoir.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "wck/catbell.h"
#include "wck/codes.h"

namespace wck {

ReservoirConfig published_reservoir_config(size_t m, size_t t, size_t c,
                                           size_t b) {
    ReservoirConfig cfg;
    cfg.memories = m;
    cfg.magic = t;
    cfg.cat = c;
    cfg.bell = b;
    // Memory blocks host Q102, magic factories Q54; the ">6" tail is folded
    // into a 7-qubit bucket.
    cfg.memory_pmf.pmf = named_code("Q102").loss_pmf;
    cfg.magic_pmf.pmf = named_code("Q54").loss_pmf;
    // The published tables round each entry; rebalance the zero-loss entry
    // so every pmf sums to exactly 1.
    for (LossDistribution *d : {&cfg.memory_pmf, &cfg.magic_pmf}) {
        double rest = 0;
        for (size_t k = 1; k < d->pmf.size(); k++) {
            rest += d->pmf[k];
        }
        d->pmf[0] = 1 - rest;
    }
    CatSpec cat_spec;
    cat_spec.w = 30;
    cat_spec.m = 2;
    cat_spec.p_loss = 1e-7;
    cfg.cat_pmf = cat_model(cat_spec).loss_pmf();
    cfg.bell_pmf.pmf = {1 - 3.6e-6, 0, 3.6e-6};
    cfg.sec_seconds = 6e-3;
    return cfg;
}

LossDistribution aggregate_losses(const ReservoirConfig &config) {
    LossDistribution total = LossDistribution::point_mass_zero();
    struct Item {
        size_t count;
        const LossDistribution *pmf;
    };
    const Item items[] = {{config.memories, &config.memory_pmf},
                          {config.magic, &config.magic_pmf},
                          {config.cat, &config.cat_pmf},
                          {config.bell, &config.bell_pmf}};
    for (const auto &item : items) {
        if (item.count == 0) {
            continue;
        }
        if (item.pmf->pmf.empty()) {
            throw std::invalid_argument("missing loss pmf for a component");
        }
        // count-fold convolution by repeated squaring; the support is folded
        // at r_max + 2 since any larger loss empties the reservoir anyway.
        size_t cap = config.r_max + 2;
        auto fold = [cap](LossDistribution d) {
            if (d.pmf.size() > cap + 1) {
                for (size_t i = cap + 1; i < d.pmf.size(); i++) {
                    d.pmf[cap] += d.pmf[i];
                }
                d.pmf.resize(cap + 1);
            }
            return d;
        };
        LossDistribution base = *item.pmf;
        size_t k = item.count;
        while (k) {
            if (k & 1) {
                total = fold(total.convolved(base));
            }
            k >>= 1;
            if (k) {
                base = fold(base.convolved(base));
            }
        }
    }
    return total;
}

ReservoirChain build_chain(const ReservoirConfig &config, size_t loading_zones,
                           size_t r) {
    ReservoirChain chain;
    chain.r = r;
    chain.p_add = double(loading_zones) * config.sec_seconds;
    if (chain.p_add > 1) {
        throw std::invalid_argument("P_add(1) = L * dt exceeds 1");
    }
    chain.losses = aggregate_losses(config);
    return chain;
}

namespace {

// One DTMC step: mu' = mu P, exploiting the banded transition structure.
void step(const ReservoirChain &chain, const std::vector<double> &mu,
          std::vector<double> &out) {
    size_t r = chain.r;
    const auto &loss = chain.losses.pmf;
    double pa = chain.p_add;
    std::fill(out.begin(), out.end(), 0.0);
    for (size_t i = 0; i <= r; i++) {
        double mass = mu[i];
        if (mass == 0) {
            continue;
        }
        for (size_t k = 0; k < loss.size(); k++) {
            double pk = loss[k];
            if (pk == 0) {
                continue;
            }
            long base = long(i) - long(k);
            // a = 0
            long j0 = std::clamp<long>(base, 0, long(r));
            out[size_t(j0)] += mass * pk * (1 - pa);
            // a = 1
            long j1 = std::clamp<long>(base + 1, 0, long(r));
            out[size_t(j1)] += mass * pk * pa;
        }
    }
}

}  // namespace

SteadyState steady_state(const ReservoirChain &chain) {
    // The chain is skip-free upward (at most one qubit is added per SEC), so
    // the cut between {0..j} and {j+1..R} carries up-flow only along
    // j -> j+1. Balancing the cut gives an exact downward recursion for pi,
    // which resolves failure probabilities near 1e-10 without iteration.
    size_t n = chain.r + 1;
    const auto &loss = chain.losses.pmf;
    double pa = chain.p_add;
    double p0 = loss.empty() ? 1.0 : loss[0];
    // Tail sums T(m) = P(k >= m), then D(m) = (1-pa) T(m) + pa T(m+1).
    std::vector<double> tail(loss.size() + 2, 0.0);
    for (size_t k = loss.size(); k-- > 0;) {
        tail[k] = tail[k + 1] + loss[k];
    }
    auto d_of = [&](size_t m) {
        double tm = m < tail.size() ? tail[m] : 0.0;
        double tm1 = m + 1 < tail.size() ? tail[m + 1] : 0.0;
        return (1 - pa) * tm + pa * tm1;
    };
    SteadyState out;
    out.pi.assign(n, 0.0);
    if (pa * p0 <= 0) {
        // No up-flow: everything drains to the empty state.
        out.pi[0] = 1.0;
        out.failure = 1.0;
        return out;
    }
    out.pi[chain.r] = 1.0;
    for (size_t j = chain.r; j-- > 0;) {
        double flow = 0;
        size_t m_max = std::min(chain.r - j, loss.size() + 1);
        for (size_t m = 1; m <= m_max; m++) {
            flow += out.pi[j + m] * d_of(m);
        }
        out.pi[j] = flow / (pa * p0);
    }
    double total = 0;
    for (double v : out.pi) {
        total += v;
    }
    for (double &v : out.pi) {
        v /= total;
    }
    out.failure = out.pi[0];
    std::vector<double> next(n, 0.0);
    step(chain, out.pi, next);
    out.residual = 0;
    for (size_t i = 0; i < n; i++) {
        out.residual += std::abs(next[i] - out.pi[i]);
    }
    return out;
}

size_t mixing_steps(const ReservoirChain &chain, double dist,
                    size_t max_steps) {
    SteadyState ss = steady_state(chain);
    size_t n = chain.r + 1;
    std::vector<double> mu(n, 0.0), next(n, 0.0);
    mu[chain.r] = 1.0;
    for (size_t t = 1; t <= max_steps; t++) {
        step(chain, mu, next);
        mu.swap(next);
        // Total variation distance to the steady state.
        double d = 0;
        for (size_t i = 0; i < n; i++) {
            d += std::abs(mu[i] - ss.pi[i]);
        }
        d *= 0.5;
        if (d < dist) {
            return t;
        }
    }
    return max_steps;
}

size_t min_reservoir(const ReservoirConfig &config, size_t loading_zones) {
    auto failure_at = [&](size_t r) {
        ReservoirChain chain = build_chain(config, loading_zones, r);
        return steady_state(chain).failure;
    };
    if (failure_at(config.r_max) >= config.failure_threshold) {
        return 0;
    }
    size_t lo = 1, hi = config.r_max;
    while (lo < hi) {
        size_t mid = (lo + hi) / 2;
        if (failure_at(mid) < config.failure_threshold) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    return lo;
}

OperatingPoint operating_point(const ReservoirConfig &config, size_t l_min,
                               size_t l_max) {
    OperatingPoint out;
    size_t prev_r = 0;
    bool have_prev = false;
    for (size_t l = l_min; l <= l_max; l++) {
        size_t r = min_reservoir(config, l);
        if (r == 0) {
            have_prev = false;
            continue;
        }
        out.lr_curve.push_back({l, r});
        if (have_prev && prev_r <= r + 2 && out.loading_zones == 0) {
            out.loading_zones = l - 1;
            out.reservoir = prev_r;
        }
        have_prev = true;
        prev_r = r;
    }
    if (out.loading_zones == 0 && !out.lr_curve.empty()) {
        out.loading_zones = out.lr_curve.back().first;
        out.reservoir = out.lr_curve.back().second;
    }
    return out;
}

}  // namespace wck
