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

#include "wck/estimator.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "wck/catbell.h"
#include "wck/codes.h"
#include "wck/measure.h"
#include "wck/simkit.h"

namespace wck {

namespace {

constexpr size_t kReservoirQubits = 200;
constexpr size_t kStitchRounds = 4;

struct FactoryInfo {
    const NamedCode *host;
    size_t cat_width;  // cat size its companion factory must produce
};

FactoryInfo factory_info(FactoryKind kind) {
    if (kind == FactoryKind::CH2) {
        return {&named_code("Q54"), 54};
    }
    return {&named_code("Q70"), 18};
}

std::string kind_name(FactoryKind kind) {
    return kind == FactoryKind::CH2 ? "CH2" : "MEK";
}

}  // namespace

std::string ArchConfig::str() const {
    std::ostringstream ss;
    ss << n_mem << "x" << mem_code << "+" << n_fact << "x"
       << kind_name(fact_kind);
    return ss.str();
}

ArchConfig parse_config(const std::string &text) {
    // Grammar: <count>x<code>+<count>x<kind>
    auto fail = [&]() {
        throw std::invalid_argument("cannot parse configuration '" + text +
                                    "' (expected e.g. 17xQ70+3xMEK)");
    };
    std::string s;
    for (char ch : text) {
        if (!isspace(static_cast<unsigned char>(ch))) {
            s.push_back(ch);
        }
    }
    size_t plus = s.find('+');
    if (plus == std::string::npos) {
        fail();
    }
    auto split_x = [&](const std::string &part) {
        size_t x = part.find_first_of("xX");
        if (x == std::string::npos || x == 0) {
            fail();
        }
        return std::make_pair(size_t(std::stoul(part.substr(0, x))),
                              part.substr(x + 1));
    };
    auto [nm, code] = split_x(s.substr(0, plus));
    auto [nf, kind] = split_x(s.substr(plus + 1));
    ArchConfig cfg;
    cfg.n_mem = nm;
    cfg.mem_code = code;
    cfg.n_fact = nf;
    std::string upper;
    for (char ch : kind) {
        upper.push_back(char(toupper(static_cast<unsigned char>(ch))));
    }
    if (upper == "CH2") {
        cfg.fact_kind = FactoryKind::CH2;
    } else if (upper == "MEK") {
        cfg.fact_kind = FactoryKind::MEK;
    } else {
        fail();
    }
    named_code(cfg.mem_code);  // validates
    if (cfg.n_mem < 1) {
        throw std::invalid_argument("at least one memory block required");
    }
    return cfg;
}

double viterbi_secs(double weight, bool with_reaction) {
    MeasureParams params;
    params.wbar = weight;
    params.p = 1e-4;
    params.eps = 1e-10;
    ViterbiDuration dur = viterbi_duration(params);
    return dur.expected_sec + (with_reaction ? 1.0 : 0.0);
}

Allocation allocate(const ArchConfig &config) {
    const NamedCode &mem = named_code(config.mem_code);
    FactoryInfo fact = factory_info(config.fact_kind);
    Allocation out;
    out.memory = config.n_mem * (3 * mem.record.n + 10);
    out.magic = config.n_fact * (3 * fact.host->record.n + 11);
    size_t blocks = config.n_mem + config.n_fact;
    // Companion cat factories: 2w qubits for cat weight w.
    out.cat = config.n_mem * 2 * mem.block_width +
              config.n_fact * 2 * fact.cat_width;
    size_t bell_factories = (blocks + 2) / 3;
    size_t bell_each = 2 * ((3 * kStitchRounds + 1) / 2);
    out.bell = bell_factories * bell_each;
    out.reservoir = kReservoirQubits;
    out.logical_qubits = config.n_mem * mem.record.k;

    // Outer-loop layout: each block sits beside its companion cat factory as
    // a 4-row strip of width n + 2w, strips stacked with one empty row
    // between; the loop is the perimeter of the enclosing rectangle.
    size_t mem_strip = mem.record.n + 2 * mem.block_width;
    size_t fact_strip = fact.host->record.n + 2 * fact.cat_width;
    size_t width = std::max(mem_strip, fact_strip);
    size_t rows = 4 * blocks + (blocks - 1);
    out.outer_loop_steps = 2 * (rows + width);
    double loop_poc = double(out.outer_loop_steps) / 20.0;
    out.loop_time_sec = loop_poc / mem.sec_poc();

    size_t cat_transport = 0;
    cat_transport += config.n_mem *
                     size_t(std::ceil(double(mem.block_width) *
                                      out.loop_time_sec - 1e-9));
    cat_transport += config.n_fact *
                     size_t(std::ceil(double(fact.cat_width) *
                                      out.loop_time_sec - 1e-9));
    out.cat_transport = cat_transport;
    size_t bell_flow = (3 * kStitchRounds + 1) / 2;  // qubits per SEC
    out.bell_transport =
            bell_factories *
            size_t(std::ceil(double(bell_flow) * out.loop_time_sec - 1e-9));
    out.total = out.memory + out.magic + out.cat + out.bell + out.reservoir +
                out.cat_transport + out.bell_transport;
    return out;
}

OpTimes op_times(const ArchConfig &config) {
    const NamedCode &mem = named_code(config.mem_code);
    FactoryInfo fact = factory_info(config.fact_kind);
    double mem_sec = mem.sec_poc() * NoiseParams::kPocSeconds;
    double fact_sec = fact.host->sec_poc() * NoiseParams::kPocSeconds;

    OpTimes t;
    t.lz_lp = mem_sec;
    t.dm = mem_sec;
    t.clif = 0;
    t.lm1 = viterbi_secs(double(mem.block_width), true) * mem_sec;

    double joint_w = double(mem.block_width + fact.host->block_width);
    double slower = std::max(mem_sec, fact_sec);
    t.lm2 = viterbi_secs(joint_w, true) * slower;

    // Magic-state production time from the factory model.
    InjectionModel inj = injection_model(
            config.fact_kind == FactoryKind::CH2 ? 16 : 18, 1e-4,
            fact.host->p_log, 1e-7, 1e-5, fact.host->sec_poc());
    FactoryModel fm;
    if (config.fact_kind == FactoryKind::CH2) {
        fm = ch2_model(inj, viterbi_secs(54, false));
    } else {
        fm = mek_model(inj, viterbi_secs(20, false));
    }
    t.lt = fm.n_sec_avg * fact_sec;

    if (config.fact_kind == FactoryKind::CH2) {
        // Double T gate: LT + two inter-block measurements + one
        // destructive measurement of the factory block.
        t.t_gate_x2 = t.lt + 2 * t.lm2 + fact_sec;
    } else {
        // Two sequential T gates, each an inter-block measurement plus an
        // in-block measurement on the factory.
        double lm1_fact =
                viterbi_secs(double(fact.host->block_width), true) * fact_sec;
        t.t_gate_x2 = t.lt + 2 * (t.lm2 + lm1_fact);
    }
    return t;
}

double t_gates_per_day(const ArchConfig &config) {
    if (config.n_fact == 0) {
        return 0;
    }
    OpTimes t = op_times(config);
    return double(config.n_fact) * 2.0 / t.t_gate_x2 * 86400.0;
}

std::vector<TradeoffPoint> single_code_tradeoff(size_t n_t) {
    std::vector<TradeoffPoint> out;
    ArchConfig base;
    base.n_mem = 1;
    base.mem_code = "Q70";
    base.n_fact = 1;
    base.fact_kind = FactoryKind::MEK;
    double t2 = op_times(base).t_gate_x2;
    for (size_t m = 0; m <= n_t; m++) {
        TradeoffPoint pt;
        pt.blocks_as_memory = m;
        pt.logical_qubits = 6 * m;
        pt.t_per_day = double(n_t - m) * 2.0 / t2 * 86400.0;
        out.push_back(pt);
    }
    return out;
}

}  // namespace wck
