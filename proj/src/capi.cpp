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

#include "wck/capi.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "wck/catbell.h"
#include "wck/codes.h"
#include "wck/estimator.h"
#include "wck/logical.h"
#include "wck/magic.h"
#include "wck/measure.h"
#include "wck/reservoir.h"
#include "wck/schedule.h"
#include "wck/simkit.h"
#include "wck/streamdec.h"

using json = nlohmann::json;

namespace {

thread_local std::string g_last_error;

char *dup_string(const std::string &s) {
    char *out = static_cast<char *>(malloc(s.size() + 1));
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

template <typename Fn>
char *guarded(Fn &&fn) {
    try {
        return dup_string(fn());
    } catch (const std::exception &e) {
        g_last_error = e.what();
        return nullptr;
    }
}

wck::Schedule schedule_for(const wck::ThreeRingCode &code) {
    for (const auto &nc : wck::named_codes()) {
        wck::ThreeRingCode built = nc.build();
        if (built.hx == code.hx && built.hz == code.hz) {
            return wck::schedule_of(nc);
        }
    }
    return wck::default_schedule(code);
}

wck::ThreeRingCode code_by_cli_name(const std::string &name) {
    if (name == "toy" || name == "BB4") {
        return wck::construct(wck::CodeFamily::BB, 3, 3, "1,x", "1,xy");
    }
    return wck::named_code(name).build();
}

wck::Schedule schedule_by_cli_name(const std::string &name,
                                   const wck::ThreeRingCode &code) {
    if (name == "toy" || name == "BB4") {
        return {{'B', 1, 'B', 2}, {'A', 1, 'A', 1}, {'A', 2, 'A', 2},
                {'B', 2, 'B', 1}};
    }
    return schedule_for(code);
}

std::string poly_of_support(const wck::ThreeRingCode &code,
                            const wck::PauliOperator &op, bool x_part,
                            bool right_half) {
    std::vector<wck::Monomial> terms;
    size_t half = code.half();
    size_t base = right_half ? half : 0;
    for (size_t idx = 0; idx < half; idx++) {
        size_t q = base + idx;
        bool bit = x_part ? op.x_bit(q) : op.z_bit(q);
        if (bit) {
            terms.push_back({int(idx) / code.c, int(idx) % code.c});
        }
    }
    if (terms.empty()) {
        return "0";
    }
    return wck::MonomialPolynomial(code.b, code.c, terms).str();
}

json op_polys(const wck::ThreeRingCode &code, const wck::PauliOperator &op) {
    json j;
    j["weight"] = op.weight();
    j["x_left"] = poly_of_support(code, op, true, false);
    j["x_right"] = poly_of_support(code, op, true, true);
    j["z_left"] = poly_of_support(code, op, false, false);
    j["z_right"] = poly_of_support(code, op, false, true);
    return j;
}

}  // namespace

struct wck_code {
    wck::ThreeRingCode code;
};

struct wck_circuit {
    wck::CompiledSec sec;
};

extern "C" {

const char *wck_last_error(void) {
    return g_last_error.c_str();
}

void wck_string_free(char *s) {
    free(s);
}

wck_code_t *wck_code_new(const char *family, int ell, int m,
                         const char *a_terms, const char *b_terms) {
    try {
        auto *out = new wck_code;
        out->code = wck::construct(wck::family_from_name(family), ell, m,
                                   a_terms, b_terms);
        return out;
    } catch (const std::exception &e) {
        g_last_error = e.what();
        return nullptr;
    }
}

wck_code_t *wck_code_named(const char *name) {
    try {
        auto *out = new wck_code;
        out->code = code_by_cli_name(name);
        return out;
    } catch (const std::exception &e) {
        g_last_error = e.what();
        return nullptr;
    }
}

void wck_code_free(wck_code_t *code) {
    delete code;
}

char *wck_code_info_json(const wck_code_t *code, const char *distance_mode,
                         long iters, uint64_t seed) {
    if (!code) {
        g_last_error = "null code handle";
        return nullptr;
    }
    std::string mode = distance_mode ? distance_mode : "none";
    return guarded([&]() {
        const wck::ThreeRingCode &c = code->code;
        json j;
        j["family"] = wck::family_name(c.family);
        j["ell"] = c.b;
        j["m"] = c.c;
        j["n"] = c.n;
        j["k"] = c.k;
        j["w"] = c.check_weight;
        if (mode == "exact") {
            auto d = wck::distance(c, wck::DistanceMode::Exact);
            j["d"] = d.d;
            j["d_is_upper_bound"] = false;
        } else if (mode == "randomized") {
            auto d = wck::distance(c, wck::DistanceMode::Randomized,
                                   size_t(iters), seed);
            j["d"] = d.d;
            j["d_is_upper_bound"] = true;
        } else if (c.d.has_value()) {
            j["d"] = *c.d;
            j["d_is_upper_bound"] = !c.d_exact;
        }
        auto witness = wck::is_self_orthogonal(c);
        j["self_orthogonal"] = witness.has_value();
        if (witness) {
            j["self_orthogonal_witness"] =
                    wck::MonomialPolynomial(c.b, c.c, {*witness}).str();
        }
        j["biplanar_obstructed"] = wck::biplanar_obstructed(c);
        return j.dump();
    });
}

char *wck_code_db_check_json(const char *path) {
    return guarded([&]() {
        auto records = wck::load_code_database(path);
        size_t ok = 0;
        json failures = json::array();
        for (const auto &rec : records) {
            wck::ThreeRingCode code = rec.build();
            if (code.n == rec.n && code.k == rec.k) {
                ok++;
            } else {
                failures.push_back({{"A", rec.A},
                                    {"B", rec.B},
                                    {"claimed_n", rec.n},
                                    {"claimed_k", rec.k},
                                    {"n", code.n},
                                    {"k", code.k}});
            }
        }
        json j;
        j["records"] = records.size();
        j["n_k_verified"] = ok;
        j["failures"] = failures;
        return j.dump();
    });
}

wck_circuit_t *wck_compile_sec(const wck_code_t *code, const char *augment) {
    if (!code) {
        g_last_error = "null code handle";
        return nullptr;
    }
    try {
        auto *out = new wck_circuit;
        out->sec = wck::compile_sec(code->code, schedule_for(code->code),
                                    wck::augment_from_name(augment));
        return out;
    } catch (const std::exception &e) {
        g_last_error = e.what();
        return nullptr;
    }
}

void wck_circuit_free(wck_circuit_t *circuit) {
    delete circuit;
}

char *wck_circuit_serialize(const wck_circuit_t *circuit) {
    if (!circuit) {
        g_last_error = "null circuit handle";
        return nullptr;
    }
    return guarded([&]() { return circuit->sec.circuit.serialize(); });
}

char *wck_circuit_budget_json(const wck_circuit_t *circuit) {
    if (!circuit) {
        g_last_error = "null circuit handle";
        return nullptr;
    }
    return guarded([&]() {
        const wck::SecBudget &b = circuit->sec.budget;
        json j;
        j["ancilla_reset"] = b.ancilla_reset;
        j["gate_layers"] = b.gate_layers;
        j["cyclic_shift"] = b.cyclic_shift;
        j["loss_leak_checks"] = b.loss_leak_checks;
        j["measurement"] = b.measurement;
        j["total_poc"] = b.total();
        j["transport_steps"] =
                wck::transport_cost(circuit->sec.circuit).steps;
        return j.dump();
    });
}

char *wck_sim_memory_json(const char *code_name, const char *augment,
                          int rounds, long shots, double p, double p_loss,
                          double p_leak, uint64_t seed, const char *out_path) {
    return guarded([&]() {
        wck::ThreeRingCode code = code_by_cli_name(code_name);
        wck::Schedule sched = schedule_by_cli_name(code_name, code);
        wck::MemoryExperiment exp = wck::build_memory_experiment(
                code, sched, wck::augment_from_name(augment), size_t(rounds));
        wck::NoiseParams noise{p, p_loss, p_leak};
        wck::DetectorData data = wck::sample_detectors(exp.circuit, noise,
                                                       size_t(shots), seed);
        if (out_path) {
            std::ofstream f(out_path, std::ios::binary);
            if (!f) {
                throw std::runtime_error("cannot open output file");
            }
            for (size_t s = 0; s < data.shots; s++) {
                f.write(reinterpret_cast<const char *>(data.detectors.row(s)),
                        std::streamsize(data.detectors.words_per_row() * 8));
            }
        }
        uint64_t det_flips = 0, obs_flips = 0, lost = 0, leaked = 0;
        for (size_t s = 0; s < data.shots; s++) {
            for (size_t d = 0; d < data.num_detectors; d++) {
                det_flips += data.detectors.get(s, d);
            }
            for (size_t o = 0; o < data.num_observables; o++) {
                obs_flips += data.observables.get(s, o);
            }
            lost += data.lost[s];
            leaked += data.leaked[s];
        }
        json j;
        j["shots"] = data.shots;
        j["detectors"] = data.num_detectors;
        j["observables"] = data.num_observables;
        j["bytes_per_shot_row"] = data.detectors.words_per_row() * 8;
        j["detector_flips"] = det_flips;
        j["observable_flips"] = obs_flips;
        j["lost_qubits"] = lost;
        j["leaked_qubits"] = leaked;
        return j.dump();
    });
}

char *wck_decode_stream_csv(const char *code_name, int window, int commit,
                            int rounds, long shots, double p, uint64_t seed) {
    return guarded([&]() {
        wck::ThreeRingCode code = code_by_cli_name(code_name);
        wck::Schedule sched = schedule_by_cli_name(code_name, code);
        wck::MemoryExperiment exp = wck::build_memory_experiment(
                code, sched, wck::Augment::None, size_t(rounds));
        wck::NoiseParams noise{p, 0, 0};
        wck::StaircaseModel model = wck::build_staircase(exp.circuit, noise);
        wck::DetectorData data = wck::sample_detectors(exp.circuit, noise,
                                                       size_t(shots), seed);
        wck::InnerDecoderConfig cfg;
        std::ostringstream csv;
        csv << "shot,window,decode_us,committed_weight\n";
        std::vector<double> times;
        size_t logical_errors = 0;
        for (size_t s = 0; s < data.shots; s++) {
            std::vector<uint8_t> stream =
                    wck::sector0_stream(exp.circuit, data, s);
            wck::StreamResult res = wck::stream_decode(
                    model, size_t(window), size_t(commit), stream, cfg);
            size_t wsum = 0;
            for (uint8_t b : res.committed) {
                wsum += b;
            }
            for (size_t wi = 0; wi < res.window_micros.size(); wi++) {
                csv << s << "," << wi << "," << res.window_micros[wi] << ","
                    << wsum << "\n";
                times.push_back(res.window_micros[wi]);
            }
            bool err = false;
            for (size_t o = 0; o < model.num_observables; o++) {
                err |= res.observable_flips[o] != data.observables.get(s, o);
            }
            logical_errors += err;
        }
        std::sort(times.begin(), times.end());
        auto pct = [&](double q) {
            if (times.empty()) {
                return 0.0;
            }
            size_t idx = std::min(times.size() - 1,
                                  size_t(q * double(times.size())));
            return times[idx];
        };
        double mean = 0;
        for (double t : times) {
            mean += t;
        }
        mean = times.empty() ? 0 : mean / double(times.size());
        csv << "# windows=" << times.size() << " mean_us=" << mean
            << " p99_us=" << pct(0.99) << " p999_us=" << pct(0.999) << "\n";
        csv << "# shots=" << data.shots << " logical_errors=" << logical_errors
            << "\n";
        return csv.str();
    });
}

char *wck_cat_model_json(int w, double eps, double p) {
    return guarded([&]() {
        wck::CatSpec spec;
        spec.w = size_t(w);
        spec.eps = eps;
        spec.p = p;
        wck::CatModel model = wck::cat_model(spec);
        json j;
        j["w"] = model.w;
        j["m"] = model.m;
        j["x_rate_per_qubit"] = model.x_rate_per_qubit;
        j["z_rate_per_qubit"] = model.z_rate_per_qubit;
        j["reject_error"] = model.reject_error;
        j["reject_leak"] = model.reject_leak;
        j["reject_loss"] = model.reject_loss;
        j["flow_per_sec"] = model.flow_per_sec;
        j["prod_pocs"] = model.prod_pocs;
        j["prod_transport_steps"] = model.prod_transport;
        json pmf = json::object();
        for (const auto &[k, v] : model.loss_pmf_peaks) {
            pmf[std::to_string(k)] = v;
        }
        j["loss_pmf_peaks"] = pmf;
        return j.dump();
    });
}

char *wck_cat_sim_csv(int w, int m, double p, double p_loss, double p_leak,
                      long shots, const char *basis, uint64_t seed) {
    return guarded([&]() {
        wck::CatSpec spec;
        spec.w = size_t(w);
        spec.m = m;
        spec.p = p;
        spec.p_loss = p_loss;
        spec.p_leak = p_leak;
        char rb = basis && basis[0] == 'X' ? 'X' : 'Z';
        wck::CatSimResult res = wck::cat_sim(spec, size_t(shots), rb, seed);
        std::ostringstream csv;
        csv << "metric,value\n";
        csv << "shots," << res.shots << "\n";
        csv << "accepted," << res.accepted << "\n";
        csv << "rejected_error," << res.rejected_error << "\n";
        csv << "rejected_leak," << res.rejected_leak << "\n";
        csv << "rejected_loss," << res.rejected_loss << "\n";
        if (rb == 'Z') {
            for (size_t k = 0; k < res.x_weight_histogram.size(); k++) {
                if (res.x_weight_histogram[k]) {
                    csv << "x_weight_" << k << "," << res.x_weight_histogram[k]
                        << "\n";
                }
            }
        } else {
            csv << "z_errors," << res.z_errors << "\n";
        }
        for (size_t k = 0; k < res.lost_histogram.size(); k++) {
            if (k > 0 && res.lost_histogram[k]) {
                csv << "lost_" << k << "," << res.lost_histogram[k] << "\n";
            }
        }
        return csv.str();
    });
}

char *wck_measure_viterbi_json(double w, double eps, double p) {
    return guarded([&]() {
        wck::MeasureParams params;
        params.wbar = w;
        params.eps = eps;
        params.p = p;
        wck::ViterbiDuration d = wck::viterbi_duration(params);
        json j;
        j["expected_sec"] = d.expected_sec;
        j["closed_form"] = d.closed_form;
        j["margin"] = d.margin;
        j["quantile_50"] = d.quantiles[0];
        j["quantile_90"] = d.quantiles[1];
        j["quantile_99"] = d.quantiles[2];
        return j.dump();
    });
}

char *wck_magic_model_json(const char *kind) {
    return guarded([&]() {
        std::string k = kind ? kind : "";
        for (auto &ch : k) {
            ch = char(toupper(static_cast<unsigned char>(ch)));
        }
        wck::FactoryModel m;
        if (k == "CH2") {
            auto inj = wck::injection_model(16, 1e-4, 3e-10, 1e-7, 1e-5,
                                            wck::named_code("Q54").sec_poc());
            m = wck::ch2_model(inj, wck::viterbi_secs(54, false));
        } else if (k == "MEK") {
            auto inj = wck::injection_model(18, 1e-4, 1e-10, 1e-7, 1e-5,
                                            wck::named_code("Q70").sec_poc());
            m = wck::mek_model(inj, wck::viterbi_secs(20, false));
        } else {
            throw std::invalid_argument("kind must be ch2 or mek");
        }
        json j;
        j["kind"] = k;
        j["host_code"] = m.host_code;
        j["physical_qubits"] =
                3 * wck::named_code(m.host_code).record.n + 11;
        j["width"] = m.width;
        j["magic_states_per_success"] = m.states_per_success;
        j["r_inj"] = m.r_inj;
        j["q_y"] = m.q_y;
        j["p_retry"] = m.p_retry;
        j["a_inj"] = m.a_inj;
        j["a_ver"] = m.a_ver;
        j["avg_sec_per_success"] = m.n_sec_avg;
        j["per_attempt_failure_rate"] = m.p_fail;
        j["output_error"] = m.p_out;
        return j.dump();
    });
}

char *wck_reservoir_size_csv(int memories, int magic, int cat, int bell,
                             double dt, int l_min, int l_max) {
    return guarded([&]() {
        wck::ReservoirConfig cfg = wck::published_reservoir_config(
                size_t(memories), size_t(magic), size_t(cat), size_t(bell));
        if (dt > 0) {
            cfg.sec_seconds = dt;
        }
        wck::OperatingPoint op =
                wck::operating_point(cfg, size_t(l_min), size_t(l_max));
        std::ostringstream csv;
        csv << "L,R\n";
        for (auto [l, r] : op.lr_curve) {
            csv << l << "," << r << "\n";
        }
        csv << "# operating_point L=" << op.loading_zones
            << " R=" << op.reservoir << "\n";
        return csv.str();
    });
}

char *wck_estimate_json(const char *config) {
    return guarded([&]() {
        wck::ArchConfig cfg = wck::parse_config(config);
        wck::Allocation a = wck::allocate(cfg);
        wck::OpTimes t = wck::op_times(cfg);
        json j;
        j["configuration"] = cfg.str();
        j["logical_qubits"] = a.logical_qubits;
        j["t_gates_per_day"] = wck::t_gates_per_day(cfg);
        json alloc;
        alloc["memory"] = a.memory;
        alloc["magic"] = a.magic;
        alloc["cat"] = a.cat;
        alloc["bell"] = a.bell;
        alloc["reservoir"] = a.reservoir;
        alloc["cat_transport"] = a.cat_transport;
        alloc["bell_transport"] = a.bell_transport;
        alloc["total"] = a.total;
        j["qubit_allocation"] = alloc;
        json times;
        times["lz_lp"] = t.lz_lp;
        times["lt"] = t.lt;
        times["lm1"] = t.lm1;
        times["lm2"] = t.lm2;
        times["clif"] = t.clif;
        times["dmx_dmz"] = t.dm;
        times["t_gate_x2"] = t.t_gate_x2;
        j["op_times_seconds"] = times;
        return j.dump();
    });
}

char *wck_logical_reduce_json(const char *code_name, int self_similar,
                              int steps, uint64_t seed) {
    return guarded([&]() {
        wck::ThreeRingCode code = code_by_cli_name(code_name);
        wck::SymplecticBasis basis =
                wck::symplectic_basis(code.hx, code.hz, true);
        wck::TabuResult res = wck::tabu_reduce_basis(
                basis, code, size_t(steps), 50, self_similar != 0, seed);
        json j;
        j["max_weight"] = res.max_weight;
        json xs = json::array(), zs = json::array();
        for (size_t i = 0; i < res.basis.k(); i++) {
            xs.push_back(op_polys(code, res.basis.x_ops[i]));
            zs.push_back(op_polys(code, res.basis.z_ops[i]));
        }
        j["x_ops"] = xs;
        j["z_ops"] = zs;
        return j.dump();
    });
}

}  // extern "C"
