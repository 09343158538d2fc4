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

// Command-line front end; links only the shared C API.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "wck/capi.h"

namespace {

int emit(char *result, const std::string &out_path) {
    if (!result) {
        std::cerr << "error: " << wck_last_error() << "\n";
        return WCK_ERR_DATA;
    }
    if (out_path.empty()) {
        std::cout << result;
        if (result[0] && result[std::string(result).size() - 1] != '\n') {
            std::cout << "\n";
        }
    } else {
        std::ofstream f(out_path);
        if (!f) {
            std::cerr << "error: cannot open " << out_path << "\n";
            wck_string_free(result);
            return WCK_ERR_DATA;
        }
        f << result;
    }
    wck_string_free(result);
    return WCK_OK;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"walking-cat architecture toolkit"};
    app.require_subcommand(1);
    uint64_t seed = 1;
    std::string out_path;
    app.add_option("--seed", seed, "deterministic RNG seed");
    app.add_option("--out", out_path, "write output to a file instead of stdout");

    // code info / db-check
    auto *code_cmd = app.add_subcommand("code", "code construction and lookup");
    code_cmd->require_subcommand(1);
    auto *info = code_cmd->add_subcommand("info", "parameters of one code");
    std::string name, family = "BB", a_terms, b_terms, dist_mode = "none";
    int ell = 1, m_ring = 1;
    long dist_iters = 100000;
    info->add_option("--name", name, "named code (Q54, Q70, Q102)");
    info->add_option("--family", family, "GB, BB or cyclic-HGP");
    info->add_option("--l", ell, "ring size ell");
    info->add_option("--m", m_ring, "ring size m");
    info->add_option("--A", a_terms, "A terms, e.g. y2,x2,x3,x4");
    info->add_option("--B", b_terms, "B terms, e.g. y,x,x3");
    info->add_option("--dist", dist_mode, "none, exact or randomized");
    info->add_option("--dist-iters", dist_iters, "randomized iterations");
    auto *dbcheck = code_cmd->add_subcommand("db-check", "validate a database");
    std::string db_path = "data/codes.db";
    dbcheck->add_option("--file", db_path, "database path");

    // schedule compile
    auto *sched_cmd = app.add_subcommand("schedule", "syndrome extraction");
    auto *compile = sched_cmd->add_subcommand("compile", "compile one SEC");
    std::string sc_code = "Q54", augment = "beacon+ldu";
    bool budget_only = false;
    compile->add_option("code", sc_code, "named code or 'toy'");
    compile->add_option("--augment", augment, "none, beacon or beacon+ldu");
    compile->add_flag("--budget", budget_only, "print the POC budget only");

    // sim memory
    auto *sim_cmd = app.add_subcommand("sim", "stabilizer simulation");
    auto *mem = sim_cmd->add_subcommand("memory", "memory experiment sampler");
    std::string sim_code = "toy", sim_augment = "none", dump_path;
    int rounds = 5;
    long shots = 1000;
    double p = 1e-3, p_loss = 0, p_leak = 0;
    mem->add_option("--code", sim_code, "named code or 'toy'");
    mem->add_option("--augment", sim_augment, "none, beacon or beacon+ldu");
    mem->add_option("--rounds", rounds, "SEC count");
    mem->add_option("--shots", shots, "shots");
    mem->add_option("--p", p, "physical rate p");
    mem->add_option("--p-loss", p_loss, "loss rate");
    mem->add_option("--p-leak", p_leak, "leakage rate");
    mem->add_option("--dump", dump_path, "bit-packed detector rows file");

    // decode stream
    auto *dec_cmd = app.add_subcommand("decode", "streaming decoder");
    auto *stream = dec_cmd->add_subcommand("stream", "sliding-window decode");
    std::string dec_code = "toy", window = "3,1";
    int dec_rounds = 9;
    long dec_shots = 100;
    double dec_p = 1e-2;
    stream->add_option("--code", dec_code, "named code or 'toy'");
    stream->add_option("--window", window, "w,c");
    stream->add_option("--rounds", dec_rounds, "SEC count");
    stream->add_option("--shots", dec_shots, "shots");
    stream->add_option("--p", dec_p, "physical rate p");

    // cat
    auto *cat_cmd = app.add_subcommand("cat", "cat factory");
    auto *cat_model_cmd = cat_cmd->add_subcommand("model", "heuristic model");
    int cw = 30;
    double ceps = 1e-10, cp = 1e-4;
    cat_model_cmd->add_option("--w", cw, "cat weight");
    cat_model_cmd->add_option("--eps", ceps, "target precision");
    cat_model_cmd->add_option("--p", cp, "physical rate");
    auto *cat_sim_cmd = cat_cmd->add_subcommand("sim", "Monte Carlo");
    int csw = 30, csm = 2;
    long cs_shots = 100000;
    double csp = 1e-3, cs_loss = 0, cs_leak = 0;
    std::string cs_basis = "Z";
    cat_sim_cmd->add_option("--w", csw, "cat weight");
    cat_sim_cmd->add_option("--m", csm, "verification rounds");
    cat_sim_cmd->add_option("--p", csp, "physical rate");
    cat_sim_cmd->add_option("--p-loss", cs_loss, "loss rate");
    cat_sim_cmd->add_option("--p-leak", cs_leak, "leakage rate");
    cat_sim_cmd->add_option("--shots", cs_shots, "shots");
    cat_sim_cmd->add_option("--basis", cs_basis, "readout basis Z or X");

    // measure viterbi
    auto *meas_cmd = app.add_subcommand("measure", "logical measurements");
    auto *vit = meas_cmd->add_subcommand("viterbi", "adaptive duration");
    double vw = 30, veps = 1e-10, vp = 1e-4;
    vit->add_option("--w", vw, "representative weight");
    vit->add_option("--eps", veps, "target precision");
    vit->add_option("--p", vp, "physical rate");

    // magic model
    auto *magic_cmd = app.add_subcommand("magic", "magic factories");
    auto *magic_model_cmd = magic_cmd->add_subcommand("model", "analytic model");
    std::string kind = "ch2";
    magic_model_cmd->add_option("--kind", kind, "ch2 or mek");

    // reservoir size
    auto *res_cmd = app.add_subcommand("reservoir", "qubit factory");
    auto *size = res_cmd->add_subcommand("size", "L/R curve + operating point");
    int rm = 20, rt = 20, rc = 40, rb = 5, lmin = 1, lmax = 40;
    double rdt = 6e-3;
    size->add_option("--M", rm, "memory blocks");
    size->add_option("--T", rt, "magic factories");
    size->add_option("--C", rc, "cat factories");
    size->add_option("--B", rb, "Bell factories");
    size->add_option("--dt", rdt, "SEC time in seconds");
    size->add_option("--lmin", lmin, "smallest L scanned");
    size->add_option("--lmax", lmax, "largest L scanned");

    // estimate
    auto *est = app.add_subcommand("estimate", "architecture estimate");
    std::string config = "17xQ70+3xMEK";
    est->add_option("--config", config, "e.g. 17xQ70+3xMEK");

    // logical reduce
    auto *log_cmd = app.add_subcommand("logical", "logical operators");
    auto *reduce = log_cmd->add_subcommand("reduce", "weight-reduced basis");
    std::string red_code = "Q70";
    bool self_similar = false;
    int steps = 60;
    reduce->add_option("code", red_code, "named code or 'toy'");
    reduce->add_flag("--self-similar", self_similar,
                     "preserve self-similarity");
    reduce->add_option("--steps", steps, "tabu steps");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? 0 : WCK_ERR_USAGE;
    }

    if (info->parsed()) {
        wck_code_t *code = nullptr;
        if (!name.empty()) {
            code = wck_code_named(name.c_str());
        } else if (!a_terms.empty() && !b_terms.empty()) {
            code = wck_code_new(family.c_str(), ell, m_ring, a_terms.c_str(),
                                b_terms.c_str());
        } else {
            std::cerr << "error: provide --name or --family/--l/--m/--A/--B\n";
            return WCK_ERR_USAGE;
        }
        if (!code) {
            std::cerr << "error: " << wck_last_error() << "\n";
            return WCK_ERR_DATA;
        }
        char *json = wck_code_info_json(code, dist_mode.c_str(), dist_iters,
                                        seed);
        wck_code_free(code);
        return emit(json, out_path);
    }
    if (dbcheck->parsed()) {
        return emit(wck_code_db_check_json(db_path.c_str()), out_path);
    }
    if (compile->parsed()) {
        wck_code_t *code = wck_code_named(sc_code.c_str());
        if (!code) {
            std::cerr << "error: " << wck_last_error() << "\n";
            return WCK_ERR_DATA;
        }
        wck_circuit_t *circ = wck_compile_sec(code, augment.c_str());
        wck_code_free(code);
        if (!circ) {
            std::cerr << "error: " << wck_last_error() << "\n";
            return WCK_ERR_DATA;
        }
        char *text = budget_only ? wck_circuit_budget_json(circ)
                                 : wck_circuit_serialize(circ);
        wck_circuit_free(circ);
        return emit(text, out_path);
    }
    if (mem->parsed()) {
        return emit(wck_sim_memory_json(
                            sim_code.c_str(), sim_augment.c_str(), rounds,
                            shots, p, p_loss, p_leak, seed,
                            dump_path.empty() ? nullptr : dump_path.c_str()),
                    out_path);
    }
    if (stream->parsed()) {
        size_t comma = window.find(',');
        if (comma == std::string::npos) {
            std::cerr << "error: --window expects w,c\n";
            return WCK_ERR_USAGE;
        }
        int w = std::stoi(window.substr(0, comma));
        int c = std::stoi(window.substr(comma + 1));
        return emit(wck_decode_stream_csv(dec_code.c_str(), w, c, dec_rounds,
                                          dec_shots, dec_p, seed),
                    out_path);
    }
    if (cat_model_cmd->parsed()) {
        return emit(wck_cat_model_json(cw, ceps, cp), out_path);
    }
    if (cat_sim_cmd->parsed()) {
        return emit(wck_cat_sim_csv(csw, csm, csp, cs_loss, cs_leak, cs_shots,
                                    cs_basis.c_str(), seed),
                    out_path);
    }
    if (vit->parsed()) {
        return emit(wck_measure_viterbi_json(vw, veps, vp), out_path);
    }
    if (magic_model_cmd->parsed()) {
        return emit(wck_magic_model_json(kind.c_str()), out_path);
    }
    if (size->parsed()) {
        return emit(wck_reservoir_size_csv(rm, rt, rc, rb, rdt, lmin, lmax),
                    out_path);
    }
    if (est->parsed()) {
        return emit(wck_estimate_json(config.c_str()), out_path);
    }
    if (reduce->parsed()) {
        return emit(wck_logical_reduce_json(red_code.c_str(),
                                            self_similar ? 1 : 0, steps, seed),
                    out_path);
    }
    std::cerr << "error: no subcommand\n";
    return WCK_ERR_USAGE;
}
