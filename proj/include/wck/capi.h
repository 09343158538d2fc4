/* Copyright 2026 The wck Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C API of the walking-cat toolkit. All functions returning a char* hand
 * ownership to the caller (release with wck_string_free); they return NULL
 * on failure, with a message available from wck_last_error(). Status codes
 * mirror the CLI exit codes: 0 ok, 2 usage, 3 data error.
 */

#ifndef WCK_CAPI_H
#define WCK_CAPI_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct wck_code wck_code_t;
typedef struct wck_circuit wck_circuit_t;

typedef enum {
    WCK_OK = 0,
    WCK_ERR_USAGE = 2,
    WCK_ERR_DATA = 3,
} wck_status_t;

/* Message for the most recent failure on this thread. */
const char *wck_last_error(void);
void wck_string_free(char *s);

/* --- codes ------------------------------------------------------------ */

wck_code_t *wck_code_new(const char *family, int ell, int m,
                         const char *a_terms, const char *b_terms);
wck_code_t *wck_code_named(const char *name);
void wck_code_free(wck_code_t *code);

/* {"n":..,"k":..,"d":..,"d_is_upper_bound":..,"w":..,
 *  "self_orthogonal":..,"biplanar_obstructed":..}
 * distance_mode: "none", "exact" or "randomized". */
char *wck_code_info_json(const wck_code_t *code, const char *distance_mode,
                         long iters, uint64_t seed);

/* Validates every record of a code database file; returns a JSON summary. */
char *wck_code_db_check_json(const char *path);

/* --- syndrome extraction ------------------------------------------------ */

/* augment: "none", "beacon" or "beacon+ldu". Uses the published schedule
 * for named codes and a generated clean schedule otherwise. */
wck_circuit_t *wck_compile_sec(const wck_code_t *code, const char *augment);
void wck_circuit_free(wck_circuit_t *circuit);
char *wck_circuit_serialize(const wck_circuit_t *circuit);
char *wck_circuit_budget_json(const wck_circuit_t *circuit);

/* Memory experiment sampler; writes bit-packed detector rows to `out_path`
 * when non-NULL and returns the sidecar JSON. */
char *wck_sim_memory_json(const char *code_name, const char *augment,
                          int rounds, long shots, double p, double p_loss,
                          double p_leak, uint64_t seed, const char *out_path);

/* --- decoding ----------------------------------------------------------- */

/* Streaming-decoder experiment on a named code (or "toy"); returns CSV
 * rows shot,window,decode_us,committed_weight followed by summary comment
 * lines (mean/p99/p99.9 per-window decode time, logical error rates). */
char *wck_decode_stream_csv(const char *code_name, int window, int commit,
                            int rounds, long shots, double p, uint64_t seed);

/* --- factories and measurements ---------------------------------------- */

char *wck_cat_model_json(int w, double eps, double p);
char *wck_cat_sim_csv(int w, int m, double p, double p_loss, double p_leak,
                      long shots, const char *basis, uint64_t seed);
char *wck_measure_viterbi_json(double w, double eps, double p);
char *wck_magic_model_json(const char *kind);

/* --- provisioning and estimation ---------------------------------------- */

/* CSV of the (L, R) curve plus the chosen operating point. */
char *wck_reservoir_size_csv(int memories, int magic, int cat, int bell,
                             double dt, int l_min, int l_max);

/* JSON with the qubit allocation, logical operation times, and T gates/day
 * for a configuration string such as "17xQ70+3xMEK". */
char *wck_estimate_json(const char *config);

/* Weight-reduced symplectic basis as exponent polynomials. */
char *wck_logical_reduce_json(const char *code_name, int self_similar,
                              int steps, uint64_t seed);

#ifdef __cplusplus
}
#endif

#endif
