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

#ifndef WCK_CODES_H
#define WCK_CODES_H

#include <optional>
#include <string>
#include <vector>

#include "wck/gf2.h"

namespace wck {

enum class CodeFamily { GB, BB, CyclicHGP };

std::string family_name(CodeFamily f);
CodeFamily family_from_name(const std::string &s);

/// Three-ring code over Z_2 x Z_ell x Z_m with HX = [A|B], HZ = [B^T|A^T].
struct ThreeRingCode {
    CodeFamily family = CodeFamily::BB;
    int a = 2;
    int b = 1;  // = ell
    int c = 1;  // = m
    MonomialPolynomial A;
    MonomialPolynomial B;
    BitMatrix hx;
    BitMatrix hz;
    size_t n = 0;
    size_t k = 0;
    std::optional<size_t> d;
    bool d_exact = false;
    size_t check_weight = 0;

    size_t half() const { return n / 2; }
};

/// Builds and validates a three-ring code. Throws std::invalid_argument on
/// empty polynomials or on a cyclic-HGP with mixed-variable terms.
ThreeRingCode construct(CodeFamily family, int ell, int m,
                        const MonomialPolynomial &A,
                        const MonomialPolynomial &B);
ThreeRingCode construct(CodeFamily family, int ell, int m,
                        const std::string &A, const std::string &B);

enum class DistanceMode { Exact, Randomized };

struct DistanceResult {
    size_t d = 0;
    bool is_upper_bound = false;
};

/// Minimum weight of a logical operator (commutes with all checks, not in
/// the stabilizer group). Exact mode certifies with a Brouwer-Zimmermann
/// style information-set bound and throws std::runtime_error when the
/// enumeration budget is exceeded. Randomized mode returns a probabilistic
/// upper bound from `iters` random information sets (per round, two rounds).
DistanceResult distance(const ThreeRingCode &code, DistanceMode mode,
                        size_t iters = 100000, uint64_t seed = 1);

/// Witness monomial x^i y^j with x^i y^j a(x,y) = b(x^-1,y^-1) and
/// x^i y^j b(x,y) = a(x^-1,y^-1), if one exists. Guarantees the transversal
/// H structure of self-orthogonal codes.
std::optional<Monomial> is_self_orthogonal(const ThreeRingCode &code);

/// Sufficient condition for biplanar obstruction: every check has degree
/// at least 8.
bool biplanar_obstructed(const ThreeRingCode &code);

/// One row of the code database file.
struct CodeRecord {
    CodeFamily family;
    size_t w = 0;
    int ell = 1;
    int m = 1;
    std::string A;
    std::string B;
    size_t n = 0;
    size_t k = 0;
    size_t d = 0;
    bool d_is_exact = false;

    ThreeRingCode build() const;
};

/// Parses the line-oriented database (one record per line:
/// family w ell m A-terms B-terms n k d exact-flag; '#' comments).
std::vector<CodeRecord> load_code_database(const std::string &path);
std::vector<CodeRecord> parse_code_database(const std::string &text);

/// Architecture codes with published operating data.
struct NamedCode {
    std::string name;
    CodeRecord record;
    size_t d_circ = 0;
    size_t block_width = 0;    // max weight over accessible representatives
    size_t logical_width = 0;  // max logical weight measurable
    double p_log = 0;          // memory logical error rate per SEC
    // Schedule permutation, as (family, index) pairs for the X entry; the Z
    // entry of pair tau is the transpose of the listed partner term.
    std::vector<std::pair<char, int>> sched_x;
    std::vector<std::pair<char, int>> sched_z;
    // Published SEC time budget rows, in POC.
    double budget_reset = 0, budget_gates = 0, budget_shift = 0,
           budget_loss_leak = 0, budget_meas = 0;
    // Published per-SEC loss distribution (index = qubits lost; index 7
    // holds the ">6" tail).
    std::vector<double> loss_pmf;

    double sec_poc() const {
        return budget_reset + budget_gates + budget_shift + budget_loss_leak +
               budget_meas;
    }
    ThreeRingCode build() const { return record.build(); }
};

const std::vector<NamedCode> &named_codes();
const NamedCode &named_code(const std::string &name);

}  // namespace wck

#endif
