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

#ifndef WCK_LOGICAL_H
#define WCK_LOGICAL_H

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "wck/codes.h"
#include "wck/gf2.h"
#include "wck/util.h"

namespace wck {

/// Software Clifford frame on k logical qubits: the retargeting map
/// P -> U^dag P U, stored as the images of the 2k Pauli generators
/// (a 2k x 2k binary symplectic matrix plus 2k sign bits).
class CliffordFrame {
  public:
    explicit CliffordFrame(size_t k);  // identity

    static CliffordFrame hadamard(size_t k, size_t qubit);
    static CliffordFrame phase_gate(size_t k, size_t qubit);
    static CliffordFrame cx(size_t k, size_t control, size_t target);
    // Frame whose symplectic action is the given 2k x 2k matrix (rows =
    // images of X_1..X_k, Z_1..Z_k) with + signs.
    static CliffordFrame from_symplectic(const BitMatrix &m);

    size_t k() const { return k_; }
    const PauliOperator &image_x(size_t i) const { return imgs_[i]; }
    const PauliOperator &image_z(size_t i) const { return imgs_[k_ + i]; }

    /// U <- V U, i.e. retarget(P) becomes U^dag V^dag P V U.
    void update(const CliffordFrame &v);
    /// U^dag P U.
    PauliOperator conjugate(const PauliOperator &p) const;
    CliffordFrame inverse() const;
    bool is_symplectic() const;
    BitMatrix symplectic_matrix() const;

  private:
    size_t k_;
    std::vector<PauliOperator> imgs_;  // X_1..X_k then Z_1..Z_k
};

/// Minimum-weight representative of P * S over the stabilizer group of the
/// code. Exact by exhaustive span enumeration when n - k <= 24; otherwise a
/// randomized information-set search with greedy descent (flagged
/// non-exact). Throws if P anticommutes with a stabilizer.
struct OptimizedRep {
    PauliOperator rep;
    bool exact = false;
};
OptimizedRep stabilizer_optimized(const PauliOperator &p,
                                  const ThreeRingCode &code,
                                  size_t search_iters = 400,
                                  uint64_t seed = 11);

/// Shared weight-minimization context: caches per-logical-class minima and
/// a pool of low-weight stabilizers harvested from random information sets.
class RepCache {
  public:
    RepCache(const ThreeRingCode &code, const SymplecticBasis &basis,
             uint64_t seed = 17);

    /// Runs `iters` random-information-set harvest rounds over the
    /// normalizer, improving every touched class.
    void harvest(size_t iters);

    /// Information-set coset search on the worst cached classes (those with
    /// weight above `threshold`), `iters` rounds each, at most `max_classes`
    /// per call, sharing each random elimination across `batch` targets.
    void polish_worst(size_t threshold, size_t iters,
                      size_t max_classes = SIZE_MAX, size_t batch = 64);

    /// Same search restricted to an explicit list of class signatures.
    void polish_classes(const std::vector<std::vector<uint8_t>> &sigs,
                        size_t iters, size_t batch);

    /// Simulated annealing over stabilizer moves (generators plus the
    /// harvested low-weight pool) on every cached class above `threshold`.
    void anneal_worst(size_t threshold, size_t steps);

    /// Re-offers every cached representative under a weight-preserving
    /// qubit permutation that fixes the stabilizer group (e.g. a cyclic
    /// shift of a GB/BB code), propagating minima across orbits. With
    /// `swap_xz` the X and Z components are exchanged as well.
    void offer_permuted(const std::vector<uint32_t> &perm,
                        bool swap_xz = false);

    /// Best-known representative of the logical class of P (P must commute
    /// with all stabilizers). Seeds from P itself, pool descent included.
    const PauliOperator &best(const PauliOperator &p);
    size_t best_weight(const PauliOperator &p);

    /// Class signature: 2k bits of symplectic pairing against the basis.
    std::vector<uint8_t> class_of(const PauliOperator &p) const;

    /// Cached representative of a class, or nullptr.
    const PauliOperator *find_class(const std::vector<uint8_t> &sig) const;

    const ThreeRingCode &code() const { return code_; }
    const SymplecticBasis &basis() const { return basis_; }

  private:
    PauliOperator descend(PauliOperator p);
    void offer(const PauliOperator &p);

    const ThreeRingCode &code_;
    SymplecticBasis basis_;
    std::vector<PauliOperator> stab_gens_;
    std::vector<PauliOperator> stab_pool_;  // low-weight stabilizers
    std::map<std::vector<uint8_t>, PauliOperator> best_;
    Rng rng_;
    friend class AccessibleEnumerator;
};

struct TabuResult {
    SymplecticBasis basis;
    size_t max_weight = 0;
    std::vector<size_t> weights;  // per element, X then Z
};

/// Tabu search over (u,v)-neighboring bases; with `preserve_self_similarity`
/// the quadruple rule {Xu, Xv, Zu, Zv} -> products of the other three is
/// used instead. Weights are stabilizer-optimized through a shared cache.
TabuResult tabu_reduce_basis(const SymplecticBasis &start,
                             const ThreeRingCode &code, size_t steps,
                             size_t tabu_tenure = 50,
                             bool preserve_self_similarity = false,
                             uint64_t seed = 23, size_t harvest_iters = 200);

/// Accessible set: all logical Paulis of logical weight <= w with their
/// minimum-weight physical representatives.
struct AccessibleSet {
    size_t logical_width = 0;
    size_t block_width = 0;  // max representative weight
    size_t count = 0;        // |Omega_w|
    // Representatives keyed by the (a, b) exponent vectors (a_i: X part,
    // b_i: Z part of the logical Pauli).
    std::map<std::vector<uint8_t>, PauliOperator> table;
};
AccessibleSet accessible_set(const ThreeRingCode &code,
                             const SymplecticBasis &basis, size_t w,
                             size_t harvest_iters = 400, uint64_t seed = 31,
                             size_t polish_rounds = 3);

/// Logical symplectic action diag(G, (G^-1)^T) of the (0, i, j) cyclic
/// gate. Throws when the shift does not preserve the stabilizers.
struct CyclicGateAction {
    BitMatrix g;
    BitMatrix full;  // 2k x 2k block-diagonal action
    size_t order = 0;
};
CyclicGateAction cyclic_gate_action(const ThreeRingCode &code,
                                    const SymplecticBasis &basis, int shift_i,
                                    int shift_j);

}  // namespace wck

#endif
