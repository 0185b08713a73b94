// Copyright 2026 The catrep Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CATREP_PROTOCOL_ORACLE_HPP
#define CATREP_PROTOCOL_ORACLE_HPP

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "catrep/catcode.hpp"
#include "catrep/fockspace.hpp"

namespace catrep {

/// Which rotation angles the syndrome cascade uses: pi / 2^(k-1) directly,
/// or pi minus that angle after the first step.
enum class SyndromeVariant { direct, pi_minus_phi };

/// One measurement record of the preparation cascade. The light left in a
/// branch occupies photon numbers n = residue (mod M); the all-"+" branch
/// (residue 0) is the canonical codeword.
struct PreparationBranch {
    std::vector<int> outcomes;  // 0 = "+", 1 = "-" at each step
    int residue = 0;
    double probability = 0;
    /// Fidelity of the branch's final spin-mode state with
    /// (|up>c0 + |down>c1)/sqrt 2 for its own relabeled codeword pair
    /// c0 = normalized branch light, c1 = R(pi/M) c0.
    double relabel_fidelity = 0;
    HybridDensity state;  // spin A + mode
};

struct PreparedState {
    /// Canonical output (|up>|0> + |down>|1>)/sqrt 2. Sign branches are
    /// folded onto it by relabeling their codeword pair.
    HybridDensity state;
    std::vector<PreparationBranch> branches;
};

/// Runs the m-step cascade of ancilla spins with rotations pi, pi/2, ...,
/// measuring each ancilla in the basis adapted to the earlier outcomes,
/// then entangles spin A with rotation pi / M.
PreparedState prepare_code_state(int m, const FockVector &primitive);

/// Loss on the mode only.
HybridDensity transmit(const HybridDensity &s, double eta, const TruncationPolicy &policy = {});

struct SyndromeBranch {
    int remainder = 0;  // loss count mod M
    double probability = 0;
    std::vector<int> outcomes;
    HybridDensity state;  // syndrome spins removed
};

/// (|up> a^q|0> + |down> a^q|1>) / norm for the cat code: a definite
/// number of lost photons on the prepared state.
HybridDensity injected_loss_state(const CatCodeSpec &spec, int q, const TruncationPolicy &policy = {});

/// Adds one syndrome spin per step, applies the controlled rotation, and
/// measures it in the basis fixed by the remainder known so far.
std::vector<SyndromeBranch> syndrome_cascade(const HybridDensity &s, int m,
                                             SyndromeVariant variant = SyndromeVariant::direct);

struct EntangledState {
    HybridDensity state;  // spins (B, A) + mode
    int known_q = 0;
    double theta = 0;  // known_q * pi / M
};

/// Adds spin B in |+> ahead of the existing spins and applies the
/// controlled rotation pi / M.
EntangledState create_entanglement(const HybridDensity &s, int m, int known_q);

struct UnitBranch {
    int remainder = 0;
    double probability = 0;  // syndrome probability, p_r + p_{r+M}
    Eigen::Matrix4cd phi_state;  // (B, A) state after projecting on the "0" dual vector
    double phi_fidelity = 0;     // with phi+ at theta = r pi / M
    Eigen::Matrix4cd psi_state;  // after the "1" dual vector
    double psi_fidelity = 0;     // with psi+ at theta = r pi / M
    double usd_probability = 0;  // 1 - |<e0|e1>| from the Fock states
};

struct UnitReport {
    double f0 = 0;
    /// p_q for q < 2M reconstructed from the protocol: p_r = P(r) F_r,
    /// p_{r+M} = P(r) (1 - F_r).
    std::vector<double> weights;
    /// p_q summed directly over loss Kraus terms k = q (mod 2M).
    std::vector<double> kraus_weights;
    std::vector<UnitBranch> branches;
    std::vector<PreparationBranch> preparation;
};

/// prepare -> transmit -> syndrome -> entangle -> ideal USD for one unit.
UnitReport simulate_unit(const CatCodeSpec &spec, const TruncationPolicy &policy = {},
                         SyndromeVariant variant = SyndromeVariant::direct);

/// Readable tree of the preparation and syndrome branches.
std::string dump_branch_tree(const UnitReport &report);

struct OrderEquivalence {
    double max_trace_distance = 0;
    double max_probability_gap = 0;
    int compared_branches = 0;
};

/// Two units joined at one middle station. Compares the end-spin states
/// when the middle Bell measurement happens before transmission versus at
/// the very end, for every Bell outcome and syndrome pair, conditioned on
/// both USD projections returning "0".
OrderEquivalence bell_order_equivalence(int m, double alpha, double eta, const TruncationPolicy &policy = {});

/// Lossless check of the Bell-first branch: after the middle station
/// projects on (|up up> + |down down>)/sqrt 2 and both ends entangle, the
/// state of (end spins, modes) is compared with
/// 1/2 (|uu> + |dd>)(|00> + |11>) + 1/2 (|ud> + |du>)(|01> + |10>).
/// Returns the fidelity.
double bell_first_branch_fidelity(int m, double alpha, const TruncationPolicy &policy = {});

}  // namespace catrep

#endif
