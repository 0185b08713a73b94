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

#ifndef CATREP_CHAIN_HPP
#define CATREP_CHAIN_HPP

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "catrep/catcode.hpp"

namespace catrep {

/// Fiber attenuation length in km. The value reproduces a total
/// transmission of about 1.82e-20 over 1000 km, i.e. 1000 / ln(1/1.82e-20).
inline constexpr double kDefaultAttenuationLengthKm = 22.0;
inline constexpr double kDefaultRepetitionTimeS = 1e-6;

struct SegmentParams {
    double l0_km = 1.0;
    double l_att_km = kDefaultAttenuationLengthKm;
    double eta_local = 1.0;
    /// Times the local loss acts per elementary unit.
    double local_applications = 1.0;

    void validate() const;
    /// eta_local^applications * exp(-L0 / L_att).
    double eta_segment() const;
};

struct ChainParams {
    double l_tot_km = 1000.0;
    long n_e = 1;
    double t0_s = kDefaultRepetitionTimeS;

    /// n_e = L_tot / L0, rejecting spacings that do not divide the total
    /// length to 1e-9 relative.
    static ChainParams from_spacing(double l_tot_km, double l0_km, double t0_s = kDefaultRepetitionTimeS);
};

enum class BellKind { phi = 0, psi = 1 };

/// Bell-measurement result labels.
enum class BellOutcome { phi_plus, phi_minus, psi_plus, psi_minus };

/// Generalized Bell vector on (B, A), |up> = 0:
/// phi: (|00> + s e^{-i theta}|11>) / sqrt 2, psi: (|01> + s e^{-i theta}|10>) / sqrt 2.
Eigen::Vector4cd bell_vector(BellKind kind, int sign, double theta);
Eigen::Vector4cd bell_vector(BellOutcome outcome);

/// Pair state plus_weight |K+_theta><K+_theta| + (1 - plus_weight) |K-_theta><K-_theta|.
struct PauliFrameState {
    BellKind kind = BellKind::phi;
    double plus_weight = 1.0;
    double phase_label = 0.0;  // theta

    Eigen::Matrix4cd density() const;
};

/// Swaps pairs (1,2) and (3,4) by a Bell measurement on (2,3). The weight
/// follows 1/2 + 1/2 (2a - 1)(2b - 1); the kind is the parity of the three
/// kinds; the phase is theta_a +- theta_b, with the minus sign when exactly
/// one of (a, outcome) is psi-type.
PauliFrameState swap_pair(const PauliFrameState &a, const PauliFrameState &b, BellOutcome outcome);

/// 1/2 + 1/2 (2 F0 - 1)^n_e.
double chain_fidelity(double f0, long n_e);
/// Same, from the uncorrectable mass u = 1 - F0, accurate for tiny u.
double chain_fidelity_from_uncorrectable(double u, long n_e);
/// 1 - F_tot from u without cancellation.
double chain_error_from_uncorrectable(double u, long n_e);

struct ChainTerm {
    std::vector<int> counts;  // t_i for each class i < M
    double probability = 0;
    double fidelity = 0;
};

/// Every composition {t_i} of n_e into M classes with its multinomial
/// probability and the fidelity of the resulting pair.
std::vector<ChainTerm> chain_distribution(const LossWeights &weights, int n_e, std::size_t max_terms = 1000000);

/// P0^n_e.
double chain_success(double p0, long n_e);
/// n_e log P0.
double log_chain_success(double p0, long n_e);

enum class KeyRateMode { lower_bound, exact_average };

struct KeyRate {
    double key_fraction = 0;
    double per_channel_use = 0;
    double per_second = 0;
};

/// P_tot max(0, 1 - h(F_tot)) per channel use, over t0 per second.
KeyRate secret_key_rate(double f_tot, double p_tot, double t0_s);
/// Same with the error 1 - F_tot given directly.
KeyRate secret_key_rate_from_error(double error, double p_tot, double t0_s);
/// Branch-averaged fraction sum p_t max(0, 1 - h(F_t)).
KeyRate secret_key_rate_exact(const std::vector<ChainTerm> &terms, double p_tot, double t0_s);

struct PlobBound {
    double eta_tot = 0;
    double bits_per_use = 0;
};
/// -log2(1 - eta_tot), eta_tot = exp(-L_tot / L_att).
PlobBound plob_bound(double l_tot_km, double l_att_km);

}  // namespace catrep

#endif
