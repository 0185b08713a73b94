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

#include "catrep/chain.hpp"

#include <cmath>
#include <functional>
#include <sstream>

#include "catrep/error.hpp"
#include "catrep/numeric.hpp"

namespace catrep {

using cplx = std::complex<double>;

void SegmentParams::validate() const {
    std::ostringstream msg;
    if (!(l0_km > 0.0) || !(l_att_km > 0.0)) {
        msg << "segment length and attenuation length must be positive (L0=" << l0_km << ", L_att=" << l_att_km
            << ")";
        throw UsageError(msg.str());
    }
    if (!(eta_local > 0.0 && eta_local <= 1.0)) {
        msg << "local transmission must lie in (0, 1], got " << eta_local;
        throw UsageError(msg.str());
    }
    if (!(local_applications >= 0.0)) {
        throw UsageError("local loss applications must be non-negative");
    }
}

double SegmentParams::eta_segment() const {
    validate();
    return std::pow(eta_local, local_applications) * std::exp(-l0_km / l_att_km);
}

ChainParams ChainParams::from_spacing(double l_tot_km, double l0_km, double t0_s) {
    std::ostringstream msg;
    if (!(l_tot_km > 0.0) || !(l0_km > 0.0)) {
        msg << "distances must be positive (L_tot=" << l_tot_km << ", L0=" << l0_km << ")";
        throw UsageError(msg.str());
    }
    if (!(t0_s > 0.0)) {
        throw UsageError("repetition time must be positive");
    }
    double ratio = l_tot_km / l0_km;
    long n = std::lround(ratio);
    if (n < 1 || std::abs(static_cast<double>(n) * l0_km - l_tot_km) > 1e-9 * l_tot_km) {
        msg << "L0=" << l0_km << " km does not divide L_tot=" << l_tot_km << " km into whole segments";
        throw UsageError(msg.str());
    }
    return ChainParams{l_tot_km, n, t0_s};
}

Eigen::Vector4cd bell_vector(BellKind kind, int sign, double theta) {
    const double h = 1.0 / std::sqrt(2.0);
    Eigen::Vector4cd v = Eigen::Vector4cd::Zero();
    cplx rel = static_cast<double>(sign) * std::polar(1.0, -theta);
    if (kind == BellKind::phi) {
        v(0) = h;
        v(3) = h * rel;
    } else {
        v(1) = h;
        v(2) = h * rel;
    }
    return v;
}

Eigen::Vector4cd bell_vector(BellOutcome outcome) {
    switch (outcome) {
        case BellOutcome::phi_plus:
            return bell_vector(BellKind::phi, +1, 0.0);
        case BellOutcome::phi_minus:
            return bell_vector(BellKind::phi, -1, 0.0);
        case BellOutcome::psi_plus:
            return bell_vector(BellKind::psi, +1, 0.0);
        case BellOutcome::psi_minus:
            return bell_vector(BellKind::psi, -1, 0.0);
    }
    return Eigen::Vector4cd::Zero();
}

Eigen::Matrix4cd PauliFrameState::density() const {
    Eigen::Vector4cd p = bell_vector(kind, +1, phase_label);
    Eigen::Vector4cd m = bell_vector(kind, -1, phase_label);
    return plus_weight * p * p.adjoint() + (1.0 - plus_weight) * m * m.adjoint();
}

PauliFrameState swap_pair(const PauliFrameState &a, const PauliFrameState &b, BellOutcome outcome) {
    int a_bit = a.kind == BellKind::psi ? 1 : 0;
    int b_bit = b.kind == BellKind::psi ? 1 : 0;
    int o_bit = (outcome == BellOutcome::psi_plus || outcome == BellOutcome::psi_minus) ? 1 : 0;
    bool o_minus = outcome == BellOutcome::phi_minus || outcome == BellOutcome::psi_minus;
    PauliFrameState out;
    out.kind = ((a_bit ^ b_bit ^ o_bit) == 1) ? BellKind::psi : BellKind::phi;
    out.plus_weight = 0.5 + 0.5 * (2.0 * a.plus_weight - 1.0) * (2.0 * b.plus_weight - 1.0);
    double theta = a.phase_label + ((a_bit ^ o_bit) == 1 ? -b.phase_label : b.phase_label);
    if (o_minus) {
        theta += M_PI;
    }
    out.phase_label = theta - 2.0 * M_PI * std::floor(theta / (2.0 * M_PI));
    return out;
}

double chain_fidelity(double f0, long n_e) {
    if (n_e < 1) {
        throw UsageError("number of segments must be at least 1");
    }
    return 0.5 + 0.5 * std::pow(2.0 * f0 - 1.0, static_cast<double>(n_e));
}

double chain_error_from_uncorrectable(double u, long n_e) {
    if (n_e < 1) {
        throw UsageError("number of segments must be at least 1");
    }
    double x = 1.0 - 2.0 * u;
    if (x > 0.0) {
        return -0.5 * std::expm1(static_cast<double>(n_e) * std::log1p(-2.0 * u));
    }
    if (x == 0.0) {
        return 0.5;
    }
    double mag = std::exp(static_cast<double>(n_e) * std::log(-x));
    return 0.5 * (1.0 - (n_e % 2 == 0 ? mag : -mag));
}

double chain_fidelity_from_uncorrectable(double u, long n_e) {
    return 1.0 - chain_error_from_uncorrectable(u, n_e);
}

std::vector<ChainTerm> chain_distribution(const LossWeights &weights, int n_e, std::size_t max_terms) {
    if (n_e < 1) {
        throw UsageError("number of segments must be at least 1");
    }
    const int order = weights.order();
    // Number of compositions: C(n_e + M - 1, M - 1).
    double log_count = log_binomial(n_e + order - 1, order - 1);
    if (log_count > std::log(static_cast<double>(max_terms))) {
        std::ostringstream msg;
        msg << "enumerating n_e=" << n_e << " over " << order << " classes exceeds the " << max_terms
            << "-term guard";
        throw UsageError(msg.str());
    }
    std::vector<double> mass(order);
    std::vector<double> ratio(order);
    for (int i = 0; i < order; ++i) {
        mass[i] = weights.p[i] + weights.p[i + order];
        ratio[i] = mass[i] > 0.0 ? (weights.p[i] - weights.p[i + order]) / mass[i] : 1.0;
    }
    std::vector<ChainTerm> out;
    std::vector<int> counts(order, 0);
    std::function<void(int, int)> rec = [&](int i, int left) {
        if (i == order - 1) {
            counts[i] = left;
            double log_p = log_factorial(n_e);
            double prod = 1.0;
            for (int j = 0; j < order; ++j) {
                log_p -= log_factorial(counts[j]);
                if (counts[j] > 0) {
                    log_p += counts[j] * (mass[j] > 0.0 ? std::log(mass[j]) : kNegInf);
                    prod *= std::pow(ratio[j], counts[j]);
                }
            }
            out.push_back(ChainTerm{counts, std::exp(log_p), 0.5 + 0.5 * prod});
            return;
        }
        for (int t = left; t >= 0; --t) {
            counts[i] = t;
            rec(i + 1, left - t);
        }
    };
    rec(0, n_e);
    return out;
}

double log_chain_success(double p0, long n_e) {
    if (!(p0 >= 0.0 && p0 <= 1.0)) {
        throw UsageError("success probability must lie in [0, 1]");
    }
    if (n_e < 1) {
        throw UsageError("number of segments must be at least 1");
    }
    return p0 > 0.0 ? static_cast<double>(n_e) * std::log(p0) : kNegInf;
}

double chain_success(double p0, long n_e) {
    return std::exp(log_chain_success(p0, n_e));
}

KeyRate secret_key_rate_from_error(double error, double p_tot, double t0_s) {
    if (!(t0_s > 0.0)) {
        throw UsageError("repetition time must be positive");
    }
    KeyRate r;
    r.key_fraction = key_fraction_from_error(error);
    r.per_channel_use = p_tot * r.key_fraction;
    r.per_second = r.per_channel_use / t0_s;
    return r;
}

KeyRate secret_key_rate(double f_tot, double p_tot, double t0_s) {
    return secret_key_rate_from_error(1.0 - f_tot, p_tot, t0_s);
}

KeyRate secret_key_rate_exact(const std::vector<ChainTerm> &terms, double p_tot, double t0_s) {
    if (!(t0_s > 0.0)) {
        throw UsageError("repetition time must be positive");
    }
    KeyRate r;
    for (const auto &t : terms) {
        r.key_fraction += t.probability * key_fraction_from_error(1.0 - t.fidelity);
    }
    r.per_channel_use = p_tot * r.key_fraction;
    r.per_second = r.per_channel_use / t0_s;
    return r;
}

PlobBound plob_bound(double l_tot_km, double l_att_km) {
    if (!(l_tot_km > 0.0) || !(l_att_km > 0.0)) {
        throw UsageError("distances must be positive");
    }
    PlobBound b;
    b.eta_tot = std::exp(-l_tot_km / l_att_km);
    // log1p keeps full precision where 1 - eta_tot rounds to one.
    b.bits_per_use = -std::log1p(-b.eta_tot) / std::log(2.0);
    return b;
}

}  // namespace catrep
