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

#ifndef CATREP_USD_HPP
#define CATREP_USD_HPP

#include <complex>
#include <string>
#include <vector>

#include "catrep/catcode.hpp"

namespace catrep {

/// How a single per-unit USD success probability is formed from the
/// per-class values 1 - |<0~q|1~q>|.
enum class UsdMode {
    per_q,             // the class given by q
    weighted_average,  // sum_q (p_q + p_{q+M}) (1 - |overlap_q|)
    code_space,        // q = 0
    worst_case,        // min over q < M
};

const char *to_string(UsdMode mode);
UsdMode usd_mode_from_string(const std::string &name);

/// 1 - |<0~q|1~q>| for one error class q < M.
double optimal_usd_probability(const CatCodeSpec &spec, int q);
double optimal_usd_probability(const CatCodeSpec &spec, UsdMode mode, int q = 0);

/// A multimode state written as a finite sum of coefficient-weighted
/// products of coherent states. Not normalized unless made so.
struct CoherentTerm {
    std::complex<double> coeff;
    std::vector<std::complex<double>> amps;
};

struct CoherentSuperposition {
    int n_modes = 0;
    std::vector<CoherentTerm> terms;

    explicit CoherentSuperposition(int modes = 0) : n_modes(modes) {
    }
    void add(std::complex<double> coeff, std::vector<std::complex<double>> amps);
    double norm2() const;
    CoherentSuperposition normalized() const;
    /// Product state: this on the first modes, other on the rest.
    CoherentSuperposition tensor(const CoherentSuperposition &other) const;
};

/// <a|b> from pairwise Gaussian overlaps.
std::complex<double> overlap(const CoherentSuperposition &a, const CoherentSuperposition &b);

/// 50:50 mixing of ports (i, j): (b, c) -> ((b + c)/sqrt 2, (b - c)/sqrt 2).
CoherentSuperposition beam_splitter(const CoherentSuperposition &s, int i, int j);

/// Probability that every listed port registers at least one photon,
/// by inclusion-exclusion over vacuum projections. Other ports are ignored.
double click_probability(const CoherentSuperposition &s, const std::vector<int> &must_click);

/// Normalized a^q applied to the two-component cat of amplitude beta:
/// logical 0 is built on {beta, -beta}, logical 1 on {i beta, -i beta}.
CoherentSuperposition two_component_cat(std::complex<double> beta, int logical, int q = 0);

enum class ProbeVariant {
    cat,       // the two codewords at amplitude beta / sqrt 2
    coherent,  // the simplified probes |beta / sqrt 2> and |i beta / sqrt 2>
};
const char *to_string(ProbeVariant v);
ProbeVariant probe_variant_from_string(const std::string &name);

/// Outcome table of the three-beam-splitter discriminator for the 1-loss
/// code. Ports: A, B from the first probe splitter, C, D from the second.
struct LinearOpticsReport {
    double success = 0;
    double p_cd_given_0 = 0;  // declares "0"
    double p_ab_given_1 = 0;  // declares "1"
    double p_cd_given_1 = 0;  // wrong-hypothesis weight of the "0" pattern
    double p_ab_given_0 = 0;  // wrong-hypothesis weight of the "1" pattern
    double posterior_error_cd = 0;
    double posterior_error_ab = 0;
};

LinearOpticsReport linear_optics_usd(double alpha, double eta, int q, ProbeVariant probes = ProbeVariant::cat);
double linear_optics_usd_probability(double alpha, double eta, int q, ProbeVariant probes = ProbeVariant::cat);

/// Closed form of the cat-probe discriminator at q = 0, eta = 1:
/// 1 - sech(a^2 / 2) + (1 - cos(a^2 / 2)) / cosh(a^2).
double linear_optics_usd_closed_form(double alpha);

}  // namespace catrep

#endif
