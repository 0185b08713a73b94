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

#include "catrep/usd.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "catrep/error.hpp"

namespace catrep {

using cplx = std::complex<double>;

const char *to_string(UsdMode mode) {
    switch (mode) {
        case UsdMode::per_q:
            return "per_q";
        case UsdMode::weighted_average:
            return "weighted_average";
        case UsdMode::code_space:
            return "code_space";
        case UsdMode::worst_case:
            return "worst_case";
    }
    return "?";
}

UsdMode usd_mode_from_string(const std::string &name) {
    if (name == "per_q") {
        return UsdMode::per_q;
    }
    if (name == "weighted_average") {
        return UsdMode::weighted_average;
    }
    if (name == "code_space" || name == "q0") {
        return UsdMode::code_space;
    }
    if (name == "worst_case") {
        return UsdMode::worst_case;
    }
    throw UsageError("unknown USD mode '" + name + "' (expected per_q, weighted_average, code_space, worst_case)");
}

const char *to_string(ProbeVariant v) {
    return v == ProbeVariant::cat ? "cat" : "coherent";
}

ProbeVariant probe_variant_from_string(const std::string &name) {
    if (name == "cat") {
        return ProbeVariant::cat;
    }
    if (name == "coherent") {
        return ProbeVariant::coherent;
    }
    throw UsageError("unknown probe variant '" + name + "' (expected cat or coherent)");
}

double optimal_usd_probability(const CatCodeSpec &spec, int q) {
    if (q < 0 || q >= spec.order()) {
        std::ostringstream msg;
        msg << "error class q=" << q << " outside [0, " << spec.order() << ")";
        throw UsageError(msg.str());
    }
    return 1.0 - std::abs(error_space_overlap(spec, q));
}

double optimal_usd_probability(const CatCodeSpec &spec, UsdMode mode, int q) {
    switch (mode) {
        case UsdMode::per_q:
            return optimal_usd_probability(spec, q);
        case UsdMode::code_space:
            return optimal_usd_probability(spec, 0);
        case UsdMode::worst_case: {
            double worst = 1.0;
            for (int r = 0; r < spec.order(); ++r) {
                worst = std::min(worst, optimal_usd_probability(spec, r));
            }
            return worst;
        }
        case UsdMode::weighted_average: {
            LossWeights w = loss_weights(spec);
            int order = spec.order();
            double total = 0.0;
            double mass = 0.0;
            for (int r = 0; r < order; ++r) {
                total += (w.p[r] + w.p[r + order]) * optimal_usd_probability(spec, r);
                mass += w.p[r] + w.p[r + order];
            }
            // The class masses sum to one only up to rounding.
            return std::clamp(total / mass, 0.0, 1.0);
        }
    }
    throw UsageError("unhandled USD mode");
}

void CoherentSuperposition::add(cplx coeff, std::vector<cplx> amps) {
    if (static_cast<int>(amps.size()) != n_modes) {
        throw UsageError("coherent term has the wrong number of modes");
    }
    terms.push_back(CoherentTerm{coeff, std::move(amps)});
}

double CoherentSuperposition::norm2() const {
    return overlap(*this, *this).real();
}

CoherentSuperposition CoherentSuperposition::normalized() const {
    double n2 = norm2();
    if (!(n2 > 0.0)) {
        throw NumericalError("cannot normalize a zero-norm coherent superposition");
    }
    CoherentSuperposition out = *this;
    for (auto &t : out.terms) {
        t.coeff /= std::sqrt(n2);
    }
    return out;
}

CoherentSuperposition CoherentSuperposition::tensor(const CoherentSuperposition &other) const {
    CoherentSuperposition out(n_modes + other.n_modes);
    for (const auto &a : terms) {
        for (const auto &b : other.terms) {
            std::vector<cplx> amps = a.amps;
            amps.insert(amps.end(), b.amps.begin(), b.amps.end());
            out.add(a.coeff * b.coeff, std::move(amps));
        }
    }
    return out;
}

namespace {

cplx gaussian_overlap(cplx b, cplx g) {
    return std::exp(-0.5 * std::norm(b) - 0.5 * std::norm(g) + std::conj(b) * g);
}

}  // namespace

cplx overlap(const CoherentSuperposition &a, const CoherentSuperposition &b) {
    if (a.n_modes != b.n_modes) {
        throw UsageError("overlap of superpositions with different mode counts");
    }
    cplx total = 0.0;
    for (const auto &s : a.terms) {
        for (const auto &t : b.terms) {
            cplx v = std::conj(s.coeff) * t.coeff;
            for (int j = 0; j < a.n_modes; ++j) {
                v *= gaussian_overlap(s.amps[j], t.amps[j]);
            }
            total += v;
        }
    }
    return total;
}

CoherentSuperposition beam_splitter(const CoherentSuperposition &s, int i, int j) {
    if (i == j || i < 0 || j < 0 || i >= s.n_modes || j >= s.n_modes) {
        throw UsageError("beam splitter needs two distinct valid ports");
    }
    const double h = 1.0 / std::sqrt(2.0);
    CoherentSuperposition out = s;
    for (auto &t : out.terms) {
        cplx b = t.amps[i];
        cplx c = t.amps[j];
        t.amps[i] = h * (b + c);
        t.amps[j] = h * (b - c);
    }
    return out;
}

namespace {

cplx complex_expm1(cplx z) {
    double half = std::sin(0.5 * z.imag());
    return {std::expm1(z.real()) * std::cos(z.imag()) - 2.0 * half * half, std::exp(z.real()) * std::sin(z.imag())};
}

}  // namespace

double click_probability(const CoherentSuperposition &s, const std::vector<int> &must_click) {
    for (int p : must_click) {
        if (p < 0 || p >= s.n_modes) {
            throw UsageError("click port out of range");
        }
    }
    const double n2 = s.norm2();
    if (!(n2 > 0.0)) {
        throw NumericalError("click probability of a zero-norm state");
    }
    // The click projector 1 - |0><0| has coherent matrix elements
    // exp(-(|a|^2 + |b|^2) / 2) expm1(conj(a) b), which stay exact when a
    // component leaves the port empty. Inclusion-exclusion over vacuum
    // projections would cancel catastrophically at small amplitude.
    std::vector<bool> click(s.n_modes, false);
    for (int p : must_click) {
        click[p] = true;
    }
    double total = 0.0;
    for (const auto &a : s.terms) {
        for (const auto &t : s.terms) {
            cplx w = std::conj(a.coeff) * t.coeff;
            for (int j = 0; j < s.n_modes; ++j) {
                if (click[j]) {
                    w *= std::exp(-0.5 * std::norm(a.amps[j]) - 0.5 * std::norm(t.amps[j])) *
                         complex_expm1(std::conj(a.amps[j]) * t.amps[j]);
                } else {
                    w *= gaussian_overlap(a.amps[j], t.amps[j]);
                }
            }
            total += w.real();
        }
    }
    total /= n2;
    return std::clamp(total, 0.0, 1.0);
}

CoherentSuperposition two_component_cat(cplx beta, int logical, int q) {
    if (logical != 0 && logical != 1) {
        throw UsageError("logical value must be 0 or 1");
    }
    if (q < 0) {
        throw UsageError("loss count must be non-negative");
    }
    cplx base = logical == 0 ? beta : cplx(0.0, 1.0) * beta;
    CoherentSuperposition s(1);
    s.add(std::pow(base, q), {base});
    s.add(std::pow(-base, q), {-base});
    return s.normalized();
}

LinearOpticsReport linear_optics_usd(double alpha, double eta, int q, ProbeVariant probes) {
    if (!(alpha > 0.0)) {
        throw UsageError("amplitude alpha must be positive");
    }
    if (!(eta > 0.0 && eta <= 1.0)) {
        throw UsageError("transmission eta must lie in (0, 1]");
    }
    const double beta = std::sqrt(eta) * alpha;
    const double h = 1.0 / std::sqrt(2.0);
    CoherentSuperposition vacuum(1);
    vacuum.add(1.0, {0.0});
    CoherentSuperposition probe0(1);
    CoherentSuperposition probe1(1);
    if (probes == ProbeVariant::cat) {
        probe0 = two_component_cat(h * beta, 0);
        probe1 = two_component_cat(h * beta, 1);
    } else {
        probe0.add(1.0, {h * beta});
        probe1.add(1.0, {cplx(0.0, h * beta)});
    }
    // Modes: 0 input, 1 vacuum, 2 probe0, 3 probe1. After the splitters the
    // outputs are A = 0, B = 2, C = 1, D = 3.
    auto run = [&](int logical) {
        CoherentSuperposition s = two_component_cat(beta, logical, q).tensor(vacuum).tensor(probe0).tensor(probe1);
        s = beam_splitter(s, 0, 1);
        s = beam_splitter(s, 0, 2);
        s = beam_splitter(s, 1, 3);
        return s;
    };
    CoherentSuperposition out0 = run(0);
    CoherentSuperposition out1 = run(1);
    LinearOpticsReport r;
    r.p_cd_given_0 = click_probability(out0, {1, 3});
    r.p_ab_given_1 = click_probability(out1, {0, 2});
    r.p_cd_given_1 = click_probability(out1, {1, 3});
    r.p_ab_given_0 = click_probability(out0, {0, 2});
    r.success = 0.5 * (r.p_cd_given_0 + r.p_ab_given_1);
    auto posterior = [](double wrong, double right) { return wrong + right > 0.0 ? wrong / (wrong + right) : 0.0; };
    r.posterior_error_cd = posterior(r.p_cd_given_1, r.p_cd_given_0);
    r.posterior_error_ab = posterior(r.p_ab_given_0, r.p_ab_given_1);
    return r;
}

double linear_optics_usd_probability(double alpha, double eta, int q, ProbeVariant probes) {
    return linear_optics_usd(alpha, eta, q, probes).success;
}

double linear_optics_usd_closed_form(double alpha) {
    double a2 = alpha * alpha;
    return 1.0 - 1.0 / std::cosh(0.5 * a2) + (1.0 - std::cos(0.5 * a2)) / std::cosh(a2);
}

}  // namespace catrep
