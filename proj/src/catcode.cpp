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

#include "catrep/catcode.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "catrep/error.hpp"
#include "catrep/numeric.hpp"

namespace catrep {

void CatCodeSpec::validate() const {
    std::ostringstream msg;
    if (m < 1 || m > 12) {
        msg << "code depth m must be in [1, 12], got " << m;
        throw UsageError(msg.str());
    }
    if (!(alpha > 0.0) || !std::isfinite(alpha)) {
        msg << "amplitude alpha must be positive and finite, got " << alpha;
        throw UsageError(msg.str());
    }
    if (!(eta > 0.0 && eta <= 1.0)) {
        msg << "transmission eta must lie in (0, 1], got " << eta;
        throw UsageError(msg.str());
    }
}

FockVector codeword(int m, int logical, const FockVector &primitive) {
    if (m < 1) {
        throw UsageError("code depth m must be at least 1");
    }
    if (logical != 0 && logical != 1) {
        throw UsageError("logical value must be 0 or 1");
    }
    const int order = 1 << m;
    // sum_k exp(2 pi i k n / M) = M [n = 0 mod M]; the odd-angle sum picks up
    // an extra exp(i pi n / M).
    CVector a = CVector::Zero(primitive.dim());
    double odd_mass = 0.0;
    for (int n = 0; n < primitive.dim(); n += order) {
        a(n) = primitive.amps(n);
        if ((n / order) % 2 == 1) {
            odd_mass += std::norm(a(n));
        }
        if (logical == 1) {
            a(n) *= std::polar(1.0, M_PI * n / order);
        }
    }
    double total = a.squaredNorm();
    if (!(total > 0.0)) {
        throw NumericalError("primitive has no weight on the code-space photon numbers");
    }
    // ||c0 - c1||^2 = 4 * odd_mass / total for the normalized pair.
    if (4.0 * odd_mass / total < 1e-24) {
        throw UsageError("degenerate primitive: logical codewords coincide");
    }
    return FockVector(a / std::sqrt(total));
}

FockVector codeword(const CatCodeSpec &spec, int logical, const TruncationPolicy &policy) {
    spec.validate();
    return codeword(spec.m, logical, coherent_state(spec.alpha, policy));
}

FockVector damped_codeword(const CatCodeSpec &spec, int logical, const TruncationPolicy &policy) {
    spec.validate();
    int n_max = policy.n_max(spec.alpha);
    return codeword(spec.m, logical, coherent_state(std::sqrt(spec.eta) * spec.alpha, n_max, policy));
}

ErrorSpaceState error_space_state(const CatCodeSpec &spec, int logical, int q, const TruncationPolicy &policy) {
    if (q < 0) {
        throw UsageError("loss count must be non-negative");
    }
    FockVector v = annihilate(damped_codeword(spec, logical, policy), q);
    double n2 = v.norm2();
    if (!(n2 > 1e-280)) {
        std::ostringstream msg;
        msg << "error-space state for q=" << q << " has zero norm at alpha=" << spec.alpha;
        throw NumericalError(msg.str());
    }
    return ErrorSpaceState{FockVector(v.amps / std::sqrt(n2)), n2};
}

LossWeights loss_weights(const CatCodeSpec &spec) {
    spec.validate();
    const int order = spec.order();
    const int classes = 2 * order;
    LossWeights out;
    out.p.assign(classes, 0.0);
    const double x = spec.alpha * spec.alpha * (1.0 - spec.eta);
    const double b2 = spec.eta * spec.alpha * spec.alpha;
    if (!(x > 0.0)) {
        out.p[0] = 1.0;
        return out;
    }
    const double log_x = std::log(x);
    const double log_b2 = std::log(b2);
    // Unnormalized class weight: [sum_j x^(2Mj+q) / (2Mj+q)!] times the
    // damped-state mass left on photon numbers n = -q mod M.
    std::vector<double> log_w(classes);
    for (int q = 0; q < classes; ++q) {
        double loss = log_series([&](long k) { return k * log_x - log_factorial(k); }, q, classes, x);
        int residue = (order - q % order) % order;
        double kept = log_series([&](long n) { return n * log_b2 - log_factorial(n); }, residue, order, b2);
        log_w[q] = loss + kept;
    }
    LogSum all;
    LogSum high;
    for (int q = 0; q < classes; ++q) {
        all.add(log_w[q]);
        if (q >= order) {
            high.add(log_w[q]);
        }
    }
    for (int q = 0; q < classes; ++q) {
        out.p[q] = std::exp(log_w[q] - all.value());
    }
    out.uncorrectable = std::exp(high.value() - all.value());
    return out;
}

double segment_fidelity(const CatCodeSpec &spec) {
    LossWeights w = loss_weights(spec);
    double f = 0.0;
    for (int q = 0; q < spec.order(); ++q) {
        f += w.p[q];
    }
    return f;
}

double error_space_overlap(const CatCodeSpec &spec, int q) {
    spec.validate();
    const int order = spec.order();
    if (q < 0) {
        throw UsageError("loss count must be non-negative");
    }
    const double b2 = spec.eta * spec.alpha * spec.alpha;
    const double log_b2 = std::log(b2);
    // <a^q 0|a^q 1> ~ sum_l (-1)^l b2^(M l) / (M l - q)!, normalized by the
    // same sum without signs.
    std::vector<double> terms;
    long first = (q + order - 1) / order;
    double peak = (b2 + q) / order;
    double best = kNegInf;
    for (long l = first; l < first + 200000; ++l) {
        double t = order * l * log_b2 - log_factorial(order * l - q);
        terms.push_back(t);
        best = std::max(best, t);
        if (static_cast<double>(l) > peak && t - best < std::log(1e-18)) {
            break;
        }
    }
    double even = 0.0;
    double odd = 0.0;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        long l = first + static_cast<long>(i);
        double v = std::exp(terms[i] - best);
        (l % 2 == 0 ? even : odd) += v;
    }
    return (even - odd) / (even + odd);
}

std::pair<FockVector, FockVector> orthogonal_codewords(const CatCodeSpec &spec, const TruncationPolicy &policy) {
    FockVector c0 = codeword(spec, 0, policy);
    FockVector c1 = codeword(spec, 1, policy);
    FockVector plus(c0.amps + c1.amps);
    FockVector minus(c0.amps - c1.amps);
    return {plus.normalized(), minus.normalized()};
}

std::pair<double, double> orthogonal_norms(const CatCodeSpec &spec) {
    CatCodeSpec undamped = spec;
    undamped.eta = 1.0;
    double re = error_space_overlap(undamped, 0);
    return {2.0 + 2.0 * re, 2.0 - 2.0 * re};
}

}  // namespace catrep
