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

#include "catrep/cavity.hpp"

#include <cmath>
#include <sstream>

#include "catrep/error.hpp"

namespace catrep {

using cplx = std::complex<double>;

void CavityParams::validate() const {
    if (!(g > 0 && kappa > 0 && gamma > 0 && kappa_r > 0)) {
        throw UsageError("cavity rates must all be positive");
    }
    if (kappa_r > kappa) {
        throw UsageError("outcoupling rate kappa_r cannot exceed kappa");
    }
}

cplx ideal_reflection(double delta, double kappa) {
    if (!(kappa > 0)) {
        throw UsageError("kappa must be positive");
    }
    return cplx(-0.5 * kappa, delta) / cplx(0.5 * kappa, delta);
}

double ideal_phase(double delta, double kappa) {
    if (!(kappa > 0)) {
        throw UsageError("kappa must be positive");
    }
    return M_PI - 2.0 * std::atan(2.0 * delta / kappa);
}

cplx full_reflection(double delta, const CavityParams &p) {
    cplx s(0.0, 2.0 * M_PI * delta);
    return 1.0 - 2.0 * p.kappa_r * (s + p.gamma) / ((s + p.kappa) * (s + p.gamma) + p.g * p.g);
}

double detuning_for_angle(double phi, double kappa) {
    if (!(phi > 0.0 && phi <= M_PI)) {
        std::ostringstream msg;
        msg << "rotation angle must lie in (0, pi], got " << phi;
        throw UsageError(msg.str());
    }
    if (!(kappa > 0)) {
        throw UsageError("kappa must be positive");
    }
    if (phi == M_PI) {
        return 0.0;
    }
    return 0.5 * kappa / std::tan(0.5 * phi);
}

ReflectionRow reflection_row(double delta, const CavityParams &p) {
    p.validate();
    CavityParams empty = p;
    empty.g = 0.0;
    cplx coupled = full_reflection(delta, p);
    cplx bare = full_reflection(delta, empty);
    ReflectionRow row;
    row.delta = delta;
    row.phase_ideal = ideal_phase(M_PI * delta, p.kappa);
    double rel = std::arg(bare / coupled);
    row.phase_full = row.phase_ideal + std::remainder(rel - row.phase_ideal, 2.0 * M_PI);
    row.modulus_full = std::abs(coupled);
    row.modulus_empty = std::abs(bare);
    return row;
}

}  // namespace catrep
