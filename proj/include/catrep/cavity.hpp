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

#ifndef CATREP_CAVITY_HPP
#define CATREP_CAVITY_HPP

#include <complex>

namespace catrep {

/// Single-sided cavity with one trapped atom. Rates are angular
/// frequencies in units of kappa; the detuning passed to full_reflection is
/// an ordinary frequency (it enters as 2 pi Delta).
///
/// The defaults are illustrative only, chosen to sit in the strong-coupling
/// regime g^2 >> kappa gamma.
struct CavityParams {
    double g = 3.0;
    double kappa = 1.0;
    double gamma = 1.2;
    double kappa_r = 0.9;

    void validate() const;
};

/// (i Delta - kappa/2) / (i Delta + kappa/2), a unit-modulus amplitude.
std::complex<double> ideal_reflection(double delta, double kappa);

/// Phase of ideal_reflection in (0, 2 pi): pi - 2 atan(2 Delta / kappa).
/// Exact at resonance, where arg() of the complex ratio could land on -pi.
double ideal_phase(double delta, double kappa);

/// 1 - 2 kappa_r (2 i pi Delta + gamma) / ((2 i pi Delta + kappa)(2 i pi Delta + gamma) + g^2).
std::complex<double> full_reflection(double delta, const CavityParams &p);

/// Detuning (kappa/2) cot(phi/2) giving ideal phase phi, for 0 < phi <= pi.
double detuning_for_angle(double phi, double kappa);

/// One row of the reflection comparison. The interaction phase is the
/// relative phase between the empty-cavity (g = 0) and coupled reflections,
/// unwrapped onto the branch nearest the ideal curve evaluated at pi Delta
/// (the ideal relation written in the full formula's frequency units).
struct ReflectionRow {
    double delta = 0;
    double phase_ideal = 0;
    double phase_full = 0;
    double modulus_full = 0;   // |r| with the atom coupled
    double modulus_empty = 0;  // |r| for g = 0
};
ReflectionRow reflection_row(double delta, const CavityParams &p);

}  // namespace catrep

#endif
