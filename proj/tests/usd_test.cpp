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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "catrep/catcode.hpp"
#include "catrep/error.hpp"

using namespace catrep;
using cd = std::complex<double>;

TEST(CoherentOverlap, SelfAndOpposite) {
    for (double a : {0.3, 1.0, 2.0}) {
        CoherentSuperposition s(1), t(1);
        s.add(1.0, {a});
        t.add(1.0, {-a});
        EXPECT_NEAR(std::abs(overlap(s, s) - 1.0), 0.0, 1e-15);
        EXPECT_NEAR(overlap(s, t).real(), std::exp(-2 * a * a), 1e-15);
    }
}

TEST(CoherentOverlap, CatPairMatchesFockVectors) {
    for (double a : {0.5, 1.0, 1.7}) {
        cd coh = overlap(two_component_cat(a, 0), two_component_cat(a, 1));
        CatCodeSpec spec{1, a, 1.0};
        cd fock = inner(codeword(spec, 0), codeword(spec, 1));
        EXPECT_NEAR(std::abs(coh - fock), 0.0, 1e-10) << a;
    }
}

TEST(BeamSplitter, SplitsAndRecombines) {
    CoherentSuperposition s(2);
    s.add(1.0, {cd(1.2, 0.3), 0.0});
    CoherentSuperposition out = beam_splitter(s, 0, 1);
    cd half = cd(1.2, 0.3) / std::sqrt(2.0);
    EXPECT_NEAR(std::abs(out.terms[0].amps[0] - half), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(out.terms[0].amps[1] - half), 0.0, 1e-15);

    CoherentSuperposition eq(2);
    eq.add(1.0, {0.7, 0.7});
    out = beam_splitter(eq, 0, 1);
    EXPECT_NEAR(std::abs(out.terms[0].amps[0] - std::sqrt(2.0) * 0.7), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(out.terms[0].amps[1]), 0.0, 1e-15);
}

TEST(BeamSplitter, PreservesNorm) {
    std::mt19937 rng(9);
    std::normal_distribution<double> g;
    for (int trial = 0; trial < 20; ++trial) {
        CoherentSuperposition s(3);
        for (int t = 0; t < 4; ++t) {
            s.add(cd(g(rng), g(rng)), {cd(g(rng), g(rng)), cd(g(rng), g(rng)), cd(g(rng), g(rng))});
        }
        double before = s.norm2();
        double after = beam_splitter(beam_splitter(s, 0, 2), 1, 2).norm2();
        EXPECT_NEAR(after, before, 1e-12 * before);
    }
}

TEST(ClickProbability, VacuumAndSingleCoherentState) {
    CoherentSuperposition vac(2);
    vac.add(1.0, {0.0, 0.0});
    EXPECT_NEAR(click_probability(vac, {0}), 0.0, 1e-15);
    EXPECT_NEAR(click_probability(vac, {0, 1}), 0.0, 1e-15);
    CoherentSuperposition s(2);
    cd gamma(0.9, -0.4);
    s.add(1.0, {gamma, 0.0});
    EXPECT_NEAR(click_probability(s, {0}), 1.0 - std::exp(-std::norm(gamma)), 1e-15);
    EXPECT_NEAR(click_probability(s, {}), 1.0, 1e-15);
}

TEST(OptimalUsd, Limits) {
    EXPECT_NEAR(optimal_usd_probability(CatCodeSpec{1, 6.0, 1.0}, 0), 1.0, 1e-12);
    EXPECT_LT(optimal_usd_probability(CatCodeSpec{1, 0.01, 1.0}, 0), 1e-6);
}

TEST(OptimalUsd, MatchesFockOverlap) {
    CatCodeSpec spec{1, 1.5, 0.99};
    double fock = 1.0 - std::abs(inner(damped_codeword(spec, 0), damped_codeword(spec, 1)));
    EXPECT_NEAR(optimal_usd_probability(spec, 0), fock, 1e-12);
    EXPECT_THROW(optimal_usd_probability(spec, 2), UsageError);
}

TEST(OptimalUsd, ModesAreOrdered) {
    CatCodeSpec spec{2, 1.5, 0.9};
    double worst = optimal_usd_probability(spec, UsdMode::worst_case);
    double avg = optimal_usd_probability(spec, UsdMode::weighted_average);
    double best = 0.0;
    for (int q = 0; q < 4; ++q) {
        best = std::max(best, optimal_usd_probability(spec, q));
    }
    EXPECT_LE(worst, avg);
    EXPECT_LE(avg, best);
    EXPECT_EQ(optimal_usd_probability(spec, UsdMode::code_space), optimal_usd_probability(spec, 0));
}

TEST(UsdMode, NamesRoundTrip) {
    for (UsdMode m : {UsdMode::per_q, UsdMode::weighted_average, UsdMode::code_space, UsdMode::worst_case}) {
        EXPECT_EQ(usd_mode_from_string(to_string(m)), m);
    }
    EXPECT_THROW(usd_mode_from_string("best"), UsageError);
    EXPECT_EQ(probe_variant_from_string(to_string(ProbeVariant::coherent)), ProbeVariant::coherent);
}

TEST(LinearOptics, VanishesForSmallAmplitude) {
    EXPECT_LT(linear_optics_usd_probability(0.01, 1.0, 0), 1e-6);
}

TEST(LinearOptics, CircuitMatchesClosedForm) {
    for (double a : {0.5, 1.0, 1.5, 2.0, 3.0}) {
        EXPECT_NEAR(linear_optics_usd_probability(a, 1.0, 0), linear_optics_usd_closed_form(a), 1e-9) << a;
    }
}

TEST(LinearOptics, BelowOptimalAndUnambiguous) {
    for (double a = 0.1; a <= 4.0; a += 0.1) {
        LinearOpticsReport r = linear_optics_usd(a, 1.0, 0);
        EXPECT_LE(r.success, optimal_usd_probability(CatCodeSpec{1, a, 1.0}, 0) + 1e-12) << a;
        EXPECT_LT(r.posterior_error_cd, 1e-12) << a;
        EXPECT_LT(r.posterior_error_ab, 1e-12) << a;
    }
}

TEST(LinearOptics, LossyAndErrorSpaceInputsStayBelowOptimal) {
    for (double a : {0.8, 1.5, 2.5}) {
        for (int q : {0, 1}) {
            double lo = linear_optics_usd_probability(a, 0.9, q);
            EXPECT_GE(lo, 0.0);
            EXPECT_LE(lo, optimal_usd_probability(CatCodeSpec{1, a, 0.9}, q) + 1e-12) << a << " " << q;
        }
    }
}

TEST(LinearOptics, CoherentProbesBelowOptimal) {
    for (double a : {0.5, 1.0, 2.0}) {
        double lo = linear_optics_usd_probability(a, 1.0, 0, ProbeVariant::coherent);
        EXPECT_GE(lo, 0.0);
        EXPECT_LE(lo, optimal_usd_probability(CatCodeSpec{1, a, 1.0}, 0) + 1e-12) << a;
    }
}
