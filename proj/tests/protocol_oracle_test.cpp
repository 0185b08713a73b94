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

#include "catrep/protocol_oracle.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "catrep/catcode.hpp"
#include "catrep/chain.hpp"

using namespace catrep;

namespace {

// (|up> c0 + |down> c1) / sqrt 2 for the cat codewords.
CVector encoded(const CatCodeSpec &spec) {
    FockVector c0 = codeword(spec, 0);
    FockVector c1 = codeword(spec, 1);
    CVector v(2 * c0.dim());
    v.head(c0.dim()) = c0.amps;
    v.tail(c0.dim()) = c1.amps;
    return v / std::sqrt(2.0);
}

double pure_fidelity(const CVector &v, const HybridDensity &s) {
    return v.dot(s.rho * v).real() / s.trace();
}

}  // namespace

TEST(Prepare, CanonicalOutputIsTheEncodedState) {
    for (int m : {1, 2, 3}) {
        CatCodeSpec spec{m, 1.0, 1.0};
        PreparedState p = prepare_code_state(m, coherent_state(1.0));
        EXPECT_NEAR(pure_fidelity(encoded(spec), p.state), 1.0, 1e-10) << m;
        double total = 0.0;
        for (const auto &b : p.branches) {
            total += b.probability;
            EXPECT_NEAR(b.relabel_fidelity, 1.0, 1e-10) << m << " residue " << b.residue;
        }
        EXPECT_NEAR(total, 1.0, 1e-12);
    }
}

TEST(Prepare, FirstStepSplitsEvenAndOddCats) {
    FockVector theta = coherent_state(1.3);
    PreparedState p = prepare_code_state(1, theta);
    ASSERT_EQ(p.branches.size(), 2u);
    for (const auto &b : p.branches) {
        double sign = b.residue == 0 ? 1.0 : -1.0;
        FockVector cat = FockVector(theta.amps + sign * rotation_apply(M_PI, theta).amps).normalized();
        FockDensity light = mode_density(project_spin(b.state, 0, Spinor(1.0, 0.0)));
        EXPECT_NEAR(cat.amps.dot(light.rho * cat.amps).real() / light.trace(), 1.0, 1e-12);
    }
}

TEST(Transmit, LosslessIsIdentityAndRankIsBounded) {
    for (int m : {1, 2}) {
        CatCodeSpec spec{m, 1.5, 1.0};
        HybridDensity s = HybridDensity::from_pure(1, codeword(spec, 0).dim(), encoded(spec));
        EXPECT_EQ((transmit(s, 1.0).rho - s.rho).norm(), 0.0);
        HybridDensity lossy = transmit(s, 0.8);
        Eigen::SelfAdjointEigenSolver<CMatrix> es(lossy.rho);
        int rank = 0;
        for (int i = 0; i < es.eigenvalues().size(); ++i) {
            rank += es.eigenvalues()(i) > 1e-12;
        }
        EXPECT_LE(rank, 2 * spec.order()) << m;
        EXPECT_GE(rank, 2) << m;
    }
}

TEST(Syndrome, InjectedLossIsReadExactly) {
    CatCodeSpec spec{2, 1.5, 1.0};
    auto branches = syndrome_cascade(injected_loss_state(spec, 3), 2);
    double hit = 0.0;
    for (const auto &b : branches) {
        hit += b.remainder == 3 ? b.probability : 0.0;
    }
    EXPECT_NEAR(hit, 1.0, 1e-12);
}

TEST(Syndrome, BothAngleVariantsAgree) {
    for (int m : {1, 2, 3}) {
        CatCodeSpec spec{m, 1.5, 1.0};
        for (int q = 0; q < 2 * spec.order(); ++q) {
            HybridDensity s = injected_loss_state(spec, q);
            auto direct = syndrome_cascade(s, m, SyndromeVariant::direct);
            auto swapped = syndrome_cascade(s, m, SyndromeVariant::pi_minus_phi);
            ASSERT_EQ(direct.size(), 1u) << m << " " << q;
            ASSERT_EQ(swapped.size(), 1u) << m << " " << q;
            EXPECT_EQ(direct[0].remainder, q % spec.order());
            EXPECT_EQ(swapped[0].remainder, q % spec.order());
            EXPECT_NEAR(direct[0].probability, 1.0, 1e-12);
            EXPECT_LT(trace_distance(direct[0].state.rho, swapped[0].state.rho), 1e-10);
        }
    }
}

TEST(Syndrome, UncorrectablePartnerSharesTheBranch) {
    CatCodeSpec spec{2, 2.0, 1.0};
    auto a = syndrome_cascade(injected_loss_state(spec, 1), 2);
    auto b = syndrome_cascade(injected_loss_state(spec, 5), 2);
    ASSERT_EQ(a.size(), 1u);
    ASSERT_EQ(b.size(), 1u);
    EXPECT_EQ(a[0].remainder, b[0].remainder);
}

TEST(Entangle, LosslessStructure) {
    CatCodeSpec spec{2, 1.2, 1.0};
    FockVector c0 = codeword(spec, 0);
    FockVector c1 = codeword(spec, 1);
    const int d = c0.dim();
    HybridDensity s = HybridDensity::from_pure(1, d, encoded(spec));
    EntangledState e = create_entanglement(s, spec.m, 0);
    // (|phi+>|0> + |psi+>|1>) / sqrt 2 on spins (B, A).
    CVector target = CVector::Zero(4 * d);
    const double h = 0.5;
    target.segment(0 * d, d) = h * c0.amps;
    target.segment(3 * d, d) = h * c0.amps;
    target.segment(1 * d, d) = h * c1.amps;
    target.segment(2 * d, d) = h * c1.amps;
    EXPECT_NEAR(pure_fidelity(target, e.state), 1.0, 1e-12);
    EXPECT_EQ(e.theta, 0.0);
}

TEST(SimulateUnit, LosslessFidelityIsOne) {
    UnitReport r = simulate_unit(CatCodeSpec{2, 1.5, 1.0});
    EXPECT_NEAR(r.f0, 1.0, 1e-10);
}

TEST(SimulateUnit, FidelityMatchesAnalytic) {
    for (double eta : {0.9, 0.99}) {
        CatCodeSpec spec{1, 1.0, eta};
        EXPECT_NEAR(simulate_unit(spec).f0, segment_fidelity(spec), 1e-6) << eta;
    }
}

TEST(SimulateUnit, WeightsMatchAnalytic) {
    CatCodeSpec spec{2, 2.0, 0.99};
    UnitReport r = simulate_unit(spec);
    LossWeights w = loss_weights(spec);
    for (std::size_t q = 0; q < w.p.size(); ++q) {
        EXPECT_NEAR(r.weights[q], w.p[q], 1e-8) << q;
        EXPECT_NEAR(r.kraus_weights[q], w.p[q], 1e-8) << q;
    }
}

// After the "0" projection each syndrome branch holds only the two phi
// states at angle r pi / M, weighted by the class split.
TEST(SimulateUnit, ConditionalStatesAreGeneralizedPhiMixtures) {
    CatCodeSpec spec{2, 1.8, 0.9};
    UnitReport r = simulate_unit(spec);
    LossWeights w = loss_weights(spec);
    const int order = spec.order();
    ASSERT_EQ(static_cast<int>(r.branches.size()), order);
    for (const auto &b : r.branches) {
        double theta = b.remainder * M_PI / order;
        Eigen::Vector4cd plus = bell_vector(BellKind::phi, +1, theta);
        Eigen::Vector4cd minus = bell_vector(BellKind::phi, -1, theta);
        double fp = plus.dot(b.phi_state * plus).real();
        double fm = minus.dot(b.phi_state * minus).real();
        EXPECT_NEAR(fp + fm, 1.0, 1e-10) << b.remainder;
        double mass = w.p[b.remainder] + w.p[b.remainder + order];
        EXPECT_NEAR(fp, w.p[b.remainder] / mass, 1e-8) << b.remainder;
        EXPECT_NEAR(b.probability, mass, 1e-8) << b.remainder;
        EXPECT_NEAR(b.psi_fidelity, fp, 1e-8) << b.remainder;
        EXPECT_NEAR(b.usd_probability, 1.0 - std::abs(error_space_overlap(spec, b.remainder)), 1e-10);
    }
    std::string tree = dump_branch_tree(r);
    EXPECT_NE(tree.find("f0="), std::string::npos);
    EXPECT_NE(tree.find("syndrome r=3"), std::string::npos);
}

TEST(BellOrder, LosslessOrdersCoincide) {
    OrderEquivalence e = bell_order_equivalence(1, 1.0, 1.0);
    EXPECT_LT(e.max_trace_distance, 1e-12);
    EXPECT_LT(e.max_probability_gap, 1e-12);
    EXPECT_GT(e.compared_branches, 0);
}

TEST(BellOrder, LossyOrdersCoincide) {
    OrderEquivalence e = bell_order_equivalence(1, 1.0, 0.9);
    EXPECT_LT(e.max_trace_distance, 1e-8);
    EXPECT_LT(e.max_probability_gap, 1e-8);
    EXPECT_GT(e.compared_branches, 4);
}

TEST(BellOrder, MiddleProjectionFirstGivesLinkedPairs) {
    for (int m : {1, 2}) {
        EXPECT_NEAR(bell_first_branch_fidelity(m, 1.0), 1.0, 1e-12) << m;
    }
}
