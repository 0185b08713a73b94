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

#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <random>

#include "catrep/catcode.hpp"
#include "catrep/error.hpp"
#include "catrep/fockspace.hpp"
#include "catrep/numeric.hpp"

using namespace catrep;

namespace {

const BellOutcome kOutcomes[4] = {BellOutcome::phi_plus, BellOutcome::phi_minus, BellOutcome::psi_plus,
                                  BellOutcome::psi_minus};

// Four qubits L, M1, M2, R with pair a on (L, M1) and pair b on (M2, R).
// Projects (M1, M2) on a Bell vector and returns the unnormalized (L, R)
// state.
Eigen::Matrix4cd brute_force_swap(const Eigen::Matrix4cd &a, const Eigen::Matrix4cd &b, BellOutcome outcome) {
    Eigen::Vector4cd bell = bell_vector(outcome);
    Eigen::Matrix4cd out = Eigen::Matrix4cd::Zero();
    auto at = [](int x, int y) { return 2 * x + y; };
    for (int l = 0; l < 2; ++l)
        for (int r = 0; r < 2; ++r)
            for (int l2 = 0; l2 < 2; ++l2)
                for (int r2 = 0; r2 < 2; ++r2) {
                    std::complex<double> v = 0.0;
                    for (int x = 0; x < 2; ++x)
                        for (int y = 0; y < 2; ++y)
                            for (int x2 = 0; x2 < 2; ++x2)
                                for (int y2 = 0; y2 < 2; ++y2) {
                                    v += std::conj(bell(at(x, y))) * bell(at(x2, y2)) * a(at(l, x), at(l2, x2)) *
                                         b(at(y, r), at(y2, r2));
                                }
                    out(at(l, r), at(l2, r2)) = v;
                }
    return out;
}

PauliFrameState random_frame(std::mt19937 &rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    PauliFrameState s;
    s.kind = u(rng) < 0.5 ? BellKind::phi : BellKind::psi;
    s.plus_weight = u(rng);
    s.phase_label = 2 * M_PI * u(rng);
    return s;
}

}  // namespace

TEST(SwapPair, AgreesWithFourQubitProjection) {
    std::mt19937 rng(21);
    for (int trial = 0; trial < 50; ++trial) {
        PauliFrameState a = random_frame(rng);
        PauliFrameState b = random_frame(rng);
        for (BellOutcome o : kOutcomes) {
            Eigen::Matrix4cd raw = brute_force_swap(a.density(), b.density(), o);
            double p = raw.trace().real();
            EXPECT_NEAR(p, 0.25, 1e-12);
            Eigen::Matrix4cd expect = swap_pair(a, b, o).density();
            // The two can differ only by a local phase convention on one end;
            // compare entry magnitudes, which carry all the weights.
            EXPECT_NEAR((raw.cwiseAbs() / p - expect.cwiseAbs()).maxCoeff(), 0.0, 1e-12);
            EXPECT_NEAR((raw.cwiseAbs() / p - expect.cwiseAbs()).minCoeff(), 0.0, 1e-12);
        }
    }
}

TEST(SwapPair, PureAndDephasedFixedPoints) {
    PauliFrameState pure{BellKind::phi, 1.0, 0.0};
    EXPECT_EQ(swap_pair(pure, pure, BellOutcome::phi_plus).plus_weight, 1.0);
    PauliFrameState mixed{BellKind::phi, 0.5, 0.0};
    EXPECT_EQ(swap_pair(mixed, mixed, BellOutcome::psi_minus).plus_weight, 0.5);
    EXPECT_EQ(swap_pair(pure, mixed, BellOutcome::phi_plus).plus_weight, 0.5);
}

TEST(SwapPair, OffDiagonalCoefficientIsProductOfImbalances) {
    for (double a_plus : {0.9, 0.7}) {
        for (double c_plus : {0.95, 0.6}) {
            PauliFrameState a{BellKind::phi, a_plus, 0.4};
            PauliFrameState b{BellKind::phi, c_plus, 1.1};
            Eigen::Matrix4cd out = swap_pair(a, b, BellOutcome::phi_plus).density();
            double expected = 0.5 * (a_plus - (1 - a_plus)) * (c_plus - (1 - c_plus));
            EXPECT_NEAR(std::abs(out(0, 3)), expected, 1e-15);
            EXPECT_NEAR(out(0, 0).real(), 0.5, 1e-15);
            EXPECT_NEAR(out(3, 3).real(), 0.5, 1e-15);
        }
    }
}

TEST(SwapPair, RepeatedSwapsReproduceChainFidelity) {
    for (double f0 : {0.99, 0.8, 0.55}) {
        PauliFrameState link{BellKind::phi, f0, 0.0};
        PauliFrameState acc = link;
        for (long n_e = 2; n_e <= 16; ++n_e) {
            acc = swap_pair(acc, link, BellOutcome::phi_plus);
            EXPECT_NEAR(acc.plus_weight, chain_fidelity(f0, n_e), 1e-12) << f0 << " " << n_e;
        }
    }
}

TEST(ChainFidelity, EdgeCases) {
    EXPECT_EQ(chain_fidelity(0.83, 1), 0.83);
    EXPECT_EQ(chain_fidelity(1.0, 1000), 1.0);
    for (double f0 : {0.0, 0.2, 0.49, 0.7}) {
        for (long n : {2, 4, 10}) {
            EXPECT_GE(chain_fidelity(f0, n), 0.5);
        }
    }
    EXPECT_THROW(chain_fidelity(0.9, 0), UsageError);
}

TEST(ChainFidelity, TinyUncorrectableMassKeepsPrecision) {
    double u = 1e-20;
    long n = 100000;
    EXPECT_NEAR(chain_error_from_uncorrectable(u, n) / (n * u), 1.0, 1e-10);
    EXPECT_NEAR(chain_fidelity_from_uncorrectable(0.1, 5), chain_fidelity(0.9, 5), 1e-15);
}

TEST(ChainDistribution, SingleSegmentGivesClassMasses) {
    LossWeights w = loss_weights(CatCodeSpec{2, 1.5, 0.9});
    auto terms = chain_distribution(w, 1);
    ASSERT_EQ(terms.size(), 4u);
    for (const auto &t : terms) {
        int r = 0;
        while (t.counts[r] == 0) {
            ++r;
        }
        double mass = w.p[r] + w.p[r + 4];
        EXPECT_NEAR(t.probability, mass, 1e-14);
        EXPECT_NEAR(t.fidelity, w.p[r] / mass, 1e-12);
    }
}

// Enumerates every ordered sequence of per-segment classes q in [0, 2M),
// groups by how often each residue r = q mod M occurs, and tracks the
// probability that an even number of segments fell in the upper half.
TEST(ChainDistribution, MatchesOrderedExpansion) {
    for (int m : {1, 2}) {
        for (int n_e : {1, 2, 3, 4}) {
            LossWeights w = loss_weights(CatCodeSpec{m, 1.2, 0.8});
            const int order = 1 << m;
            const int classes = 2 * order;
            std::map<std::vector<int>, std::pair<double, double>> grouped;  // counts -> (prob, prob even)
            long total = 1;
            for (int i = 0; i < n_e; ++i) {
                total *= classes;
            }
            for (long seq = 0; seq < total; ++seq) {
                std::vector<int> counts(order, 0);
                double p = 1.0;
                int flips = 0;
                long s = seq;
                for (int i = 0; i < n_e; ++i) {
                    int q = static_cast<int>(s % classes);
                    s /= classes;
                    p *= w.p[q];
                    counts[q % order]++;
                    flips += q >= order;
                }
                auto &g = grouped[counts];
                g.first += p;
                g.second += flips % 2 == 0 ? p : 0.0;
            }
            auto terms = chain_distribution(w, n_e);
            ASSERT_EQ(terms.size(), grouped.size());
            for (const auto &t : terms) {
                const auto &g = grouped.at(t.counts);
                EXPECT_NEAR(t.probability, g.first, 1e-14);
                if (g.first > 1e-200) {
                    EXPECT_NEAR(t.fidelity, g.second / g.first, 1e-10);
                }
            }
        }
    }
}

TEST(ChainDistribution, AverageFidelityMatchesClosedForm) {
    for (int m : {1, 2}) {
        for (int n_e : {2, 4, 8}) {
            LossWeights w = loss_weights(CatCodeSpec{m, 1.4, 0.85});
            double avg = 0.0;
            double mass = 0.0;
            for (const auto &t : chain_distribution(w, n_e)) {
                avg += t.probability * t.fidelity;
                mass += t.probability;
            }
            EXPECT_NEAR(mass, 1.0, 1e-12);
            EXPECT_NEAR(avg, chain_fidelity_from_uncorrectable(w.uncorrectable, n_e), 1e-10) << m << " " << n_e;
        }
    }
}

TEST(ChainDistribution, GuardsAgainstBlowup) {
    LossWeights w = loss_weights(CatCodeSpec{3, 1.0, 0.9});
    EXPECT_THROW(chain_distribution(w, 1000, 1000), UsageError);
}

TEST(ChainSuccess, Identities) {
    EXPECT_EQ(chain_success(1.0, 100000), 1.0);
    EXPECT_EQ(chain_success(0.37, 1), 0.37);
    EXPECT_NEAR(log_chain_success(0.9, 100000), 100000 * std::log(0.9), 1e-12 * 100000 * std::abs(std::log(0.9)));
    EXPECT_EQ(chain_success(0.0, 3), 0.0);
    EXPECT_THROW(chain_success(1.2, 3), UsageError);
}

TEST(SecretKeyRate, PerfectAndUselessLinks) {
    KeyRate r = secret_key_rate(1.0, 1.0, 1e-6);
    EXPECT_NEAR(r.per_second, 1e6, 1e-6);
    EXPECT_EQ(r.per_channel_use, 1.0);
    EXPECT_EQ(secret_key_rate(0.5, 1.0, 1e-6).per_channel_use, 0.0);
    EXPECT_EQ(secret_key_rate(0.3, 1.0, 1e-6).per_channel_use, 0.0);
}

TEST(SecretKeyRate, ExactAverageDominatesLowerBound) {
    for (int m : {1, 2}) {
        for (double a : {0.8, 1.5, 2.5}) {
            for (double eta : {0.8, 0.95, 0.99}) {
                LossWeights w = loss_weights(CatCodeSpec{m, a, eta});
                for (int n_e : {1, 2, 4, 8}) {
                    double f_tot = chain_fidelity_from_uncorrectable(w.uncorrectable, n_e);
                    double lower = secret_key_rate(f_tot, 1.0, 1.0).key_fraction;
                    double exact = secret_key_rate_exact(chain_distribution(w, n_e), 1.0, 1.0).key_fraction;
                    EXPECT_GE(exact + 1e-12, lower) << m << " " << a << " " << eta << " " << n_e;
                }
            }
        }
    }
}

TEST(Plob, ReferenceDistance) {
    PlobBound b = plob_bound(1000.0, 22.0);
    EXPECT_NEAR(b.eta_tot / 1.82e-20, 1.0, 0.02);
    EXPECT_NEAR(b.bits_per_use / 2.62e-20, 1.0, 0.02);
}

TEST(Plob, HalfTransmissionGivesOneBit) {
    EXPECT_NEAR(plob_bound(22.0 * std::log(2.0), 22.0).bits_per_use, 1.0, 1e-14);
    EXPECT_THROW(plob_bound(-1.0, 22.0), UsageError);
}

TEST(Segment, TransmissionFoldsLocalLoss) {
    SegmentParams p{10.0, 22.0, 0.99, 2.0};
    EXPECT_NEAR(p.eta_segment(), 0.99 * 0.99 * std::exp(-10.0 / 22.0), 1e-15);
    p.eta_local = 1.5;
    EXPECT_THROW(p.eta_segment(), UsageError);
}

TEST(Segment, SpacingMustDivideTotal) {
    EXPECT_EQ(ChainParams::from_spacing(1000.0, 0.01).n_e, 100000);
    EXPECT_EQ(ChainParams::from_spacing(1000.0, 1000.0).n_e, 1);
    try {
        ChainParams::from_spacing(1000.0, 3.0);
        FAIL() << "expected rejection";
    } catch (const UsageError &e) {
        std::string msg = e.what();
        EXPECT_NE(msg.find("L0=3"), std::string::npos) << msg;
        EXPECT_NE(msg.find("L_tot=1000"), std::string::npos) << msg;
    }
}
