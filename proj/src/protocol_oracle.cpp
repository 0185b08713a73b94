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

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <tuple>

#include "catrep/chain.hpp"
#include "catrep/error.hpp"

namespace catrep {

namespace {

const Spinor kPlus = Spinor(1.0, 1.0) / std::sqrt(2.0);

// Leading eigenvector of a (near) rank-one density.
CVector leading_vector(const CMatrix &rho) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (rho + rho.adjoint()));
    return es.eigenvectors().col(es.eigenvectors().cols() - 1);
}

// Vector that is orthogonal to `other` inside span{keep, other}.
FockVector dual_vector(const FockVector &keep, const FockVector &other) {
    CVector u = keep.amps - other.amps.dot(keep.amps) * other.amps;
    return FockVector(u).normalized();
}

void require_depth(int m) {
    if (m < 1 || m > 12) {
        throw UsageError("code depth m must be in [1, 12]");
    }
}

}  // namespace

PreparedState prepare_code_state(int m, const FockVector &primitive) {
    require_depth(m);
    const int order = 1 << m;
    struct Partial {
        std::vector<int> outcomes;
        int residue = 0;
        double probability = 1.0;
        HybridDensity state;
    };
    std::vector<Partial> live{{{}, 0, 1.0, HybridDensity::product({}, primitive.normalized())}};
    for (int k = 1; k <= m; ++k) {
        const double phi = M_PI / static_cast<double>(1 << (k - 1));
        std::vector<Partial> next;
        for (const auto &p : live) {
            HybridDensity s = hcrot(phi, add_spin(p.state, 0, kPlus), 0);
            // Light on n = residue + 2^(k-1) t picks up exp(i residue phi)(-1)^t.
            auto branches = measure_spin(s, 0, SpinBasis::phased(p.residue * phi));
            for (auto &b : branches) {
                Partial q = p;
                q.outcomes.push_back(b.outcome);
                q.residue = p.residue + b.outcome * (1 << (k - 1));
                q.probability = p.probability * b.probability;
                q.state = std::move(b.state);
                next.push_back(std::move(q));
            }
        }
        live = std::move(next);
    }
    PreparedState out;
    bool have_canonical = false;
    const double flip = M_PI / order;
    for (auto &p : live) {
        CVector light = leading_vector(p.state.rho);
        HybridDensity s = hcrot(flip, add_spin(p.state, 0, kPlus), 0);
        FockVector c0(light);
        FockVector c1 = rotation_apply(flip, c0);
        CVector target(2 * c0.dim());
        target.head(c0.dim()) = c0.amps / std::sqrt(2.0);
        target.tail(c0.dim()) = c1.amps / std::sqrt(2.0);
        PreparationBranch b;
        b.outcomes = p.outcomes;
        b.residue = p.residue;
        b.probability = p.probability;
        b.relabel_fidelity = target.dot(s.rho * target).real() / s.trace();
        b.state = s;
        if (p.residue == 0) {
            out.state = s;
            have_canonical = true;
        }
        out.branches.push_back(std::move(b));
    }
    if (!have_canonical) {
        throw NumericalError("preparation cascade lost the code-space branch");
    }
    return out;
}

HybridDensity transmit(const HybridDensity &s, double eta, const TruncationPolicy &policy) {
    return amplitude_damping(s, eta, policy);
}

HybridDensity injected_loss_state(const CatCodeSpec &spec, int q, const TruncationPolicy &policy) {
    spec.validate();
    if (q < 0) {
        throw UsageError("loss count must be non-negative");
    }
    FockVector c0 = annihilate(codeword(spec, 0, policy), q);
    FockVector c1 = annihilate(codeword(spec, 1, policy), q);
    const int d = c0.dim();
    CVector psi(2 * d);
    psi.head(d) = c0.amps;
    psi.tail(d) = c1.amps;
    double n = psi.norm();
    if (!(n > 0.0)) {
        throw NumericalError("injected loss empties the truncated space");
    }
    return HybridDensity::from_pure(1, d, psi / n);
}

std::vector<SyndromeBranch> syndrome_cascade(const HybridDensity &s, int m, SyndromeVariant variant) {
    require_depth(m);
    std::vector<SyndromeBranch> live{{0, 1.0, {}, s}};
    for (int k = 1; k <= m; ++k) {
        const double phi = M_PI / static_cast<double>(1 << (k - 1));
        const bool swapped = variant == SyndromeVariant::pi_minus_phi && k > 1;
        const double angle = swapped ? M_PI - phi : phi;
        std::vector<SyndromeBranch> next;
        for (const auto &b : live) {
            const int idx = b.state.spins;
            HybridDensity t = hcrot(angle, add_spin(b.state, idx, kPlus), idx);
            // A loss count q = r + 2^(k-1) j leaves phase exp(-i q angle) on
            // |down>; r is known, j is read out.
            double theta = swapped ? b.remainder * (M_PI + phi) : -b.remainder * phi;
            for (auto &o : measure_spin(t, idx, SpinBasis::phased(theta))) {
                SyndromeBranch n;
                n.remainder = b.remainder + o.outcome * (1 << (k - 1));
                n.probability = b.probability * o.probability;
                n.outcomes = b.outcomes;
                n.outcomes.push_back(o.outcome);
                n.state = std::move(o.state);
                next.push_back(std::move(n));
            }
        }
        live = std::move(next);
    }
    std::sort(live.begin(), live.end(),
              [](const SyndromeBranch &a, const SyndromeBranch &b) { return a.remainder < b.remainder; });
    return live;
}

EntangledState create_entanglement(const HybridDensity &s, int m, int known_q) {
    require_depth(m);
    const int order = 1 << m;
    EntangledState e;
    e.state = hcrot(M_PI / order, add_spin(s, 0, kPlus), 0);
    e.known_q = known_q;
    e.theta = known_q * M_PI / order;
    return e;
}

UnitReport simulate_unit(const CatCodeSpec &spec, const TruncationPolicy &policy, SyndromeVariant variant) {
    spec.validate();
    const int order = spec.order();
    FockVector primitive = coherent_state(spec.alpha, policy);
    PreparedState prep = prepare_code_state(spec.m, primitive);

    UnitReport report;
    report.preparation = prep.branches;
    report.weights.assign(2 * order, 0.0);
    report.kraus_weights.assign(2 * order, 0.0);

    // Loss statistics straight from the Kraus terms.
    FockDensity mode = mode_density(prep.state);
    double kraus_total = 0.0;
    for (int k = 0; k < mode.dim(); ++k) {
        double w = 0.0;
        for (int n = k; n < mode.dim(); ++n) {
            double c = kraus_coefficient(k, n, spec.eta);
            w += c * c * mode.rho(n, n).real();
        }
        report.kraus_weights[k % (2 * order)] += w;
        kraus_total += w;
    }
    for (double &w : report.kraus_weights) {
        w /= kraus_total;
    }

    HybridDensity received = transmit(prep.state, spec.eta, policy);
    for (auto &syn : syndrome_cascade(received, spec.m, variant)) {
        const int r = syn.remainder;
        EntangledState ent = create_entanglement(syn.state, spec.m, r);
        FockVector e0 = error_space_state(spec, 0, r, policy).state;
        FockVector e1 = error_space_state(spec, 1, r, policy).state;

        UnitBranch b;
        b.remainder = r;
        b.probability = syn.probability;
        b.usd_probability = 1.0 - std::abs(inner(e0, e1));

        CMatrix phi = project_mode(ent.state, dual_vector(e0, e1));
        CMatrix psi = project_mode(ent.state, dual_vector(e1, e0));
        b.phi_state = phi / phi.trace().real();
        b.psi_state = psi / psi.trace().real();
        Eigen::Vector4cd phi_plus = bell_vector(BellKind::phi, +1, ent.theta);
        Eigen::Vector4cd psi_plus = bell_vector(BellKind::psi, +1, ent.theta);
        b.phi_fidelity = phi_plus.dot(b.phi_state * phi_plus).real();
        b.psi_fidelity = psi_plus.dot(b.psi_state * psi_plus).real();

        report.f0 += b.probability * b.phi_fidelity;
        report.weights[r] += b.probability * b.phi_fidelity;
        report.weights[r + order] += b.probability * (1.0 - b.phi_fidelity);
        report.branches.push_back(std::move(b));
    }
    return report;
}

std::string dump_branch_tree(const UnitReport &report) {
    std::ostringstream out;
    out.precision(12);
    for (const auto &p : report.preparation) {
        out << "prepare";
        for (std::size_t k = 0; k < p.outcomes.size(); ++k) {
            out << " step" << (k + 1) << "=" << (p.outcomes[k] == 0 ? '+' : '-');
        }
        out << " residue=" << p.residue << " p=" << p.probability << " relabel_fidelity=" << p.relabel_fidelity
            << "\n";
    }
    for (const auto &b : report.branches) {
        out << "  syndrome r=" << b.remainder << " p=" << b.probability << " phi_fidelity=" << b.phi_fidelity
            << " psi_fidelity=" << b.psi_fidelity << " usd=" << b.usd_probability << "\n";
    }
    out << "f0=" << report.f0 << "\n";
    return out.str();
}

namespace {

// Pure state of a spin register and two modes:
// index = (spin_bits * dim + n1) * dim + n2, spin 0 most significant.
struct TwoModeState {
    int spins = 0;
    int dim = 0;
    CVector v;

    int block() const {
        return dim * dim;
    }
    // Per spin configuration the amplitudes form a dim x dim column-major
    // matrix X with X(n2, n1).
    Eigen::Map<CMatrix> slice(int config) {
        return Eigen::Map<CMatrix>(v.data() + static_cast<Eigen::Index>(config) * block(), dim, dim);
    }
};

int bit_of(int config, int spins, int index) {
    return (config >> (spins - 1 - index)) & 1;
}

int remove_bits(int config, int spins, const std::vector<int> &indices) {
    int out = 0;
    for (int i = 0; i < spins; ++i) {
        if (std::find(indices.begin(), indices.end(), i) != indices.end()) {
            continue;
        }
        out = (out << 1) | bit_of(config, spins, i);
    }
    return out;
}

TwoModeState two_unit_state(const CatCodeSpec &spec, const TruncationPolicy &policy) {
    FockVector c0 = codeword(spec, 0, policy);
    FockVector c1 = codeword(spec, 1, policy);
    const int d = c0.dim();
    TwoModeState s;
    s.spins = 2;
    s.dim = d;
    s.v = CVector::Zero(4 * d * d);
    const FockVector *c[2] = {&c0, &c1};
    for (int s1 = 0; s1 < 2; ++s1) {
        for (int s2 = 0; s2 < 2; ++s2) {
            // X(n2, n1) = c_{s1}(n1) c_{s2}(n2) / 2
            s.slice(s1 * 2 + s2) = 0.5 * c[s2]->amps * c[s1]->amps.transpose();
        }
    }
    return s;
}

TwoModeState add_spin_back(const TwoModeState &s, const Spinor &state) {
    TwoModeState out;
    out.spins = s.spins + 1;
    out.dim = s.dim;
    out.v = CVector(2 * s.v.size());
    const int b = s.block();
    for (int c = 0; c < (1 << s.spins); ++c) {
        out.v.segment((2 * c) * b, b) = state(0) * s.v.segment(c * b, b);
        out.v.segment((2 * c + 1) * b, b) = state(1) * s.v.segment(c * b, b);
    }
    return out;
}

void hcrot_two(TwoModeState &s, int spin, int mode, double phi) {
    CVector phases(s.dim);
    for (int n = 0; n < s.dim; ++n) {
        phases(n) = std::polar(1.0, phi * n);
    }
    for (int c = 0; c < (1 << s.spins); ++c) {
        if (bit_of(c, s.spins, spin) == 0) {
            continue;
        }
        auto x = s.slice(c);
        if (mode == 0) {
            x = x * phases.asDiagonal();
        } else {
            x = phases.asDiagonal() * x;
        }
    }
}

void apply_mode(TwoModeState &s, int mode, const CMatrix &k) {
    for (int c = 0; c < (1 << s.spins); ++c) {
        auto x = s.slice(c);
        if (mode == 0) {
            x = (x * k.transpose()).eval();
        } else {
            x = (k * x).eval();
        }
    }
}

// Projects the listed spins onto `target` (indexed by their bits in list
// order) and removes them.
TwoModeState project_spins(const TwoModeState &s, const std::vector<int> &indices, const CVector &target) {
    TwoModeState out;
    out.spins = s.spins - static_cast<int>(indices.size());
    out.dim = s.dim;
    out.v = CVector::Zero(static_cast<Eigen::Index>(1 << out.spins) * s.block());
    const int b = s.block();
    for (int c = 0; c < (1 << s.spins); ++c) {
        int sel = 0;
        for (int i : indices) {
            sel = (sel << 1) | bit_of(c, s.spins, i);
        }
        cplx w = std::conj(target(sel));
        if (w == cplx(0.0)) {
            continue;
        }
        int rc = remove_bits(c, s.spins, indices);
        out.v.segment(rc * b, b) += w * s.v.segment(c * b, b);
    }
    return out;
}

CVector project_modes(TwoModeState &s, const FockVector &u1, const FockVector &u2) {
    CVector out(1 << s.spins);
    CVector a1 = u1.resized(s.dim - 1).amps.conjugate();
    CVector a2 = u2.resized(s.dim - 1).amps;
    for (int c = 0; c < (1 << s.spins); ++c) {
        out(c) = a2.dot(s.slice(c) * a1);
    }
    return out;
}

struct Branch {
    TwoModeState state;
    int r1 = 0;
    int r2 = 0;
};

// Syndrome extraction on both modes, following every outcome.
std::vector<Branch> syndromes(const TwoModeState &start, int m) {
    std::vector<Branch> live{{start, 0, 0}};
    for (int mode = 0; mode < 2; ++mode) {
        for (int k = 1; k <= m; ++k) {
            const double phi = M_PI / static_cast<double>(1 << (k - 1));
            std::vector<Branch> next;
            for (const auto &b : live) {
                TwoModeState t = add_spin_back(b.state, kPlus);
                hcrot_two(t, t.spins - 1, mode, phi);
                int r = mode == 0 ? b.r1 : b.r2;
                SpinBasis basis = SpinBasis::phased(-r * phi);
                for (int o = 0; o < 2; ++o) {
                    CVector target = basis.states[o];
                    Branch n{project_spins(t, {t.spins - 1}, target), b.r1, b.r2};
                    if (n.state.v.squaredNorm() < 1e-300) {
                        continue;
                    }
                    (mode == 0 ? n.r1 : n.r2) = r + o * (1 << (k - 1));
                    next.push_back(std::move(n));
                }
            }
            live = std::move(next);
        }
    }
    return live;
}

std::vector<int> relevant_losses(const CatCodeSpec &spec, int dim, double eta, const TruncationPolicy &policy) {
    FockVector c0 = codeword(spec, 0, policy).resized(dim - 1);
    std::vector<int> ks;
    double covered = 0.0;
    for (int k = 0; k < dim; ++k) {
        double w = 0.0;
        for (int n = k; n < dim; ++n) {
            double c = kraus_coefficient(k, n, eta);
            w += c * c * std::norm(c0.amps(n));
        }
        ks.push_back(k);
        covered += w;
        if (covered > 1.0 - 1e-16 || eta == 1.0) {
            break;
        }
    }
    return ks;
}

using Key = std::tuple<int, int, int>;  // (Bell outcome, r1, r2)

// Transmission, syndrome, entanglement and USD "0" on a two-mode state;
// the two end spins are appended after any spins already present.
template <typename Sink>
void run_far_side(const CatCodeSpec &spec, const TwoModeState &start, const std::vector<int> &losses,
                  const TruncationPolicy &policy, Sink &&sink) {
    const int order = spec.order();
    std::map<int, FockVector> dual;
    auto dual_for = [&](int r) -> const FockVector & {
        auto it = dual.find(r);
        if (it == dual.end()) {
            FockVector e0 = error_space_state(spec, 0, r, policy).state;
            FockVector e1 = error_space_state(spec, 1, r, policy).state;
            it = dual.emplace(r, dual_vector(e0, e1)).first;
        }
        return it->second;
    };
    for (int k1 : losses) {
        CMatrix a1 = kraus_op(k1, spec.eta, start.dim);
        for (int k2 : losses) {
            CMatrix a2 = kraus_op(k2, spec.eta, start.dim);
            TwoModeState s = start;
            apply_mode(s, 0, a1);
            apply_mode(s, 1, a2);
            if (s.v.squaredNorm() < 1e-300) {
                continue;
            }
            for (auto &b : syndromes(s, spec.m)) {
                TwoModeState t = add_spin_back(b.state, kPlus);
                hcrot_two(t, t.spins - 1, 0, M_PI / order);
                t = add_spin_back(t, kPlus);
                hcrot_two(t, t.spins - 1, 1, M_PI / order);
                sink(b.r1, b.r2, project_modes(t, dual_for(b.r1), dual_for(b.r2)));
            }
        }
    }
}

}  // namespace

OrderEquivalence bell_order_equivalence(int m, double alpha, double eta, const TruncationPolicy &policy) {
    CatCodeSpec spec{m, alpha, eta};
    spec.validate();
    TwoModeState start = two_unit_state(spec, policy);
    std::vector<int> losses = relevant_losses(spec, start.dim, eta, policy);
    const BellOutcome outcomes[4] = {BellOutcome::phi_plus, BellOutcome::phi_minus, BellOutcome::psi_plus,
                                     BellOutcome::psi_minus};

    std::map<Key, Eigen::Matrix4cd> early;
    std::map<Key, Eigen::Matrix4cd> late;
    auto accumulate = [](std::map<Key, Eigen::Matrix4cd> &into, const Key &key, const CVector &w) {
        auto it = into.find(key);
        if (it == into.end()) {
            it = into.emplace(key, Eigen::Matrix4cd::Zero()).first;
        }
        it->second += w * w.adjoint();
    };

    // Bell measurement on the middle spins first, then everything else.
    for (int o = 0; o < 4; ++o) {
        TwoModeState s = project_spins(start, {0, 1}, bell_vector(outcomes[o]));
        run_far_side(spec, s, losses, policy,
                     [&](int r1, int r2, const CVector &w) { accumulate(early, Key{o, r1, r2}, w); });
    }
    // Everything else first, Bell measurement last.
    run_far_side(spec, start, losses, policy, [&](int r1, int r2, const CVector &w) {
        TwoModeState tail;
        tail.spins = 4;
        tail.dim = 1;
        tail.v = w;
        for (int o = 0; o < 4; ++o) {
            TwoModeState rest = project_spins(tail, {0, 1}, bell_vector(outcomes[o]));
            accumulate(late, Key{o, r1, r2}, rest.v);
        }
    });

    OrderEquivalence out;
    for (const auto &[key, rho_a] : early) {
        auto it = late.find(key);
        Eigen::Matrix4cd rho_b = it == late.end() ? Eigen::Matrix4cd::Zero() : it->second;
        double pa = rho_a.trace().real();
        double pb = rho_b.trace().real();
        out.max_probability_gap = std::max(out.max_probability_gap, std::abs(pa - pb));
        if (std::max(pa, pb) < 1e-12) {
            continue;
        }
        if (pa <= 0.0 || pb <= 0.0) {
            out.max_trace_distance = 1.0;
            continue;
        }
        CMatrix na = rho_a / pa;
        CMatrix nb = rho_b / pb;
        out.max_trace_distance = std::max(out.max_trace_distance, trace_distance(na, nb));
        ++out.compared_branches;
    }
    for (const auto &[key, rho_b] : late) {
        if (early.find(key) == early.end()) {
            out.max_probability_gap = std::max(out.max_probability_gap, rho_b.trace().real());
        }
    }
    return out;
}

double bell_first_branch_fidelity(int m, double alpha, const TruncationPolicy &policy) {
    CatCodeSpec spec{m, alpha, 1.0};
    spec.validate();
    const int order = spec.order();
    TwoModeState s = project_spins(two_unit_state(spec, policy), {0, 1}, bell_vector(BellOutcome::phi_plus));
    s = add_spin_back(s, kPlus);
    hcrot_two(s, 0, 0, M_PI / order);
    s = add_spin_back(s, kPlus);
    hcrot_two(s, 1, 1, M_PI / order);

    FockVector c0 = codeword(spec, 0, policy);
    FockVector c1 = codeword(spec, 1, policy);
    const FockVector *c[2] = {&c0, &c1};
    TwoModeState target = s;
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
            // |a b> pairs with |x y> + |x^1 y^1> where x ^ y = a ^ b.
            int x = 0;
            int y = a ^ b;
            target.slice(a * 2 + b) = 0.5 * (c[y]->amps * c[x]->amps.transpose() +
                                             c[y ^ 1]->amps * c[x ^ 1]->amps.transpose());
        }
    }
    cplx ov = target.v.dot(s.v);
    return std::norm(ov) / (target.v.squaredNorm() * s.v.squaredNorm());
}

}  // namespace catrep
