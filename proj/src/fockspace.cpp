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

#include "catrep/fockspace.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "catrep/error.hpp"
#include "catrep/numeric.hpp"

namespace catrep {

namespace {

// Inserts bit x at `position` into a register value of `size` spins.
int insert_bit(int value, int size, int position, int x) {
    int low_width = size - position;
    int high = value >> low_width;
    int low = value & ((1 << low_width) - 1);
    return (high << (low_width + 1)) | (x << low_width) | low;
}

int spin_bit(int value, int size, int index) {
    return (value >> (size - 1 - index)) & 1;
}

void require_spin_index(const HybridDensity &s, int spin_index) {
    if (spin_index < 0 || spin_index >= s.spins) {
        std::ostringstream msg;
        msg << "spin index " << spin_index << " out of range for " << s.spins << " spins";
        throw UsageError(msg.str());
    }
}

void require_eta(double eta) {
    if (!(eta > 0.0 && eta <= 1.0)) {
        std::ostringstream msg;
        msg << "transmission must lie in (0, 1], got " << eta;
        throw UsageError(msg.str());
    }
}

}  // namespace

int TruncationPolicy::n_max(double abs_alpha) const {
    return static_cast<int>(std::ceil(abs_alpha * abs_alpha + 8.0 * abs_alpha + 20.0));
}

void TruncationPolicy::check_cutoff(int n) const {
    if (n > hard_limit) {
        std::ostringstream msg;
        msg << "photon-number cutoff " << n << " exceeds hard limit " << hard_limit;
        throw NumericalError(msg.str());
    }
}

FockVector FockVector::basis(int n_max, int n) {
    CVector a = CVector::Zero(n_max + 1);
    a(n) = 1.0;
    return FockVector(a);
}

FockVector FockVector::normalized() const {
    double nrm = norm();
    if (!(nrm > 0.0)) {
        throw NumericalError("cannot normalize a zero-norm Fock vector");
    }
    return FockVector(amps / nrm);
}

FockVector FockVector::resized(int n_max) const {
    CVector a = CVector::Zero(n_max + 1);
    int keep = std::min(dim(), n_max + 1);
    a.head(keep) = amps.head(keep);
    return FockVector(a);
}

cplx inner(const FockVector &a, const FockVector &b) {
    int n = std::min(a.dim(), b.dim());
    return a.amps.head(n).dot(b.amps.head(n));
}

FockDensity FockDensity::from_pure(const FockVector &v) {
    return FockDensity(v.amps * v.amps.adjoint());
}

HybridDensity HybridDensity::from_pure(int spins, int dim, const CVector &psi) {
    HybridDensity h;
    h.spins = spins;
    h.dim = dim;
    h.rho = psi * psi.adjoint();
    return h;
}

HybridDensity HybridDensity::product(const std::vector<Spinor> &spin_states, const FockVector &mode) {
    CVector psi = mode.amps;
    for (auto it = spin_states.rbegin(); it != spin_states.rend(); ++it) {
        CVector next(2 * psi.size());
        next.head(psi.size()) = (*it)(0) * psi;
        next.tail(psi.size()) = (*it)(1) * psi;
        psi = std::move(next);
    }
    return from_pure(static_cast<int>(spin_states.size()), mode.dim(), psi);
}

bool DensityCheck::ok(double trace_slack, double herm_tol, double eig_floor) const {
    return hermiticity <= herm_tol && trace >= -trace_slack && trace <= 1.0 + trace_slack &&
           min_eigenvalue >= eig_floor;
}

DensityCheck check_density(const CMatrix &rho) {
    DensityCheck c;
    c.hermiticity = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
    c.trace = rho.trace().real();
    CMatrix h = 0.5 * (rho + rho.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> es(h, Eigen::EigenvaluesOnly);
    c.min_eigenvalue = es.eigenvalues().minCoeff();
    return c;
}

double trace_distance(const CMatrix &a, const CMatrix &b) {
    CMatrix d = a - b;
    d = 0.5 * (d + d.adjoint()).eval();
    Eigen::SelfAdjointEigenSolver<CMatrix> es(d, Eigen::EigenvaluesOnly);
    return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

FockVector coherent_state(cplx alpha, const TruncationPolicy &policy) {
    return coherent_state(alpha, policy.n_max(std::abs(alpha)), policy);
}

FockVector coherent_state(cplx alpha, int n_max, const TruncationPolicy &policy) {
    policy.check_cutoff(n_max);
    double r = std::abs(alpha);
    if (r == 0.0) {
        return FockVector::basis(n_max, 0);
    }
    double theta = std::arg(alpha);
    double log_r = std::log(r);
    CVector a(n_max + 1);
    for (int n = 0; n <= n_max; ++n) {
        double log_mag = -0.5 * r * r + n * log_r - 0.5 * log_factorial(n);
        a(n) = std::polar(std::exp(log_mag), theta * n);
    }
    // Poisson mass beyond the cutoff, summed directly rather than as 1 - norm.
    double log_tail = log_series([&](long n) { return -r * r + 2.0 * n * log_r - log_factorial(n); }, n_max + 1,
                                 1, r * r);
    if (std::exp(log_tail) > policy.tail_tol) {
        std::ostringstream msg;
        msg << "coherent state |alpha|=" << r << " leaves tail mass " << std::exp(log_tail) << " beyond n_max=" << n_max;
        throw NumericalError(msg.str());
    }
    return FockVector(a);
}

FockVector rotation_apply(double phi, const FockVector &v) {
    CVector a = v.amps;
    for (int n = 0; n < v.dim(); ++n) {
        a(n) *= std::polar(1.0, phi * n);
    }
    return FockVector(a);
}

FockVector annihilate(const FockVector &v, int q) {
    if (q < 0) {
        throw UsageError("annihilation count must be non-negative");
    }
    CVector a = v.amps;
    int d = v.dim();
    for (int step = 0; step < q; ++step) {
        for (int n = 0; n + 1 < d; ++n) {
            a(n) = std::sqrt(static_cast<double>(n + 1)) * a(n + 1);
        }
        a(d - 1) = 0.0;
    }
    return FockVector(a);
}

double kraus_coefficient(int k, int n, double eta) {
    if (n < k || k < 0) {
        return 0.0;
    }
    if (eta == 1.0) {
        return k == 0 ? 1.0 : 0.0;
    }
    double log_c = log_binomial(n, k) + (n - k) * std::log(eta) + k * std::log1p(-eta);
    return std::exp(0.5 * log_c);
}

CMatrix kraus_op(int k, double eta, int dim) {
    require_eta(eta);
    if (k < 0) {
        throw UsageError("loss count must be non-negative");
    }
    CMatrix a = CMatrix::Zero(dim, dim);
    for (int n = k; n < dim; ++n) {
        a(n - k, n) = kraus_coefficient(k, n, eta);
    }
    return a;
}

namespace {

// Accumulates sum_k A_k X A_k^dagger for every spin block of a dim-blocked
// matrix. The loss sum stops once the added trace reaches (1 - tail_tol) of
// the input trace.
CMatrix damp_blocks(const CMatrix &rho, int dim, int blocks, double eta, double tail_tol) {
    CMatrix out = CMatrix::Zero(rho.rows(), rho.cols());
    double total = 0.0;
    for (int a = 0; a < blocks; ++a) {
        total += rho.block(a * dim, a * dim, dim, dim).trace().real();
    }
    double added = 0.0;
    for (int k = 0; k < dim; ++k) {
        int len = dim - k;
        Eigen::VectorXd c(len);
        for (int i = 0; i < len; ++i) {
            c(i) = kraus_coefficient(k, i + k, eta);
        }
        Eigen::MatrixXd w = c * c.transpose();
        for (int a = 0; a < blocks; ++a) {
            for (int b = 0; b < blocks; ++b) {
                auto src = rho.block(a * dim + k, b * dim + k, len, len);
                out.block(a * dim, b * dim, len, len) += src.cwiseProduct(w.cast<cplx>());
            }
            added += (rho.block(a * dim + k, a * dim + k, len, len).diagonal().real().cwiseProduct(c.cwiseProduct(c)))
                         .sum();
        }
        if (total > 0.0 && added >= total * (1.0 - tail_tol)) {
            break;
        }
    }
    return out;
}

}  // namespace

FockDensity amplitude_damping(const FockDensity &rho, double eta, const TruncationPolicy &policy) {
    require_eta(eta);
    if (eta == 1.0) {
        return rho;
    }
    return FockDensity(damp_blocks(rho.rho, rho.dim(), 1, eta, policy.tail_tol));
}

HybridDensity amplitude_damping(const HybridDensity &s, double eta, const TruncationPolicy &policy) {
    require_eta(eta);
    if (eta == 1.0) {
        return s;
    }
    HybridDensity out = s;
    out.rho = damp_blocks(s.rho, s.dim, s.spin_dim(), eta, policy.tail_tol);
    return out;
}

HybridDensity hcrot(double phi, const HybridDensity &s, int spin_index) {
    require_spin_index(s, spin_index);
    CVector d(s.rho.rows());
    for (int a = 0; a < s.spin_dim(); ++a) {
        bool down = spin_bit(a, s.spins, spin_index) == 1;
        for (int n = 0; n < s.dim; ++n) {
            d(a * s.dim + n) = down ? std::polar(1.0, phi * n) : cplx(1.0);
        }
    }
    HybridDensity out = s;
    out.rho = (d.asDiagonal() * s.rho * d.conjugate().asDiagonal()).eval();
    return out;
}

HybridDensity add_spin(const HybridDensity &s, int position, const Spinor &state) {
    if (position < 0 || position > s.spins) {
        throw UsageError("spin insertion position out of range");
    }
    HybridDensity out;
    out.spins = s.spins + 1;
    out.dim = s.dim;
    out.rho = CMatrix::Zero(2 * s.rho.rows(), 2 * s.rho.cols());
    for (int a = 0; a < s.spin_dim(); ++a) {
        for (int b = 0; b < s.spin_dim(); ++b) {
            for (int x = 0; x < 2; ++x) {
                for (int y = 0; y < 2; ++y) {
                    int na = insert_bit(a, s.spins, position, x);
                    int nb = insert_bit(b, s.spins, position, y);
                    out.block(na, nb) = state(x) * std::conj(state(y)) * s.block(a, b);
                }
            }
        }
    }
    return out;
}

HybridDensity project_spin(const HybridDensity &s, int spin_index, const Spinor &state) {
    require_spin_index(s, spin_index);
    HybridDensity out;
    out.spins = s.spins - 1;
    out.dim = s.dim;
    out.rho = CMatrix::Zero(s.rho.rows() / 2, s.rho.cols() / 2);
    for (int a = 0; a < out.spin_dim(); ++a) {
        for (int b = 0; b < out.spin_dim(); ++b) {
            for (int x = 0; x < 2; ++x) {
                for (int y = 0; y < 2; ++y) {
                    cplx w = std::conj(state(x)) * state(y);
                    if (w == cplx(0.0)) {
                        continue;
                    }
                    int oa = insert_bit(a, out.spins, spin_index, x);
                    int ob = insert_bit(b, out.spins, spin_index, y);
                    out.block(a, b) += w * s.block(oa, ob);
                }
            }
        }
    }
    return out;
}

SpinBasis SpinBasis::z() {
    return custom(Spinor(1, 0), Spinor(0, 1), "up", "down");
}

SpinBasis SpinBasis::x() {
    return phased(0.0);
}

SpinBasis SpinBasis::y() {
    return phased(M_PI / 2);
}

SpinBasis SpinBasis::phased(double theta) {
    double h = 1.0 / std::sqrt(2.0);
    cplx e = std::polar(1.0, theta);
    return custom(Spinor(h, h * e), Spinor(h, -h * e), "+", "-");
}

SpinBasis SpinBasis::custom(const Spinor &a, const Spinor &b, std::string label_a, std::string label_b) {
    if (std::abs(a.norm() - 1.0) > 1e-12 || std::abs(b.norm() - 1.0) > 1e-12 || std::abs(a.dot(b)) > 1e-12) {
        throw UsageError("spin measurement basis is not orthonormal");
    }
    SpinBasis out;
    out.states[0] = a;
    out.states[1] = b;
    out.labels[0] = std::move(label_a);
    out.labels[1] = std::move(label_b);
    return out;
}

std::vector<MeasurementBranch> measure_spin(const HybridDensity &s, int spin_index, const SpinBasis &basis,
                                            bool keep_spin, double min_probability) {
    require_spin_index(s, spin_index);
    double total = s.trace();
    std::vector<MeasurementBranch> out;
    for (int o = 0; o < 2; ++o) {
        HybridDensity p = project_spin(s, spin_index, basis.states[o]);
        double prob = p.trace() / total;
        if (!(prob >= min_probability)) {
            continue;
        }
        p.rho /= p.trace();
        if (keep_spin) {
            p = add_spin(p, spin_index, basis.states[o]);
        }
        out.push_back(MeasurementBranch{o, basis.labels[o], prob, std::move(p)});
    }
    return out;
}

FockDensity mode_density(const HybridDensity &s) {
    CMatrix m = CMatrix::Zero(s.dim, s.dim);
    for (int a = 0; a < s.spin_dim(); ++a) {
        m += s.block(a, a);
    }
    return FockDensity(m);
}

CMatrix spin_density(const HybridDensity &s) {
    CMatrix r(s.spin_dim(), s.spin_dim());
    for (int a = 0; a < s.spin_dim(); ++a) {
        for (int b = 0; b < s.spin_dim(); ++b) {
            r(a, b) = s.block(a, b).trace();
        }
    }
    return r;
}

CMatrix project_mode(const HybridDensity &s, const FockVector &v) {
    CVector u = v.resized(s.dim - 1).amps;
    CMatrix r(s.spin_dim(), s.spin_dim());
    for (int a = 0; a < s.spin_dim(); ++a) {
        for (int b = 0; b < s.spin_dim(); ++b) {
            r(a, b) = u.dot(s.block(a, b) * u);
        }
    }
    return r;
}

}  // namespace catrep
