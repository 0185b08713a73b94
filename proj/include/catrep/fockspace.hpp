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

#ifndef CATREP_FOCKSPACE_HPP
#define CATREP_FOCKSPACE_HPP

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace catrep {

using cplx = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using Spinor = Eigen::Vector2cd;

/// Photon-number cutoff rule and tail budget shared by every Fock-space
/// constructor.
struct TruncationPolicy {
    double tail_tol = 1e-12;
    int hard_limit = 600;

    /// ceil(|a|^2 + 8|a| + 20): an 8-sigma Poisson margin plus headroom.
    int n_max(double abs_alpha) const;
    /// Throws NumericalError if n_max exceeds hard_limit.
    void check_cutoff(int n_max) const;
};

/// Pure single-mode state over photon numbers 0..n_max.
struct FockVector {
    CVector amps;

    FockVector() = default;
    explicit FockVector(CVector a) : amps(std::move(a)) {
    }
    static FockVector basis(int n_max, int n);

    int n_max() const {
        return static_cast<int>(amps.size()) - 1;
    }
    int dim() const {
        return static_cast<int>(amps.size());
    }
    double norm() const {
        return amps.norm();
    }
    double norm2() const {
        return amps.squaredNorm();
    }
    FockVector normalized() const;
    /// Zero-padded or truncated copy.
    FockVector resized(int n_max) const;
};

/// <a|b>, padding the shorter vector with zeros.
cplx inner(const FockVector &a, const FockVector &b);

/// Single-mode density matrix.
struct FockDensity {
    CMatrix rho;

    FockDensity() = default;
    explicit FockDensity(CMatrix r) : rho(std::move(r)) {
    }
    static FockDensity from_pure(const FockVector &v);

    int dim() const {
        return static_cast<int>(rho.rows());
    }
    double trace() const {
        return rho.trace().real();
    }
};

/// Register of two-level spins tensored with one mode. Spins are ordered left
/// to right, spin 0 most significant, mode last: index = spin_bits * dim + n.
/// |up> is bit 0, |down> is bit 1.
struct HybridDensity {
    int spins = 0;
    int dim = 0;
    CMatrix rho;

    static HybridDensity from_pure(int spins, int dim, const CVector &psi);
    /// Product of spin states (declaration order) and a mode state.
    static HybridDensity product(const std::vector<Spinor> &spin_states, const FockVector &mode);

    int spin_dim() const {
        return 1 << spins;
    }
    double trace() const {
        return rho.trace().real();
    }
    auto block(int a, int b) {
        return rho.block(a * dim, b * dim, dim, dim);
    }
    auto block(int a, int b) const {
        return rho.block(a * dim, b * dim, dim, dim);
    }
};

/// Health numbers for a density matrix.
struct DensityCheck {
    double hermiticity = 0;  // max |rho - rho^dagger|
    double trace = 0;
    double min_eigenvalue = 0;
    bool ok(double trace_slack = 1e-9, double herm_tol = 1e-12, double eig_floor = -1e-9) const;
};
DensityCheck check_density(const CMatrix &rho);

/// Trace distance 1/2 ||a - b||_1 for Hermitian a, b.
double trace_distance(const CMatrix &a, const CMatrix &b);

FockVector coherent_state(cplx alpha, const TruncationPolicy &policy = {});
/// Explicit cutoff; still enforces the tail budget.
FockVector coherent_state(cplx alpha, int n_max, const TruncationPolicy &policy = {});

/// amps[n] <- exp(i phi n) amps[n].
FockVector rotation_apply(double phi, const FockVector &v);

/// Applies the annihilation operator q times; result is unnormalized.
FockVector annihilate(const FockVector &v, int q);

/// Matrix of the k-photon loss Kraus operator on a dim-dimensional space.
CMatrix kraus_op(int k, double eta, int dim);
/// Real coefficient c_k(n) = sqrt(C(n,k) eta^(n-k) (1-eta)^k) of |n-k><n|.
double kraus_coefficient(int k, int n, double eta);

FockDensity amplitude_damping(const FockDensity &rho, double eta, const TruncationPolicy &policy = {});
/// Damps the mode factor only; spins are untouched.
HybridDensity amplitude_damping(const HybridDensity &s, double eta, const TruncationPolicy &policy = {});

/// |up><up| (x) 1 + |down><down| (x) exp(i phi n) on the chosen spin.
HybridDensity hcrot(double phi, const HybridDensity &s, int spin_index);

/// Inserts a fresh spin in the given state at `position` (0 = leftmost).
HybridDensity add_spin(const HybridDensity &s, int position, const Spinor &state);

/// An orthonormal pair of spin states with outcome labels.
struct SpinBasis {
    Spinor states[2];
    std::string labels[2];

    static SpinBasis z();
    static SpinBasis x();
    static SpinBasis y();
    /// (|up> +- e^{i theta}|down>)/sqrt 2, labeled "+" and "-".
    static SpinBasis phased(double theta);
    static SpinBasis custom(const Spinor &a, const Spinor &b, std::string label_a, std::string label_b);
};

struct MeasurementBranch {
    int outcome = 0;
    std::string label;
    double probability = 0;
    HybridDensity state;  // renormalized
};

/// Projective measurement of one spin. Returns every branch whose
/// probability is at least `min_probability`; the measured spin is removed
/// unless keep_spin is set (then it is left in the projected state).
std::vector<MeasurementBranch> measure_spin(const HybridDensity &s, int spin_index, const SpinBasis &basis,
                                            bool keep_spin = false, double min_probability = 1e-14);

/// Unnormalized projection of one spin onto a state; removes that spin.
HybridDensity project_spin(const HybridDensity &s, int spin_index, const Spinor &state);

/// Mode density with all spins traced out.
FockDensity mode_density(const HybridDensity &s);
/// Spin density with the mode traced out.
CMatrix spin_density(const HybridDensity &s);
/// <v| rho |v> taken over the mode; an unnormalized spin density.
CMatrix project_mode(const HybridDensity &s, const FockVector &v);

}  // namespace catrep

#endif
