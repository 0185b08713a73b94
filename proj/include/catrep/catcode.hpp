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

#ifndef CATREP_CATCODE_HPP
#define CATREP_CATCODE_HPP

#include <utility>
#include <vector>

#include "catrep/fockspace.hpp"

namespace catrep {

/// Cat code of order M = 2^m with real amplitude alpha, seen through a
/// channel of transmission eta.
struct CatCodeSpec {
    int m = 1;
    double alpha = 1.0;
    double eta = 1.0;

    int order() const {
        return 1 << m;
    }
    int loss_order() const {
        return order() - 1;
    }
    void validate() const;
};

/// Rotation-symmetric codeword built from an arbitrary primitive:
/// sum_k R(2 k pi / M)|theta> (logical 0) or sum_k R((2k+1) pi / M)|theta>
/// (logical 1), normalized. Evaluated through the equivalent photon-number
/// filter so small amplitudes do not cancel.
FockVector codeword(int m, int logical, const FockVector &primitive);

/// Cat codeword with primitive |alpha>.
FockVector codeword(const CatCodeSpec &spec, int logical, const TruncationPolicy &policy = {});

/// Cat codeword with primitive |sqrt(eta) alpha>, on the cutoff of the
/// undamped code.
FockVector damped_codeword(const CatCodeSpec &spec, int logical, const TruncationPolicy &policy = {});

struct ErrorSpaceState {
    FockVector state;  // normalized
    double norm2 = 0;  // ||a^q |damped codeword>||^2 before normalization
};
ErrorSpaceState error_space_state(const CatCodeSpec &spec, int logical, int q, const TruncationPolicy &policy = {});

/// Probabilities of the loss count modulo 2M, indexed by q in [0, 2M).
struct LossWeights {
    std::vector<double> p;
    /// sum of p[q] for q >= M, computed directly so it stays accurate when
    /// it is far below machine epsilon relative to one.
    double uncorrectable = 0;

    int order() const {
        return static_cast<int>(p.size()) / 2;
    }
};

LossWeights loss_weights(const CatCodeSpec &spec);

/// Correctable mass sum_{q < M} p_q.
double segment_fidelity(const CatCodeSpec &spec);

/// <0~^q | 1~^q> for the normalized error-space states, from its series.
/// The value is real.
double error_space_overlap(const CatCodeSpec &spec, int q);

/// Orthogonal pair (|0> + |1>)/norm and (|0> - |1>)/norm from the
/// normalized codewords.
std::pair<FockVector, FockVector> orthogonal_codewords(const CatCodeSpec &spec, const TruncationPolicy &policy = {});

/// Squared norms of |0> + |1> and |0> - |1>: 2 + 2 Re<0|1> and 2 - 2 Re<0|1>.
std::pair<double, double> orthogonal_norms(const CatCodeSpec &spec);

}  // namespace catrep

#endif
