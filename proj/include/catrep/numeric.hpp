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

#ifndef CATREP_NUMERIC_HPP
#define CATREP_NUMERIC_HPP

#include <cstddef>
#include <functional>
#include <limits>

namespace catrep {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

/// ln(n!) via lgamma.
double log_factorial(long n);

/// ln C(n, k); -inf outside 0 <= k <= n.
double log_binomial(long n, long k);

/// ln(exp(a) + exp(b)) without overflow; -inf acts as the identity.
double log_add(double a, double b);

/// Running log-domain sum of positive terms.
class LogSum {
   public:
    void add(double log_term);
    double value() const {
        return acc_;
    }
    bool empty() const {
        return acc_ == kNegInf;
    }

   private:
    double acc_ = kNegInf;
};

/// Sums exp(log_term(k)) over k = first, first + stride, ... for a unimodal
/// sequence, stopping once past `peak_hint` and the next term falls below
/// `rel_tol` times the running sum. Returns the log of the sum.
double log_series(const std::function<double(long)> &log_term, long first, long stride, double peak_hint,
                  double rel_tol = 1e-17, long max_index = 200000);

/// Binary entropy in bits with h(0) = h(1) = 0.
double binary_entropy(double p);

/// 1 - h(e) for an error rate e < 1/2, and zero from 1/2 upward.
double key_fraction_from_error(double e);

/// Calls fn(i) for i in [0, n) on up to `threads` workers. Results must be
/// written into caller-owned slots indexed by i.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)> &fn);

}  // namespace catrep

#endif
