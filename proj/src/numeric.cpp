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

#include "catrep/numeric.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace catrep {

double log_factorial(long n) {
    return std::lgamma(static_cast<double>(n) + 1.0);
}

double log_binomial(long n, long k) {
    if (k < 0 || k > n) {
        return kNegInf;
    }
    return log_factorial(n) - log_factorial(k) - log_factorial(n - k);
}

double log_add(double a, double b) {
    if (a == kNegInf) {
        return b;
    }
    if (b == kNegInf) {
        return a;
    }
    double hi = std::max(a, b);
    double lo = std::min(a, b);
    return hi + std::log1p(std::exp(lo - hi));
}

void LogSum::add(double log_term) {
    acc_ = log_add(acc_, log_term);
}

double log_series(const std::function<double(long)> &log_term, long first, long stride, double peak_hint,
                  double rel_tol, long max_index) {
    LogSum sum;
    double log_tol = std::log(rel_tol);
    for (long k = first; k <= max_index; k += stride) {
        double t = log_term(k);
        sum.add(t);
        if (static_cast<double>(k) > peak_hint && t - sum.value() < log_tol) {
            break;
        }
    }
    return sum.value();
}

double binary_entropy(double p) {
    if (p <= 0.0 || p >= 1.0) {
        return 0.0;
    }
    return -(p * std::log2(p) + (1.0 - p) * std::log2(1.0 - p));
}

double key_fraction_from_error(double e) {
    if (e <= 0.0) {
        return 1.0;
    }
    if (e >= 0.5) {
        return 0.0;
    }
    // (1 - e) log2(1 - e) via log1p keeps precision for tiny e.
    double h = -(e * std::log2(e) + (1.0 - e) * std::log1p(-e) / std::log(2.0));
    return std::max(0.0, 1.0 - h);
}

void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)> &fn) {
    if (threads <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) {
            fn(i);
        }
        return;
    }
    std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(threads), n);
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            while (true) {
                std::size_t i = next.fetch_add(1);
                if (i >= n) {
                    return;
                }
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(failure_mutex);
                    if (!failure) {
                        failure = std::current_exception();
                    }
                    next.store(n);
                    return;
                }
            }
        });
    }
    for (auto &t : pool) {
        t.join();
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
}

}  // namespace catrep
