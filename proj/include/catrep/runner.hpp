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

#ifndef CATREP_RUNNER_HPP
#define CATREP_RUNNER_HPP

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "catrep/config.hpp"

namespace catrep {

/// Empty cells print as nothing in CSV and null in JSON lines.
using Cell = std::variant<std::monostate, double, long, bool, std::string>;

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<Cell>> rows;

    /// Doubles print in the shortest form that reads back exactly.
    std::string render(OutputFormat format) const;
};

/// Everything reported for one (m, alpha, L0, eta_local) point.
struct SweepPoint {
    int m = 1;
    double alpha = 0;
    double l0_km = 0;
    double eta_local = 1;
    long n_e = 1;
    double eta_segment = 0;
    double f0 = 0;
    double p0 = 0;
    double f_tot = 0;
    double p_tot = 0;
    double r_per_second = 0;
    double r_per_channel_use = 0;
    double plob_bound = 0;
    bool beats_plob = false;
};

SweepPoint evaluate_point(const Config &config, int m, double alpha, double l0_km, double eta_local);

/// All grid points in lexicographic (m, alpha, L0, eta_local) order, each
/// grid sorted ascending with duplicates removed.
std::vector<SweepPoint> sweep_points(const Config &config, int threads = 1);

Table sweep_table(const Config &config, int threads = 1);

/// Single-point row with both key-fraction estimates. The exact average is
/// left empty above n_e = 8.
Table keyrate_table(const Config &config);

Table cavity_table(const Config &config);

/// Optimal bound against the beam-splitter discriminator, 1-loss code.
Table usd_table(const Config &config, int threads = 1);

struct ValidationCheck {
    std::string name;
    double max_deviation = 0;
    double tolerance = 0;
    bool passed() const {
        return max_deviation <= tolerance;
    }
};

struct ValidationReport {
    std::vector<ValidationCheck> checks;
    bool passed() const;
    std::string render() const;
};

/// Oracle against analytic engine over the validate grid: F0, loss
/// weights, syndrome exactness (both angle variants) and Bell order.
ValidationReport run_validation(const Config &config, int threads = 1);

/// Sidecar metadata: command, version, UTC timestamp, effective config.
std::string run_metadata(const Config &config, const std::string &command, int threads);

const char *version_string();

}  // namespace catrep

#endif
