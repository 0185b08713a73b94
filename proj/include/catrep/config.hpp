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

#ifndef CATREP_CONFIG_HPP
#define CATREP_CONFIG_HPP

#include <string>
#include <vector>

#include "catrep/cavity.hpp"
#include "catrep/chain.hpp"
#include "catrep/fockspace.hpp"
#include "catrep/usd.hpp"

namespace catrep {

/// start, start + step, ... up to stop (inclusive, with a 1e-9 step slack).
/// Values are start + i * step, never accumulated.
std::vector<double> linear_grid(double start, double stop, double step);

struct ChainConfig {
    double l_tot_km = 1000.0;
    std::vector<double> l0_km{0.01, 0.1, 1.0, 10.0, 100.0, 1000.0};
    double l_att_km = kDefaultAttenuationLengthKm;
    double t0_s = kDefaultRepetitionTimeS;
    std::vector<double> eta_local{1.0};
    double local_applications = 1.0;
};

struct CodeConfig {
    std::vector<int> m{1, 2, 3};
    std::vector<double> alpha = linear_grid(0.05, 16.0, 0.05);
};

struct UsdConfig {
    UsdMode mode = UsdMode::weighted_average;
    int q = 0;  // class used by per_q
    ProbeVariant probes = ProbeVariant::cat;
    // Grid for the `usd` table (1-loss code).
    std::vector<double> alpha = linear_grid(0.05, 4.0, 0.05);
    double eta = 1.0;
};

struct CavityConfig {
    CavityParams params;
    std::vector<double> delta = linear_grid(-0.5, 0.5, 0.01);
};

struct ValidateConfig {
    std::vector<int> m{1, 2, 3};
    std::vector<double> alpha{0.5, 1.0, 2.0};
    std::vector<double> eta{0.9, 0.99, 0.999};
    double tol_f0 = 1e-6;
    double tol_weights = 1e-8;
    double tol_syndrome = 1e-12;
    double tol_bell_order = 1e-8;
    int bell_m = 1;
    double bell_alpha = 1.0;
    std::vector<double> bell_eta{1.0, 0.9};
};

enum class OutputFormat { csv, jsonl };

const char *to_string(OutputFormat f);
OutputFormat output_format_from_string(const std::string &name);

struct OutputConfig {
    OutputFormat format = OutputFormat::csv;
};

struct Config {
    ChainConfig chain;
    CodeConfig code;
    UsdConfig usd;
    CavityConfig cavity;
    ValidateConfig validate;
    OutputConfig output;
    TruncationPolicy truncation;

    /// Throws UsageError naming the first invalid field.
    void check() const;
};

/// Reads a JSON document with optional sections chain, code, usd, cavity,
/// validate, output, truncation on top of `base`. Unknown keys are
/// rejected. A grid is either a list or {"start", "stop", "step"}.
Config parse_config(const std::string &json_text, const Config &base = {});
Config load_config_file(const std::string &path, const Config &base = {});

/// Sets one field by dotted path, e.g. "code.alpha" = "0.5,1,2" or
/// "chain.l0_km" = "0.1:1:0.1". Scalars take a single number or name.
void apply_override(Config &config, const std::string &key, const std::string &value);

/// Canonical JSON echo of every field.
std::string config_to_json(const Config &config);

}  // namespace catrep

#endif
