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

// Command-line front end. Talks to the library only through catrep.h.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "catrep/catrep.h"

namespace {

struct ConfigDeleter {
    void operator()(catrep_config *c) const {
        catrep_config_destroy(c);
    }
};
struct BufferDeleter {
    void operator()(catrep_buffer *b) const {
        catrep_buffer_destroy(b);
    }
};
using ConfigPtr = std::unique_ptr<catrep_config, ConfigDeleter>;
using BufferPtr = std::unique_ptr<catrep_buffer, BufferDeleter>;

// Thrown to unwind with a library status.
struct Failure {
    catrep_status status;
    std::string message;
};

void check(catrep_status s) {
    if (s != CATREP_OK) {
        throw Failure{s, catrep_last_error()};
    }
}

struct Options {
    std::string config_path;
    std::string out_path;
    std::string format;
    int threads = 0;
    std::string alpha, l0, m, eta_local, l_tot, l_att, t0;
    std::vector<std::string> sets;
};

void write_file(const std::string &path, const std::string &text) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f || !(f << text) || !f.flush()) {
        throw Failure{CATREP_ERR_USAGE, "cannot write '" + path + "'"};
    }
}

ConfigPtr build_config(const Options &o, const std::string &command) {
    catrep_config *raw = nullptr;
    check(catrep_config_create(&raw));
    ConfigPtr cfg(raw);
    if (!o.config_path.empty()) {
        check(catrep_config_load_file(cfg.get(), o.config_path.c_str()));
    }
    // Grid flags address the section the subcommand reads.
    std::string grid = command == "usd" ? "usd" : command == "validate" ? "validate" : "code";
    std::vector<std::pair<std::string, std::string>> flags{
        {grid + ".alpha", o.alpha},          {"chain.l0_km", o.l0},      {grid + ".m", o.m},
        {"chain.eta_local", o.eta_local},    {"chain.l_tot_km", o.l_tot}, {"chain.l_att_km", o.l_att},
        {"chain.t0_s", o.t0},                {"output.format", o.format}};
    if (command == "usd" && !o.m.empty()) {
        throw Failure{CATREP_ERR_USAGE, "usd tables are for the 1-loss code; --m does not apply"};
    }
    for (const auto &[key, value] : flags) {
        if (!value.empty()) {
            check(catrep_config_set(cfg.get(), key.c_str(), value.c_str()));
        }
    }
    for (const auto &kv : o.sets) {
        auto eq = kv.find('=');
        if (eq == std::string::npos) {
            throw Failure{CATREP_ERR_USAGE, "--set expects key=value, got '" + kv + "'"};
        }
        check(catrep_config_set(cfg.get(), kv.substr(0, eq).c_str(), kv.substr(eq + 1).c_str()));
    }
    return cfg;
}

int run(const Options &o, const std::string &command) {
    ConfigPtr cfg = build_config(o, command);
    const catrep_format format = catrep_config_format(cfg.get());
    const int threads = o.threads > 0 ? o.threads : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));

    catrep_buffer *raw = nullptr;
    catrep_status status = CATREP_OK;
    if (command == "sweep") {
        status = catrep_run_sweep(cfg.get(), format, threads, &raw);
    } else if (command == "keyrate") {
        status = catrep_run_keyrate(cfg.get(), format, &raw);
    } else if (command == "cavity") {
        status = catrep_run_cavity(cfg.get(), format, &raw);
    } else if (command == "usd") {
        status = catrep_run_usd(cfg.get(), format, threads, &raw);
    } else {
        status = catrep_run_validate(cfg.get(), threads, &raw);
    }
    BufferPtr data(raw);
    std::string error = status == CATREP_OK ? "" : catrep_last_error();
    if (data == nullptr) {
        throw Failure{status, error};
    }
    std::string text(catrep_buffer_data(data.get()), catrep_buffer_size(data.get()));
    if (o.out_path.empty()) {
        std::cout << text << std::flush;
    } else {
        write_file(o.out_path, text);
        catrep_buffer *meta = nullptr;
        check(catrep_run_metadata(cfg.get(), command.c_str(), threads, &meta));
        BufferPtr meta_owner(meta);
        write_file(o.out_path + ".meta.json", catrep_buffer_data(meta));
        if (command == "validate") {
            std::cout << text << std::flush;
        }
    }
    if (status != CATREP_OK) {
        throw Failure{status, error};
    }
    return 0;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Cat-code quantum repeater simulator"};
    app.set_version_flag("--version", catrep_version());
    app.require_subcommand(1);
    app.fallthrough();

    Options o;
    app.add_option("--config", o.config_path, "JSON config file")->check(CLI::ExistingFile);
    app.add_option("--out", o.out_path, "Write data here; run metadata goes to PATH.meta.json");
    app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "jsonl"}));
    app.add_option("--threads", o.threads, "Worker threads (0 = all cores)")->check(CLI::NonNegativeNumber);
    app.add_option("--alpha", o.alpha, "Cat amplitude grid: a,b,c or start:stop:step");
    app.add_option("--l0", o.l0, "Elementary distance grid in km");
    app.add_option("--m", o.m, "Code depth grid (M = 2^m)");
    app.add_option("--eta-local", o.eta_local, "Local transmission grid");
    app.add_option("--l-tot", o.l_tot, "Total distance in km");
    app.add_option("--l-att", o.l_att, "Attenuation length in km");
    app.add_option("--t0", o.t0, "Repetition time in seconds");
    app.add_option("--set", o.sets, "Any config field: section.field=value");

    std::vector<std::pair<std::string, std::string>> commands{
        {"sweep", "Rate and fidelity table over (m, alpha, L0, eta_local)"},
        {"validate", "Fock-space oracle against the analytic engine"},
        {"cavity", "Ideal against full cavity reflection phase"},
        {"usd", "Optimal against beam-splitter discrimination, 1-loss code"},
        {"keyrate", "Single-point key rate with both key-fraction estimates"}};
    for (const auto &[name, help] : commands) {
        app.add_subcommand(name, help);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? 0 : CATREP_ERR_USAGE;
    }
    std::string command = app.get_subcommands().front()->get_name();
    try {
        return run(o, command);
    } catch (const Failure &f) {
        std::cerr << "catrep " << command << ": " << f.message << "\n";
        return static_cast<int>(f.status);
    }
}
