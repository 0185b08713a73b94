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

#include "catrep/catrep.h"

#include <exception>
#include <new>
#include <string>

#include "catrep/catcode.hpp"
#include "catrep/chain.hpp"
#include "catrep/config.hpp"
#include "catrep/error.hpp"
#include "catrep/runner.hpp"
#include "catrep/usd.hpp"

struct catrep_config {
    catrep::Config value;
};

struct catrep_buffer {
    std::string text;
};

namespace {

thread_local std::string g_last_error;

catrep_status fail(catrep_status s, const char *what) {
    g_last_error = what;
    return s;
}

// Runs fn and maps exceptions onto status codes.
template <typename Fn>
catrep_status guarded(Fn &&fn) {
    g_last_error.clear();
    try {
        return fn();
    } catch (const catrep::Error &e) {
        switch (e.kind()) {
            case catrep::ErrorKind::usage:
                return fail(CATREP_ERR_USAGE, e.what());
            case catrep::ErrorKind::validation:
                return fail(CATREP_ERR_VALIDATION, e.what());
            case catrep::ErrorKind::numerical:
                return fail(CATREP_ERR_NUMERICAL, e.what());
            default:
                return fail(CATREP_ERR_INTERNAL, e.what());
        }
    } catch (const std::bad_alloc &) {
        return fail(CATREP_ERR_NUMERICAL, "out of memory");
    } catch (const std::exception &e) {
        return fail(CATREP_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(CATREP_ERR_INTERNAL, "unknown exception");
    }
}

catrep::OutputFormat to_format(catrep_format f) {
    if (f == CATREP_FORMAT_CSV) {
        return catrep::OutputFormat::csv;
    }
    if (f == CATREP_FORMAT_JSONL) {
        return catrep::OutputFormat::jsonl;
    }
    throw catrep::UsageError("unknown output format code");
}

void need(const void *p, const char *name) {
    if (p == nullptr) {
        throw catrep::UsageError(std::string(name) + " must not be null");
    }
}

catrep_status emit(std::string text, catrep_buffer **out) {
    *out = new catrep_buffer{std::move(text)};
    return CATREP_OK;
}

}  // namespace

extern "C" {

const char *catrep_version(void) {
    return catrep::version_string();
}

const char *catrep_last_error(void) {
    return g_last_error.c_str();
}

catrep_status catrep_config_create(catrep_config **out) {
    return guarded([&] {
        need(out, "out");
        *out = new catrep_config{};
        return CATREP_OK;
    });
}

void catrep_config_destroy(catrep_config *config) {
    delete config;
}

catrep_status catrep_config_load_json(catrep_config *config, const char *json_text) {
    return guarded([&] {
        need(config, "config");
        need(json_text, "json_text");
        config->value = catrep::parse_config(json_text, config->value);
        return CATREP_OK;
    });
}

catrep_status catrep_config_load_file(catrep_config *config, const char *path) {
    return guarded([&] {
        need(config, "config");
        need(path, "path");
        config->value = catrep::load_config_file(path, config->value);
        return CATREP_OK;
    });
}

catrep_status catrep_config_set(catrep_config *config, const char *key, const char *value) {
    return guarded([&] {
        need(config, "config");
        need(key, "key");
        need(value, "value");
        catrep::apply_override(config->value, key, value);
        return CATREP_OK;
    });
}

catrep_format catrep_config_format(const catrep_config *config) {
    if (config != nullptr && config->value.output.format == catrep::OutputFormat::jsonl) {
        return CATREP_FORMAT_JSONL;
    }
    return CATREP_FORMAT_CSV;
}

catrep_status catrep_config_to_json(const catrep_config *config, catrep_buffer **out) {
    return guarded([&] {
        need(config, "config");
        need(out, "out");
        return emit(catrep::config_to_json(config->value) + "\n", out);
    });
}

catrep_status catrep_run_sweep(const catrep_config *config, catrep_format format, int threads,
                               catrep_buffer **out) {
    return guarded([&] {
        need(config, "config");
        need(out, "out");
        return emit(catrep::sweep_table(config->value, threads).render(to_format(format)), out);
    });
}

catrep_status catrep_run_keyrate(const catrep_config *config, catrep_format format, catrep_buffer **out) {
    return guarded([&] {
        need(config, "config");
        need(out, "out");
        return emit(catrep::keyrate_table(config->value).render(to_format(format)), out);
    });
}

catrep_status catrep_run_cavity(const catrep_config *config, catrep_format format, catrep_buffer **out) {
    return guarded([&] {
        need(config, "config");
        need(out, "out");
        return emit(catrep::cavity_table(config->value).render(to_format(format)), out);
    });
}

catrep_status catrep_run_usd(const catrep_config *config, catrep_format format, int threads,
                             catrep_buffer **out) {
    return guarded([&] {
        need(config, "config");
        need(out, "out");
        return emit(catrep::usd_table(config->value, threads).render(to_format(format)), out);
    });
}

catrep_status catrep_run_validate(const catrep_config *config, int threads, catrep_buffer **out) {
    return guarded([&] {
        need(config, "config");
        need(out, "out");
        catrep::ValidationReport report = catrep::run_validation(config->value, threads);
        emit(report.render(), out);
        if (!report.passed()) {
            std::string failing;
            for (const auto &c : report.checks) {
                if (!c.passed()) {
                    failing += (failing.empty() ? "" : ", ") + c.name;
                }
            }
            return fail(CATREP_ERR_VALIDATION, ("tolerance exceeded: " + failing).c_str());
        }
        return CATREP_OK;
    });
}

catrep_status catrep_run_metadata(const catrep_config *config, const char *command, int threads,
                                  catrep_buffer **out) {
    return guarded([&] {
        need(config, "config");
        need(command, "command");
        need(out, "out");
        return emit(catrep::run_metadata(config->value, command, threads), out);
    });
}

const char *catrep_buffer_data(const catrep_buffer *buffer) {
    return buffer == nullptr ? "" : buffer->text.c_str();
}

size_t catrep_buffer_size(const catrep_buffer *buffer) {
    return buffer == nullptr ? 0 : buffer->text.size();
}

void catrep_buffer_destroy(catrep_buffer *buffer) {
    delete buffer;
}

catrep_status catrep_plob(double l_tot_km, double l_att_km, double *eta_tot, double *bits_per_use) {
    return guarded([&] {
        catrep::PlobBound b = catrep::plob_bound(l_tot_km, l_att_km);
        if (eta_tot) {
            *eta_tot = b.eta_tot;
        }
        if (bits_per_use) {
            *bits_per_use = b.bits_per_use;
        }
        return CATREP_OK;
    });
}

catrep_status catrep_segment_fidelity(int m, double alpha, double eta, double *out) {
    return guarded([&] {
        need(out, "out");
        *out = catrep::segment_fidelity(catrep::CatCodeSpec{m, alpha, eta});
        return CATREP_OK;
    });
}

catrep_status catrep_loss_weights(int m, double alpha, double eta, double *out, size_t capacity) {
    return guarded([&] {
        need(out, "out");
        catrep::LossWeights w = catrep::loss_weights(catrep::CatCodeSpec{m, alpha, eta});
        if (capacity < w.p.size()) {
            throw catrep::UsageError("output array holds fewer than 2^(m+1) entries");
        }
        for (size_t i = 0; i < w.p.size(); ++i) {
            out[i] = w.p[i];
        }
        return CATREP_OK;
    });
}

catrep_status catrep_chain_fidelity(double f0, long n_e, double *out) {
    return guarded([&] {
        need(out, "out");
        if (!(f0 >= 0.0 && f0 <= 1.0)) {
            throw catrep::UsageError("fidelity must lie in [0, 1]");
        }
        *out = catrep::chain_fidelity(f0, n_e);
        return CATREP_OK;
    });
}

catrep_status catrep_optimal_usd(int m, double alpha, double eta, int q, double *out) {
    return guarded([&] {
        need(out, "out");
        *out = catrep::optimal_usd_probability(catrep::CatCodeSpec{m, alpha, eta}, q);
        return CATREP_OK;
    });
}

catrep_status catrep_secret_key_rate(double f_tot, double p_tot, double t0_s, double *per_channel_use,
                                     double *per_second) {
    return guarded([&] {
        if (!(f_tot >= 0.0 && f_tot <= 1.0) || !(p_tot >= 0.0 && p_tot <= 1.0)) {
            throw catrep::UsageError("fidelity and success probability must lie in [0, 1]");
        }
        catrep::KeyRate r = catrep::secret_key_rate(f_tot, p_tot, t0_s);
        if (per_channel_use) {
            *per_channel_use = r.per_channel_use;
        }
        if (per_second) {
            *per_second = r.per_second;
        }
        return CATREP_OK;
    });
}

}  // extern "C"
