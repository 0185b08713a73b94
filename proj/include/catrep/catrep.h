/* Copyright 2026 The catrep Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface of libcatrep. Every call returns a catrep_status; on failure
 * catrep_last_error() holds a message for the calling thread. Handles are
 * opaque and owned by the caller. */

#ifndef CATREP_CATREP_H
#define CATREP_CATREP_H

#include <stddef.h>

#if defined(CATREP_BUILDING_LIBRARY)
#define CATREP_API __attribute__((visibility("default")))
#else
#define CATREP_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum catrep_status {
    CATREP_OK = 0,
    CATREP_ERR_USAGE = 1,
    CATREP_ERR_VALIDATION = 2,
    CATREP_ERR_NUMERICAL = 3,
    CATREP_ERR_INTERNAL = 4
} catrep_status;

typedef enum catrep_format { CATREP_FORMAT_CSV = 0, CATREP_FORMAT_JSONL = 1 } catrep_format;

typedef struct catrep_config catrep_config;
typedef struct catrep_buffer catrep_buffer;

CATREP_API const char *catrep_version(void);
CATREP_API const char *catrep_last_error(void);

/* Configuration with every field at its default. */
CATREP_API catrep_status catrep_config_create(catrep_config **out);
CATREP_API void catrep_config_destroy(catrep_config *config);
/* Layers a JSON document over the current values. */
CATREP_API catrep_status catrep_config_load_json(catrep_config *config, const char *json_text);
CATREP_API catrep_status catrep_config_load_file(catrep_config *config, const char *path);
/* key is "section.field"; value is a number, a name, "a,b,c" or
 * "start:stop:step". */
CATREP_API catrep_status catrep_config_set(catrep_config *config, const char *key, const char *value);
/* Format named by output.format. */
CATREP_API catrep_format catrep_config_format(const catrep_config *config);
CATREP_API catrep_status catrep_config_to_json(const catrep_config *config, catrep_buffer **out);

/* Table producers. The buffer is NUL-terminated. */
CATREP_API catrep_status catrep_run_sweep(const catrep_config *config, catrep_format format, int threads,
                                          catrep_buffer **out);
CATREP_API catrep_status catrep_run_keyrate(const catrep_config *config, catrep_format format,
                                            catrep_buffer **out);
CATREP_API catrep_status catrep_run_cavity(const catrep_config *config, catrep_format format,
                                           catrep_buffer **out);
CATREP_API catrep_status catrep_run_usd(const catrep_config *config, catrep_format format, int threads,
                                        catrep_buffer **out);
/* Writes the report to *out even when a check fails; a failure then
 * returns CATREP_ERR_VALIDATION. */
CATREP_API catrep_status catrep_run_validate(const catrep_config *config, int threads, catrep_buffer **out);
CATREP_API catrep_status catrep_run_metadata(const catrep_config *config, const char *command, int threads,
                                             catrep_buffer **out);

CATREP_API const char *catrep_buffer_data(const catrep_buffer *buffer);
CATREP_API size_t catrep_buffer_size(const catrep_buffer *buffer);
CATREP_API void catrep_buffer_destroy(catrep_buffer *buffer);

/* Scalar helpers. */
CATREP_API catrep_status catrep_plob(double l_tot_km, double l_att_km, double *eta_tot, double *bits_per_use);
CATREP_API catrep_status catrep_segment_fidelity(int m, double alpha, double eta, double *out);
/* Writes 2^(m+1) weights into out (capacity entries). */
CATREP_API catrep_status catrep_loss_weights(int m, double alpha, double eta, double *out, size_t capacity);
CATREP_API catrep_status catrep_chain_fidelity(double f0, long n_e, double *out);
CATREP_API catrep_status catrep_optimal_usd(int m, double alpha, double eta, int q, double *out);
CATREP_API catrep_status catrep_secret_key_rate(double f_tot, double p_tot, double t0_s, double *per_channel_use,
                                                double *per_second);

#ifdef __cplusplus
}
#endif

#endif
