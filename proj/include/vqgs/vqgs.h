/*
 * Copyright 2026 The vqgs Authors.
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
#ifndef VQGS_VQGS_H
#define VQGS_VQGS_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(VQGS_BUILDING)
#    define VQGS_API __declspec(dllexport)
#  else
#    define VQGS_API __declspec(dllimport)
#  endif
#else
#  define VQGS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum vqgs_status {
    VQGS_OK = 0,
    VQGS_ERR_INVALID_ARGUMENT = 1,
    VQGS_ERR_DIMENSION_MISMATCH = 2,
    VQGS_ERR_RESOURCE_LIMIT = 3,
    VQGS_ERR_NOT_CONVERGED = 4,
    VQGS_ERR_SEARCH_CAP = 5,
    VQGS_ERR_IO = 6,
    VQGS_ERR_INTERNAL = 7
} vqgs_status;

/* Opaque handles. */
typedef struct vqgs_config vqgs_config;
typedef struct vqgs_record vqgs_record;

VQGS_API const char *vqgs_version(void);
VQGS_API int vqgs_artifact_version(void);
VQGS_API const char *vqgs_status_string(vqgs_status status);

/* Message of the last failed call on this thread; empty after a success. */
VQGS_API const char *vqgs_last_error(void);

/* Config with defaults for an experiment kind such as "vqe-run". */
VQGS_API vqgs_status vqgs_config_new(const char *kind, vqgs_config **out);
VQGS_API vqgs_status vqgs_config_from_json(const char *json_text, vqgs_config **out);
VQGS_API vqgs_status vqgs_config_from_file(const char *path, vqgs_config **out);
VQGS_API void vqgs_config_free(vqgs_config *config);

/*
 * Sets one field from a JSON literal, e.g. ("n_list", "[4, 8]") or
 * ("model.jx", "0.5"). Type errors are reported here; range checks wait for
 * vqgs_config_validate.
 */
VQGS_API vqgs_status vqgs_config_set(vqgs_config *config, const char *key,
                                     const char *json_value);
VQGS_API vqgs_status vqgs_config_validate(const vqgs_config *config);

/* Caller releases *out with vqgs_string_free. */
VQGS_API vqgs_status vqgs_config_to_json(const vqgs_config *config, char **out);
VQGS_API void vqgs_string_free(char *s);

/* Validates, runs and writes all artifacts into the configured output. */
VQGS_API vqgs_status vqgs_run(const vqgs_config *config, vqgs_record **out);
VQGS_API void vqgs_record_free(vqgs_record *record);

/* Strings stay valid until the record is freed. */
VQGS_API const char *vqgs_record_path(const vqgs_record *record);
VQGS_API const char *vqgs_record_summary(const vqgs_record *record);
VQGS_API size_t vqgs_record_file_count(const vqgs_record *record);
VQGS_API const char *vqgs_record_file(const vqgs_record *record, size_t index);

/* Long-form series CSV from a record.json file. */
VQGS_API vqgs_status vqgs_emit_plot_data(const char *record_path, const char *figure,
                                         const char *out_path);

/* Number of plot kinds and the name of one of them. */
VQGS_API size_t vqgs_plot_kind_count(void);
VQGS_API const char *vqgs_plot_kind(size_t index);

#ifdef __cplusplus
}
#endif

#endif /* VQGS_VQGS_H */
