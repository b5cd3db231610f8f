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
/* The public header must compile as plain C. */
#include <stdio.h>
#include <string.h>

#include "vqgs/vqgs.h"

int main(void) {
    vqgs_config *cfg = NULL;
    char *text = NULL;
    if (vqgs_config_new("resource-table", &cfg) != VQGS_OK) {
        fprintf(stderr, "config_new: %s\n", vqgs_last_error());
        return 1;
    }
    if (vqgs_config_validate(cfg) != VQGS_ERR_INVALID_ARGUMENT) {
        return 1;
    }
    if (vqgs_config_set(cfg, "seed", "7") != VQGS_OK || vqgs_config_validate(cfg) != VQGS_OK) {
        fprintf(stderr, "validate: %s\n", vqgs_last_error());
        return 1;
    }
    if (vqgs_config_to_json(cfg, &text) != VQGS_OK || strstr(text, "\"seed\": 7") == NULL) {
        return 1;
    }
    vqgs_string_free(text);
    vqgs_config_free(cfg);
    printf("vqgs %s\n", vqgs_version());
    return 0;
}
