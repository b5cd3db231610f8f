// Copyright 2026 The vqgs Authors.
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
#include "vqgs/vqgs.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <fstream>
#include <memory>
#include <new>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "vqgs/error.hpp"
#include "vqgs/harness.hpp"
#include "vqgs/version.hpp"

struct vqgs_config {
    vqgs::ExperimentConfig cfg;
};

struct vqgs_record {
    vqgs::RunOutcome outcome;
};

namespace {

thread_local std::string g_last_error;

vqgs_status status_of(vqgs::ErrorKind kind) {
    switch (kind) {
    case vqgs::ErrorKind::InvalidArgument:
        return VQGS_ERR_INVALID_ARGUMENT;
    case vqgs::ErrorKind::DimensionMismatch:
        return VQGS_ERR_DIMENSION_MISMATCH;
    case vqgs::ErrorKind::ResourceLimit:
        return VQGS_ERR_RESOURCE_LIMIT;
    case vqgs::ErrorKind::NotConverged:
        return VQGS_ERR_NOT_CONVERGED;
    case vqgs::ErrorKind::SearchCapExceeded:
        return VQGS_ERR_SEARCH_CAP;
    case vqgs::ErrorKind::Io:
        return VQGS_ERR_IO;
    }
    return VQGS_ERR_INTERNAL;
}

template <typename F> vqgs_status guarded(F &&f) {
    try {
        f();
        g_last_error.clear();
        return VQGS_OK;
    } catch (const vqgs::Error &e) {
        g_last_error = e.what();
        return status_of(e.kind());
    } catch (const std::bad_alloc &) {
        g_last_error = "out of memory";
        return VQGS_ERR_RESOURCE_LIMIT;
    } catch (const std::exception &e) {
        g_last_error = e.what();
        return VQGS_ERR_INTERNAL;
    } catch (...) {
        g_last_error = "unknown failure";
        return VQGS_ERR_INTERNAL;
    }
}

void need(const void *p, const char *name) {
    if (p == nullptr) {
        vqgs::fail(vqgs::ErrorKind::InvalidArgument, std::string(name) + " is null");
    }
}

std::string slurp(const char *path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        vqgs::fail(vqgs::ErrorKind::Io, std::string("cannot open ") + path);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

extern "C" {

const char *vqgs_version(void) { return vqgs::kVersion; }

int vqgs_artifact_version(void) { return vqgs::kArtifactVersion; }

const char *vqgs_status_string(vqgs_status status) {
    switch (status) {
    case VQGS_OK:
        return "ok";
    case VQGS_ERR_INVALID_ARGUMENT:
        return "invalid argument";
    case VQGS_ERR_DIMENSION_MISMATCH:
        return "dimension mismatch";
    case VQGS_ERR_RESOURCE_LIMIT:
        return "resource limit";
    case VQGS_ERR_NOT_CONVERGED:
        return "not converged";
    case VQGS_ERR_SEARCH_CAP:
        return "search cap exceeded";
    case VQGS_ERR_IO:
        return "i/o error";
    case VQGS_ERR_INTERNAL:
        return "internal error";
    }
    return "unknown status";
}

const char *vqgs_last_error(void) { return g_last_error.c_str(); }

vqgs_status vqgs_config_new(const char *kind, vqgs_config **out) {
    return guarded([&] {
        need(kind, "kind");
        need(out, "out");
        *out = nullptr;
        auto c = std::make_unique<vqgs_config>();
        c->cfg.kind = vqgs::experiment_from_string(kind);
        *out = c.release();
    });
}

vqgs_status vqgs_config_from_json(const char *json_text, vqgs_config **out) {
    return guarded([&] {
        need(json_text, "json_text");
        need(out, "out");
        *out = nullptr;
        auto c = std::make_unique<vqgs_config>();
        c->cfg = vqgs::ExperimentConfig::from_json(json_text);
        *out = c.release();
    });
}

vqgs_status vqgs_config_from_file(const char *path, vqgs_config **out) {
    return guarded([&] {
        need(path, "path");
        need(out, "out");
        *out = nullptr;
        auto c = std::make_unique<vqgs_config>();
        c->cfg = vqgs::ExperimentConfig::from_json(slurp(path));
        *out = c.release();
    });
}

void vqgs_config_free(vqgs_config *config) { delete config; }

vqgs_status vqgs_config_set(vqgs_config *config, const char *key, const char *json_value) {
    return guarded([&] {
        need(config, "config");
        need(key, "key");
        need(json_value, "json_value");
        using nlohmann::json;
        json value;
        try {
            value = json::parse(json_value);
        } catch (const json::parse_error &) {
            vqgs::fail(vqgs::ErrorKind::InvalidArgument,
                       std::string(key) + ": value is not a JSON literal");
        }
        json j = json::parse(config->cfg.to_json());
        const std::string k(key);
        const auto dot = k.find('.');
        if (dot == std::string::npos) {
            j[k] = value;
        } else {
            if (k.substr(0, dot) != "model") {
                vqgs::fail(vqgs::ErrorKind::InvalidArgument, k + ": unknown field");
            }
            j["model"][k.substr(dot + 1)] = value;
        }
        config->cfg = vqgs::ExperimentConfig::from_json(j.dump());
    });
}

vqgs_status vqgs_config_validate(const vqgs_config *config) {
    return guarded([&] {
        need(config, "config");
        config->cfg.validate();
        config->cfg.check_resources();
    });
}

vqgs_status vqgs_config_to_json(const vqgs_config *config, char **out) {
    return guarded([&] {
        need(config, "config");
        need(out, "out");
        const std::string s = config->cfg.to_json();
        char *buf = static_cast<char *>(std::malloc(s.size() + 1));
        if (buf == nullptr) {
            throw std::bad_alloc();
        }
        std::memcpy(buf, s.c_str(), s.size() + 1);
        *out = buf;
    });
}

void vqgs_string_free(char *s) { std::free(s); }

vqgs_status vqgs_run(const vqgs_config *config, vqgs_record **out) {
    return guarded([&] {
        need(config, "config");
        need(out, "out");
        *out = nullptr;
        auto r = std::make_unique<vqgs_record>();
        r->outcome = vqgs::run(config->cfg);
        *out = r.release();
    });
}

void vqgs_record_free(vqgs_record *record) { delete record; }

const char *vqgs_record_path(const vqgs_record *record) {
    return record ? record->outcome.record_path.c_str() : "";
}

const char *vqgs_record_summary(const vqgs_record *record) {
    return record ? record->outcome.summary.c_str() : "";
}

size_t vqgs_record_file_count(const vqgs_record *record) {
    return record ? record->outcome.files.size() : 0;
}

const char *vqgs_record_file(const vqgs_record *record, size_t index) {
    if (record == nullptr || index >= record->outcome.files.size()) {
        return nullptr;
    }
    return record->outcome.files[index].c_str();
}

vqgs_status vqgs_emit_plot_data(const char *record_path, const char *figure,
                                const char *out_path) {
    return guarded([&] {
        need(record_path, "record_path");
        need(figure, "figure");
        need(out_path, "out_path");
        vqgs::emit_plot_data(slurp(record_path), figure, out_path);
    });
}

size_t vqgs_plot_kind_count(void) { return vqgs::plot_kinds().size(); }

const char *vqgs_plot_kind(size_t index) {
    static const std::vector<std::string> kinds = vqgs::plot_kinds();
    return index < kinds.size() ? kinds[index].c_str() : nullptr;
}

} // extern "C"
