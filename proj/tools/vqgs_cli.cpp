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
// Command-line front end. Talks to the library only through vqgs.h.

#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "vqgs/vqgs.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitValidation = 2;
constexpr int kExitResource = 3;

int exit_code(vqgs_status s) {
    switch (s) {
    case VQGS_OK:
        return kExitOk;
    case VQGS_ERR_INVALID_ARGUMENT:
    case VQGS_ERR_DIMENSION_MISMATCH:
        return kExitValidation;
    case VQGS_ERR_RESOURCE_LIMIT:
        return kExitResource;
    default:
        return kExitFailure;
    }
}

std::string quote(const std::string &s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') {
            out += '\\';
        }
        out += c;
    }
    return out + "\"";
}

std::string number_list(const std::vector<std::string> &v) {
    std::string out = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        out += (i ? "," : "") + v[i];
    }
    return out + "]";
}

std::string string_list(const std::vector<std::string> &v) {
    std::string out = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        out += (i ? "," : "") + quote(v[i]);
    }
    return out + "]";
}

struct Overrides {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::string output;
    std::vector<std::string> n_list, thresholds, layers, strategies, methods, h_values,
        gamma_values;
    std::optional<std::size_t> layer_cap, iterations, iters_per_param, samples, realizations,
        fidelity_every, workers;
    std::string model, strategy, layer_order, tmax_schedule;
    std::optional<double> j, jx, jy, jz, j_prime;
    bool tied{false};
    bool untied{false};
    bool quiet{false};
    std::vector<std::string> sets;
};

void add_options(CLI::App *sub, Overrides &o) {
    sub->add_option("-c,--config", o.config_path, "JSON experiment config");
    sub->add_option("--seed", o.seed, "master seed (overrides the config)");
    sub->add_option("-o,--output", o.output, "output directory");
    sub->add_option("--n", o.n_list, "chain lengths")->delimiter(',');
    sub->add_option("--threshold", o.thresholds, "fidelity thresholds")->delimiter(',');
    sub->add_option("--layers", o.layers, "circuit depths")->delimiter(',');
    sub->add_option("--layer-cap", o.layer_cap, "largest VQE depth tried");
    sub->add_option("--iterations", o.iterations, "optimizer iterations per run");
    sub->add_option("--iters-per-param", o.iters_per_param, "VQE depth search budget");
    sub->add_option("--samples", o.samples, "random initializations");
    sub->add_option("--strategy", o.strategy, "random, qubit or layer");
    sub->add_option("--strategies", o.strategies, "strategies to compare")->delimiter(',');
    sub->add_option("--methods", o.methods, "st1, st2, vqe")->delimiter(',');
    sub->add_option("--h-values", o.h_values, "CNOT phase noise half-widths")->delimiter(',');
    sub->add_option("--gamma-values", o.gamma_values, "dephasing strengths gamma*dt")->delimiter(',');
    sub->add_option("--realizations", o.realizations, "noise realizations");
    sub->add_option("--fidelity-every", o.fidelity_every, "fidelity recording cadence");
    sub->add_option("--model", o.model, "heisenberg, xyz or kondo");
    sub->add_option("--j", o.j, "coupling J");
    sub->add_option("--jx", o.jx, "XYZ coupling Jx");
    sub->add_option("--jy", o.jy, "XYZ coupling Jy");
    sub->add_option("--jz", o.jz, "XYZ coupling Jz");
    sub->add_option("--j-prime", o.j_prime, "Kondo impurity coupling");
    sub->add_flag("--tied", o.tied, "force mirror-tied phases");
    sub->add_flag("--untied", o.untied, "force independent phases");
    sub->add_option("--layer-order", o.layer_order, "even-phase-odd or phase-odd-even");
    sub->add_option("--tmax-schedule", o.tmax_schedule, "quadratic or bisection");
    sub->add_option("--workers", o.workers, "worker threads (default: VQGS_WORKERS or cores)");
    sub->add_option("--set", o.sets, "raw override key=json, repeatable");
    sub->add_flag("-q,--quiet", o.quiet, "do not print the summary");
}

vqgs_status apply(vqgs_config *cfg, const Overrides &o) {
    std::vector<std::pair<std::string, std::string>> kv;
    if (o.seed) kv.emplace_back("seed", std::to_string(*o.seed));
    if (!o.output.empty()) kv.emplace_back("output", quote(o.output));
    if (!o.n_list.empty()) kv.emplace_back("n_list", number_list(o.n_list));
    if (!o.thresholds.empty()) kv.emplace_back("thresholds", number_list(o.thresholds));
    if (!o.layers.empty()) kv.emplace_back("layers", number_list(o.layers));
    if (!o.strategies.empty()) kv.emplace_back("strategies", string_list(o.strategies));
    if (!o.methods.empty()) kv.emplace_back("methods", string_list(o.methods));
    if (!o.h_values.empty()) kv.emplace_back("h_values", number_list(o.h_values));
    if (!o.gamma_values.empty()) kv.emplace_back("gamma_values", number_list(o.gamma_values));
    if (o.layer_cap) kv.emplace_back("layer_cap", std::to_string(*o.layer_cap));
    if (o.iterations) kv.emplace_back("iterations", std::to_string(*o.iterations));
    if (o.iters_per_param) kv.emplace_back("iters_per_param", std::to_string(*o.iters_per_param));
    if (o.samples) kv.emplace_back("samples", std::to_string(*o.samples));
    if (o.realizations) kv.emplace_back("realizations", std::to_string(*o.realizations));
    if (o.fidelity_every) kv.emplace_back("fidelity_every", std::to_string(*o.fidelity_every));
    if (o.workers) kv.emplace_back("workers", std::to_string(*o.workers));
    if (!o.strategy.empty()) kv.emplace_back("strategy", quote(o.strategy));
    if (!o.layer_order.empty()) kv.emplace_back("layer_order", quote(o.layer_order));
    if (!o.tmax_schedule.empty()) kv.emplace_back("tmax_schedule", quote(o.tmax_schedule));
    if (!o.model.empty()) kv.emplace_back("model.name", quote(o.model));
    auto real = [](double x) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.17g", x);
        return std::string(buf);
    };
    if (o.j) kv.emplace_back("model.j", real(*o.j));
    if (o.jx) kv.emplace_back("model.jx", real(*o.jx));
    if (o.jy) kv.emplace_back("model.jy", real(*o.jy));
    if (o.jz) kv.emplace_back("model.jz", real(*o.jz));
    if (o.j_prime) kv.emplace_back("model.j_prime", real(*o.j_prime));
    if (o.tied) kv.emplace_back("model.mirror_tied", "true");
    if (o.untied) kv.emplace_back("model.mirror_tied", "false");
    for (const auto &s : o.sets) {
        const auto eq = s.find('=');
        if (eq == std::string::npos) {
            std::fprintf(stderr, "error: --set expects key=json, got '%s'\n", s.c_str());
            return VQGS_ERR_INVALID_ARGUMENT;
        }
        kv.emplace_back(s.substr(0, eq), s.substr(eq + 1));
    }
    for (const auto &[k, v] : kv) {
        const vqgs_status st = vqgs_config_set(cfg, k.c_str(), v.c_str());
        if (st != VQGS_OK) {
            return st;
        }
    }
    return VQGS_OK;
}

int report(vqgs_status st) {
    std::fprintf(stderr, "error (%s): %s\n", vqgs_status_string(st), vqgs_last_error());
    return exit_code(st);
}

int run_experiment(const std::string &kind, const Overrides &o) {
    vqgs_config *cfg = nullptr;
    vqgs_status st = o.config_path.empty() ? vqgs_config_new(kind.c_str(), &cfg)
                                           : vqgs_config_from_file(o.config_path.c_str(), &cfg);
    if (st != VQGS_OK) {
        return report(st);
    }
    st = vqgs_config_set(cfg, "kind", quote(kind).c_str());
    if (st == VQGS_OK) st = apply(cfg, o);
    if (st == VQGS_OK) st = vqgs_config_validate(cfg);
    if (st != VQGS_OK) {
        vqgs_config_free(cfg);
        return report(st);
    }
    vqgs_record *rec = nullptr;
    st = vqgs_run(cfg, &rec);
    vqgs_config_free(cfg);
    if (st != VQGS_OK) {
        return report(st);
    }
    if (!o.quiet) {
        std::fputs(vqgs_record_summary(rec), stdout);
        std::printf("\nrecord: %s\n", vqgs_record_path(rec));
    }
    vqgs_record_free(rec);
    return kExitOk;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Variational and adiabatic ground-state preparation experiments"};
    app.set_version_flag("--version", vqgs_version());
    app.require_subcommand(1);

    const std::vector<std::pair<std::string, std::string>> kinds{
        {"adiabatic-sweep", "Trotterized adiabatic depth search over n and thresholds"},
        {"vqe-run", "VQE ensembles over n and depth"},
        {"strategy-compare", "random vs qubit-recursive vs layer-recursive initialization"},
        {"noise-eval", "noisy CNOT and dephasing fidelity of an optimized circuit"},
        {"resource-table", "minimal depths and CNOT counts per method"}};
    std::vector<Overrides> overrides(kinds.size());
    std::vector<CLI::App *> subs;
    for (std::size_t i = 0; i < kinds.size(); ++i) {
        CLI::App *sub = app.add_subcommand(kinds[i].first, kinds[i].second);
        add_options(sub, overrides[i]);
        subs.push_back(sub);
    }

    std::string record_path, figure, out_path;
    CLI::App *plot = app.add_subcommand("plot", "long-form plot data from a record");
    plot->add_option("-r,--record", record_path, "record.json")->required();
    std::string kinds_help;
    for (std::size_t i = 0; i < vqgs_plot_kind_count(); ++i) {
        kinds_help += (i ? ", " : "") + std::string(vqgs_plot_kind(i));
    }
    plot->add_option("-f,--figure", figure, kinds_help)->required();
    plot->add_option("-o,--out", out_path, "output CSV")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitValidation;
    }

    for (std::size_t i = 0; i < subs.size(); ++i) {
        if (subs[i]->parsed()) {
            return run_experiment(kinds[i].first, overrides[i]);
        }
    }
    const vqgs_status st =
        vqgs_emit_plot_data(record_path.c_str(), figure.c_str(), out_path.c_str());
    return st == VQGS_OK ? kExitOk : report(st);
}
