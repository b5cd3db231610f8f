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
#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vqgs/hamiltonian.hpp"

namespace vqgs {

enum class ExperimentKind { AdiabaticSweep, VqeRun, StrategyCompare, NoiseEval, ResourceTable };

const char *to_string(ExperimentKind kind);
ExperimentKind experiment_from_string(const std::string &name);

struct ModelConfig {
    /// heisenberg, xyz or kondo.
    std::string name{"heisenberg"};
    double j{1.0};
    double jx{1.0};
    double jy{1.0};
    double jz{1.0};
    double j_prime{0.6};
    /// Overrides the model's own mirror symmetry when set.
    std::optional<bool> mirror_tied{};

    [[nodiscard]] HamiltonianSpec build(std::size_t n) const;
};

/**
 * One experiment. Fields not used by `kind` are ignored but still echoed.
 *
 * adiabatic-sweep  n_list x thresholds x methods (st1, st2)
 * vqe-run          n_list x layers, ensembles of `strategy`
 * strategy-compare n_list x layers, one ensemble per entry of `strategies`
 * noise-eval       n_list x layers; best of `samples` runs, then h_values
 *                  and gamma_values
 * resource-table   n_list x methods at thresholds[0]; vqe depth searched
 *                  from 1 to layer_cap
 */
struct ExperimentConfig {
    ExperimentKind kind{ExperimentKind::VqeRun};
    ModelConfig model{};
    std::vector<std::size_t> n_list{4};
    std::vector<double> thresholds{0.99};
    std::vector<std::size_t> layers{2};
    std::size_t layer_cap{10};
    std::size_t iterations{1000};
    std::size_t iters_per_param{50};
    std::size_t samples{20};
    std::optional<std::uint64_t> seed{};
    std::string output{"vqgs-out"};
    std::string strategy{"random"};
    std::vector<std::string> strategies{"random", "qubit", "layer"};
    std::vector<std::string> methods{"st1", "st2", "vqe"};
    std::vector<double> h_values{0.0, 0.02, 0.04, 0.06, 0.08, 0.1};
    std::vector<double> gamma_values{0.0, 0.0025, 0.005, 0.0075, 0.01, 0.0125};
    std::size_t realizations{100};
    std::size_t fidelity_every{1};
    /// even-phase-odd or phase-odd-even.
    std::string layer_order{"even-phase-odd"};
    /// quadratic or bisection.
    std::string tmax_schedule{"quadratic"};
    /// 0 means default_workers().
    std::size_t workers{0};

    /// Parses JSON text; unknown keys are validation errors.
    static ExperimentConfig from_json(const std::string &text);
    [[nodiscard]] std::string to_json() const;

    /// Throws Error(InvalidArgument) naming the offending field.
    void validate() const;
    /// Throws Error(ResourceLimit) when a cell exceeds simulator limits.
    void check_resources() const;
};

struct RunOutcome {
    std::string output_dir;
    std::string record_path;
    std::vector<std::string> files;
    std::string summary;
};

/// Validates, runs and writes record.json, traces.csv, summary.txt plus the
/// kind-specific tables and plot data into config.output.
RunOutcome run(const ExperimentConfig &config);

/// Plot kinds understood by emit_plot_data.
std::vector<std::string> plot_kinds();

/// Long-form CSV (series, x, y, y_err) for one figure kind, built from a
/// record's JSON text. Throws before writing when the data is missing.
void emit_plot_data(const std::string &record_json, const std::string &figure,
                    const std::string &out_path);

/// Shortest round-trip decimal form; "nan" and "inf" for non-finite values.
std::string format_number(double x);

} // namespace vqgs
