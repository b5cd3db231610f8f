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
#include <random>
#include <span>
#include <string>
#include <vector>

#include "vqgs/hamiltonian.hpp"
#include "vqgs/vqe.hpp"

namespace vqgs {

enum class StrategyKind { Random, QubitRecursive, LayerRecursive };

const char *to_string(StrategyKind kind);
StrategyKind strategy_from_string(const std::string &name);

using Rng = std::mt19937_64;

/// L independent standard-normal draws.
std::vector<double> init_random(std::size_t count, Rng &rng);

/**
 * Seeds an n-qubit ansatz from optimized parameters of the n/2-qubit one.
 *
 * Both halves copy the half-system entangler angles; the junction bond
 * (n/2 - 1, n/2) gets a fresh standard-normal angle in every layer. Phase
 * angles of the half system are copied onto the left half, and the right
 * half either follows from mirror tying or repeats the left half. Layers
 * beyond the half-system depth copy the last assembled layer.
 */
std::vector<double> init_qubit_recursive(const Ansatz &half, std::span<const double> theta_half,
                                         const Ansatz &full, Rng &rng);

/// Extends parameters of an m-layer ansatz to m+1 layers by copying the last
/// layer (same layout per layer).
std::vector<double> append_copied_layer(std::span<const double> theta, std::size_t per_layer);

struct StrategyConfig {
    StrategyKind kind{StrategyKind::Random};
    std::uint64_t seed{1};
    std::size_t samples{20};
    /// Total COI on the target circuit. Layer-recursive splits it evenly
    /// across its stages, with the remainder going to the last stage.
    std::size_t iterations{1000};
    /// Budget for the half-system run of the qubit-recursive strategy, in
    /// multiples of the half-system parameter count.
    std::size_t half_iters_per_param{50};
    std::size_t fidelity_every{1};
    /// 0 means default_workers().
    std::size_t workers{0};
    AdamHyper hyper{};
};

/// Stage boundaries (cumulative COI) and the concatenated trace.
struct LayerRecursiveResult {
    OptimizationTrace trace;
    std::vector<std::size_t> stage_ends;
    std::vector<double> stage_final_energy;
};

/// Grows the circuit one layer at a time up to spec.layers; `iters_per_stage`
/// holds the COI spent on each stage.
LayerRecursiveResult run_layer_recursive(const AnsatzSpec &spec,
                                         const std::vector<std::size_t> &iters_per_stage,
                                         Rng &rng, const GroundStateResult *target,
                                         const OptimizeOptions &base = {});

/// One sample of a strategy on the target ansatz.
OptimizationTrace run_strategy(StrategyKind kind, const AnsatzSpec &spec,
                               const StrategyConfig &config, std::uint64_t sample_seed,
                               const GroundStateResult &target);

struct EnsembleStats {
    StrategyKind kind{StrategyKind::Random};
    std::size_t samples{0};
    /// Per iteration; NaN where fidelity was not recorded.
    std::vector<double> mean_fidelity;
    std::vector<double> std_fidelity;
    std::vector<double> mean_energy;
    std::vector<double> std_energy;
    std::vector<double> final_fidelity;
    std::vector<double> final_energy;
    std::vector<std::uint64_t> sample_seeds;
    /// Per-sample traces in sample order.
    std::vector<OptimizationTrace> traces;

    /// Standard error of the mean fidelity at iteration i.
    [[nodiscard]] double standard_error(std::size_t i) const;
};

/// Independent seeded samples; statistics use the population standard
/// deviation and do not depend on completion order.
EnsembleStats run_ensemble(const AnsatzSpec &spec, const StrategyConfig &config,
                           const GroundStateResult &target);

struct VqeDepthOptions {
    std::size_t samples{20};
    std::size_t layer_cap{10};
    std::size_t min_layers{1};
    std::size_t iters_per_param{50};
    std::uint64_t seed{1};
    std::size_t workers{0};
    StrategyKind strategy{StrategyKind::Random};
    LayerOrder order{LayerOrder::EvenPhaseOdd};
    /// Overrides the model's own mirror symmetry when set.
    std::optional<bool> mirror_tied{};
};

struct VqeDepthLevel {
    std::size_t layers{0};
    std::size_t params{0};
    std::size_t passed{0};
    double min_fidelity{0.0};
    double mean_fidelity{0.0};
};

struct VqeDepthResult {
    std::size_t m_star{0};
    std::size_t params{0};
    std::size_t cnots{0};
    std::vector<VqeDepthLevel> levels;
};

/// Smallest depth at which every sample reaches the threshold
/// within iters_per_param * L iterations.
VqeDepthResult min_layers_vqe(const HamiltonianSpec &model, double threshold,
                              const VqeDepthOptions &options = {});

} // namespace vqgs
