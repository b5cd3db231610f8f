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
#include "vqgs/strategies.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <utility>

#include "vqgs/error.hpp"
#include "vqgs/parallel.hpp"

namespace vqgs {

const char *to_string(StrategyKind kind) {
    switch (kind) {
    case StrategyKind::Random:
        return "random";
    case StrategyKind::QubitRecursive:
        return "qubit";
    case StrategyKind::LayerRecursive:
        return "layer";
    }
    return "random";
}

StrategyKind strategy_from_string(const std::string &name) {
    if (name == "random") {
        return StrategyKind::Random;
    }
    if (name == "qubit" || name == "qubit-recursive") {
        return StrategyKind::QubitRecursive;
    }
    if (name == "layer" || name == "layer-recursive") {
        return StrategyKind::LayerRecursive;
    }
    fail(ErrorKind::InvalidArgument, "unknown strategy '" + name + "'");
}

std::vector<double> init_random(std::size_t count, Rng &rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<double> theta(count);
    for (auto &x : theta) {
        x = normal(rng);
    }
    return theta;
}

std::vector<double> init_qubit_recursive(const Ansatz &half, std::span<const double> theta_half,
                                         const Ansatz &full, Rng &rng) {
    const std::size_t h = half.n_qubits();
    const std::size_t n = full.n_qubits();
    require(n == 2 * h, ErrorKind::InvalidArgument,
            "qubit-recursive seeding needs a half system of exactly n/2 qubits");
    require(full.layers() >= half.layers(), ErrorKind::InvalidArgument,
            "the full circuit cannot be shallower than the half circuit");
    require(half.spec().mirror_tied == full.spec().mirror_tied, ErrorKind::InvalidArgument,
            "half and full ansatz use different phase tying");
    require(theta_half.size() == half.param_count(), ErrorKind::DimensionMismatch,
            "half-system parameters do not match the half ansatz");

    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<double> theta(full.param_count(), 0.0);
    for (std::size_t m = 0; m < half.layers(); ++m) {
        for (std::size_t b = 0; b + 1 < h; ++b) {
            const double t = theta_half[half.entangler_param(m, b)];
            theta[full.entangler_param(m, b)] = t;
            theta[full.entangler_param(m, h + b)] = t;
        }
        theta[full.entangler_param(m, h - 1)] = normal(rng);
        for (std::size_t q = 0; q < h; ++q) {
            const auto [hp, hs] = half.phase_param(m, q);
            const double angle = hs * theta_half[hp];
            const auto [fp, fs] = full.phase_param(m, q);
            theta[fp] = fs * angle;
            if (!full.spec().mirror_tied) {
                const auto [rp, rs] = full.phase_param(m, h + q);
                theta[rp] = rs * angle;
            }
        }
    }
    const std::size_t per = full.params_per_layer();
    for (std::size_t m = half.layers(); m < full.layers(); ++m) {
        std::copy_n(theta.begin() + static_cast<std::ptrdiff_t>((m - 1) * per), per,
                    theta.begin() + static_cast<std::ptrdiff_t>(m * per));
    }
    return theta;
}

std::vector<double> append_copied_layer(std::span<const double> theta, std::size_t per_layer) {
    require(per_layer > 0 && theta.size() >= per_layer && theta.size() % per_layer == 0,
            ErrorKind::DimensionMismatch, "parameter vector is not a whole number of layers");
    std::vector<double> out(theta.begin(), theta.end());
    out.insert(out.end(), theta.end() - static_cast<std::ptrdiff_t>(per_layer), theta.end());
    return out;
}

LayerRecursiveResult run_layer_recursive(const AnsatzSpec &spec,
                                         const std::vector<std::size_t> &iters_per_stage,
                                         Rng &rng, const GroundStateResult *target,
                                         const OptimizeOptions &base) {
    require(spec.layers >= 1, ErrorKind::InvalidArgument, "target depth must be >= 1");
    require(iters_per_stage.size() == spec.layers, ErrorKind::InvalidArgument,
            "one iteration budget per stage is required");
    LayerRecursiveResult result;
    std::vector<double> theta;
    std::size_t cumulative = 0;
    for (std::size_t m = 1; m <= spec.layers; ++m) {
        AnsatzSpec stage_spec = spec;
        stage_spec.layers = m;
        const Ansatz stage(stage_spec);
        if (m == 1) {
            theta = init_random(stage.param_count(), rng);
        } else {
            theta = append_copied_layer(theta, stage.params_per_layer());
        }
        OptimizeOptions opt = base;
        opt.max_iter = iters_per_stage[m - 1];
        OptimizationTrace t = optimize(stage, theta, opt, target);
        theta = t.theta;
        cumulative += opt.max_iter;
        result.stage_ends.push_back(cumulative);
        result.stage_final_energy.push_back(t.final_energy());
        result.trace.extend(t);
    }
    return result;
}

namespace {

std::vector<std::size_t> split_budget(std::size_t total, std::size_t stages) {
    require(total >= stages, ErrorKind::InvalidArgument,
            "iteration budget is smaller than the number of layer-recursive stages");
    std::vector<std::size_t> out(stages, total / stages);
    out.back() += total % stages;
    return out;
}

} // namespace

OptimizationTrace run_strategy(StrategyKind kind, const AnsatzSpec &spec,
                               const StrategyConfig &config, std::uint64_t sample_seed,
                               const GroundStateResult &target) {
    Rng rng(sample_seed);
    OptimizeOptions opt;
    opt.max_iter = config.iterations;
    opt.fidelity_every = config.fidelity_every;
    opt.hyper = config.hyper;
    switch (kind) {
    case StrategyKind::Random: {
        const Ansatz ansatz(spec);
        return optimize(ansatz, init_random(ansatz.param_count(), rng), opt, &target);
    }
    case StrategyKind::QubitRecursive: {
        const std::size_t n = spec.n_qubits();
        require(n % 4 == 0, ErrorKind::InvalidArgument,
                "qubit-recursive seeding needs n divisible by 4 so the half chain is even");
        AnsatzSpec half_spec = spec;
        half_spec.model.n_qubits = n / 2;
        const Ansatz half(half_spec);
        const GroundStateResult half_target = ground_state(half_spec.model);
        OptimizeOptions half_opt = opt;
        half_opt.max_iter = config.half_iters_per_param * half.param_count();
        half_opt.fidelity_every = 0;
        const OptimizationTrace half_trace =
            optimize(half, init_random(half.param_count(), rng), half_opt, &half_target);
        const Ansatz full(spec);
        return optimize(full, init_qubit_recursive(half, half_trace.theta, full, rng), opt,
                        &target);
    }
    case StrategyKind::LayerRecursive: {
        return run_layer_recursive(spec, split_budget(config.iterations, spec.layers), rng,
                                   &target, opt)
            .trace;
    }
    }
    fail(ErrorKind::InvalidArgument, "unknown strategy");
}

double EnsembleStats::standard_error(std::size_t i) const {
    return samples == 0 ? 0.0 : std_fidelity[i] / std::sqrt(static_cast<double>(samples));
}

EnsembleStats run_ensemble(const AnsatzSpec &spec, const StrategyConfig &config,
                           const GroundStateResult &target) {
    require(config.samples >= 1, ErrorKind::InvalidArgument, "samples must be >= 1");
    require(config.iterations >= 1, ErrorKind::InvalidArgument, "iterations must be >= 1");
    spec.validate();
    std::vector<OptimizationTrace> traces(config.samples);
    EnsembleStats stats;
    stats.kind = config.kind;
    stats.samples = config.samples;
    stats.sample_seeds.resize(config.samples);
    for (std::size_t s = 0; s < config.samples; ++s) {
        stats.sample_seeds[s] = derive_seed(config.seed, s);
    }
    parallel_for(config.samples, config.workers, [&](std::size_t s) {
        traces[s] = run_strategy(config.kind, spec, config, stats.sample_seeds[s], target);
    });

    const std::size_t len = traces.front().energy.size();
    const double k = static_cast<double>(config.samples);
    auto moments = [&](auto get, std::vector<double> &mean, std::vector<double> &sd) {
        mean.assign(len, 0.0);
        sd.assign(len, 0.0);
        for (std::size_t i = 0; i < len; ++i) {
            double sum = 0.0;
            for (const auto &t : traces) {
                sum += get(t, i);
            }
            const double mu = sum / k;
            double var = 0.0;
            for (const auto &t : traces) {
                const double d = get(t, i) - mu;
                var += d * d;
            }
            mean[i] = mu;
            sd[i] = std::isnan(mu) ? mu : std::sqrt(var / k);
        }
    };
    moments([](const OptimizationTrace &t, std::size_t i) { return t.fidelity[i]; },
            stats.mean_fidelity, stats.std_fidelity);
    moments([](const OptimizationTrace &t, std::size_t i) { return t.energy[i]; },
            stats.mean_energy, stats.std_energy);
    for (const auto &t : traces) {
        stats.final_fidelity.push_back(t.final_fidelity());
        stats.final_energy.push_back(t.final_energy());
    }
    stats.traces = std::move(traces);
    return stats;
}

VqeDepthResult min_layers_vqe(const HamiltonianSpec &model, double threshold,
                              const VqeDepthOptions &options) {
    require(threshold > 0.0 && threshold <= 1.0, ErrorKind::InvalidArgument,
            "threshold must lie in (0, 1]");
    require(options.samples >= 1, ErrorKind::InvalidArgument, "samples must be >= 1");
    require(options.min_layers >= 1 && options.min_layers <= options.layer_cap,
            ErrorKind::InvalidArgument, "layer range is empty");
    const GroundStateResult target = ground_state(model);
    VqeDepthResult result;
    for (std::size_t m = options.min_layers; m <= options.layer_cap; ++m) {
        AnsatzSpec spec = AnsatzSpec::for_model(model, m);
        spec.order = options.order;
        if (options.mirror_tied) {
            spec.mirror_tied = *options.mirror_tied;
        }
        const Ansatz ansatz(spec);
        StrategyConfig config;
        config.kind = options.strategy;
        config.seed = derive_seed(options.seed, m);
        config.samples = options.samples;
        config.iterations = options.iters_per_param * ansatz.param_count();
        config.fidelity_every = 0;
        config.workers = options.workers;
        const EnsembleStats stats = run_ensemble(spec, config, target);

        VqeDepthLevel level;
        level.layers = m;
        level.params = ansatz.param_count();
        level.passed = static_cast<std::size_t>(
            std::count_if(stats.final_fidelity.begin(), stats.final_fidelity.end(),
                          [&](double f) { return f >= threshold; }));
        level.min_fidelity =
            *std::min_element(stats.final_fidelity.begin(), stats.final_fidelity.end());
        level.mean_fidelity =
            std::accumulate(stats.final_fidelity.begin(), stats.final_fidelity.end(), 0.0) /
            static_cast<double>(stats.final_fidelity.size());
        result.levels.push_back(level);
        if (level.passed == options.samples) {
            result.m_star = m;
            result.params = ansatz.param_count();
            result.cnots = ansatz.cnot_count();
            return result;
        }
    }
    fail(ErrorKind::SearchCapExceeded,
         "no depth up to " + std::to_string(options.layer_cap) + " layers reached fidelity " +
             std::to_string(threshold) + " on every sample");
}

} // namespace vqgs
