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
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "vqgs/gates.hpp"
#include "vqgs/hamiltonian.hpp"
#include "vqgs/state.hpp"

namespace vqgs {

/// Gate order inside one layer. "Odd" bonds are (0,1), (2,3), ..., the ones
/// holding the singlets of the initial state.
enum class LayerOrder {
    /// Even-bond entanglers, one phase gate per qubit, odd-bond entanglers.
    EvenPhaseOdd,
    /// Phase gates, odd-bond entanglers, even-bond entanglers.
    PhaseOddEven,
};

const char *to_string(LayerOrder order);

/// Variational circuit family acting on the singlet product.
struct AnsatzSpec {
    HamiltonianSpec model{};
    std::size_t layers{1};
    /// Phase angle at site k equals minus the angle at site n-1-k.
    bool mirror_tied{true};
    LayerOrder order{LayerOrder::EvenPhaseOdd};

    /// Mirror tying follows the model's own mirror symmetry.
    static AnsatzSpec for_model(const HamiltonianSpec &model, std::size_t layers);

    [[nodiscard]] std::size_t n_qubits() const noexcept { return model.n_qubits; }
    [[nodiscard]] bool sz_conserving() const;
    void validate() const;
};

enum class SlotKind { Phase, Entangler };

/// One physical gate of the bound circuit and the parameter that drives it.
/// Phase: angle = sign * theta[param]. Entangler: angles = scale * theta[param].
struct GateSlot {
    SlotKind kind{SlotKind::Phase};
    std::size_t layer{0};
    std::size_t q0{0};
    std::size_t q1{0};
    std::size_t param{0};
    double sign{1.0};
    BondCoupling scale{};
};

class Ansatz {
  public:
    explicit Ansatz(AnsatzSpec spec);

    [[nodiscard]] const AnsatzSpec &spec() const noexcept { return spec_; }
    [[nodiscard]] std::size_t n_qubits() const noexcept { return spec_.n_qubits(); }
    [[nodiscard]] std::size_t layers() const noexcept { return spec_.layers; }
    [[nodiscard]] std::size_t param_count() const noexcept { return per_layer_ * spec_.layers; }
    [[nodiscard]] std::size_t params_per_layer() const noexcept { return per_layer_; }
    [[nodiscard]] std::size_t phase_params_per_layer() const noexcept { return phase_per_layer_; }
    [[nodiscard]] const std::vector<GateSlot> &slots() const noexcept { return slots_; }

    /// Parameter driving the phase gate on `site` in `layer`, with its sign.
    [[nodiscard]] std::pair<std::size_t, double> phase_param(std::size_t layer,
                                                             std::size_t site) const;
    /// Parameter driving the entangler on bond (bond, bond+1) in `layer`.
    [[nodiscard]] std::size_t entangler_param(std::size_t layer, std::size_t bond) const;

    [[nodiscard]] Circuit bind(std::span<const double> theta) const;
    [[nodiscard]] PureState initial_state() const;
    [[nodiscard]] PureState prepare(std::span<const double> theta) const;
    [[nodiscard]] double energy(std::span<const double> theta) const;

    /// Exact gradient by a reverse adjoint sweep. Optionally returns the
    /// energy and the output state of the forward pass.
    [[nodiscard]] std::vector<double> gradient(std::span<const double> theta,
                                               double *energy_out = nullptr,
                                               PureState *state_out = nullptr) const;

    [[nodiscard]] std::size_t cnot_count() const noexcept {
        return 3 * (n_qubits() - 1) * spec_.layers;
    }

  private:
    void check_length(std::span<const double> theta) const;
    [[nodiscard]] GateDescriptor gate(const GateSlot &s, std::span<const double> theta) const;

    AnsatzSpec spec_;
    std::size_t phase_per_layer_{0};
    std::size_t per_layer_{0};
    std::vector<GateSlot> slots_;
    std::vector<BondCoupling> hamiltonian_bonds_;
};

/// L for a layered ansatz on n qubits.
std::size_t vqe_param_count(std::size_t n, std::size_t layers, bool mirror_tied);

struct AdamHyper {
    double alpha{0.01};
    double beta1{0.9};
    double beta2{0.999};
    double epsilon{1e-8};
    bool amsgrad{true};
};

struct AdamState {
    std::size_t t{0};
    std::vector<double> m;
    std::vector<double> v;
    std::vector<double> v_max;
    AdamHyper hyper{};

    AdamState() = default;
    explicit AdamState(std::size_t n, AdamHyper h = {});
};

/// One bias-corrected Adam update, in place.
void adam_step(std::span<double> theta, AdamState &state, std::span<const double> grad);

struct OptimizeOptions {
    std::size_t max_iter{100};
    /// Fidelity is recorded every this many iterations (0 disables it).
    std::size_t fidelity_every{1};
    /// Parameter snapshots every this many iterations (0 keeps only the end).
    std::size_t checkpoint_every{0};
    AdamHyper hyper{};
};

/// energy[i] and fidelity[i] belong to the parameters after i updates, so
/// both hold max_iter + 1 entries. Unrecorded fidelities are NaN.
struct OptimizationTrace {
    std::vector<double> energy;
    std::vector<double> fidelity;
    std::vector<std::pair<std::size_t, std::vector<double>>> checkpoints;
    std::vector<double> theta;
    double best_energy{0.0};

    [[nodiscard]] double final_energy() const { return energy.back(); }
    [[nodiscard]] double final_fidelity() const { return fidelity.back(); }
    /// Appends another trace, dropping its first entry, which repeats ours.
    void extend(const OptimizationTrace &next);
};

using IterationRecorder = std::function<void(std::size_t iter, double energy, double fidelity)>;

/// Runs exactly options.max_iter Adam updates from theta0.
OptimizationTrace optimize(const Ansatz &ansatz, std::vector<double> theta0,
                           const OptimizeOptions &options,
                           const GroundStateResult *target = nullptr,
                           const IterationRecorder &recorder = {});

/// First iteration after which the energy changes by less than tol over
/// `window` consecutive iterations.
std::optional<std::size_t> energy_plateau(std::span<const double> energy, double tol,
                                          std::size_t window);

} // namespace vqgs
