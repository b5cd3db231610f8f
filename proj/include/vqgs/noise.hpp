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
#include <random>
#include <vector>

#include "vqgs/gates.hpp"
#include "vqgs/hamiltonian.hpp"
#include "vqgs/state.hpp"
#include "vqgs/vqe.hpp"

namespace vqgs {

struct NoiseConfig {
    /// phi ~ Uniform[-h, h] on every CNOT.
    double h{0.0};
    /// gamma * dt applied after each layer.
    double gamma_dt{0.0};
    std::size_t realizations{100};
    std::uint64_t seed{1};
    /// 0 means default_workers().
    std::size_t workers{0};

    void validate() const;
};

/// sqrt(i) H_2 exp(i Z1 Z2 (pi/4 + phi)) exp(-i Z1 pi/4) exp(-i Z2 pi/4) H_2,
/// with qubit 1 the control (high bit). Equal to CNOT at phi = 0.
Matrix4 noisy_cnot(double phi);

/// Expands entanglers, then replaces each CNOT by noisy_cnot(phi) with an
/// independent phi ~ Uniform[-h, h]. Single-qubit gates stay exact.
Circuit sample_noisy_circuit(const Circuit &circuit, double h, std::mt19937_64 &rng);

struct NoisyFidelity {
    double mean{0.0};
    double std{0.0};
    std::vector<double> values;
};

/// Average ground-state fidelity of the ansatz output over noisy-CNOT draws.
NoisyFidelity avg_noisy_fidelity(const Ansatz &ansatz, std::span<const double> theta,
                                 const GroundStateResult &target, const NoiseConfig &config);

/// Phase-flip channel on every qubit: rho_ij *= exp(-2 gamma_dt d(i, j)),
/// d the Hamming distance. This is the exact solution of
/// d rho / dt = gamma sum_k (Z_k rho Z_k - rho) over time dt.
void dephasing_channel(MixedState &rho, double gamma_dt);

/// Alternates each ansatz layer with the dephasing channel.
MixedState noisy_layered_output(const Ansatz &ansatz, std::span<const double> theta,
                                double gamma_dt);

/// Weight of rho on the target ground space.
double ground_space_fidelity(const MixedState &rho, const GroundStateResult &target);

} // namespace vqgs
