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
#include "vqgs/noise.hpp"

#include <bit>
#include <cmath>
#include <numbers>

#include "vqgs/error.hpp"
#include "vqgs/parallel.hpp"

namespace vqgs {

void NoiseConfig::validate() const {
    require(h >= 0.0 && std::isfinite(h), ErrorKind::InvalidArgument, "h must be >= 0");
    require(gamma_dt >= 0.0 && std::isfinite(gamma_dt), ErrorKind::InvalidArgument,
            "gamma_dt must be >= 0");
    require(realizations >= 1, ErrorKind::InvalidArgument, "realizations must be >= 1");
}

namespace {

Matrix4 mul(const Matrix4 &a, const Matrix4 &b) {
    Matrix4 c{};
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t k = 0; k < 4; ++k)
            for (std::size_t j = 0; j < 4; ++j)
                c[i * 4 + j] += a[i * 4 + k] * b[k * 4 + j];
    return c;
}

} // namespace

Matrix4 noisy_cnot(double phi) {
    using std::numbers::pi;
    const double r = 1.0 / std::sqrt(2.0);
    // Hadamard on the low (target) qubit.
    Matrix4 h2{};
    for (std::size_t a = 0; a < 2; ++a) {
        h2[(2 * a) * 4 + 2 * a] = r;
        h2[(2 * a) * 4 + 2 * a + 1] = r;
        h2[(2 * a + 1) * 4 + 2 * a] = r;
        h2[(2 * a + 1) * 4 + 2 * a + 1] = -r;
    }
    Matrix4 d{};
    for (std::size_t i = 0; i < 4; ++i) {
        const double z1 = (i & 2U) ? -1.0 : 1.0;
        const double z2 = (i & 1U) ? -1.0 : 1.0;
        const double angle = z1 * z2 * (pi / 4 + phi) - z1 * pi / 4 - z2 * pi / 4 + pi / 4;
        d[i * 4 + i] = std::polar(1.0, angle);
    }
    return mul(h2, mul(d, h2));
}

Circuit sample_noisy_circuit(const Circuit &circuit, double h, std::mt19937_64 &rng) {
    require(h >= 0.0, ErrorKind::InvalidArgument, "h must be >= 0");
    const Circuit flat = expand_entanglers(circuit);
    std::uniform_real_distribution<double> phi(-h, h);
    Circuit out(flat.n_qubits());
    const auto &marks = flat.layer_marks();
    std::size_t next_mark = 0;
    for (std::size_t i = 0; i < flat.size(); ++i) {
        while (next_mark < marks.size() && marks[next_mark] == i) {
            out.mark_layer();
            ++next_mark;
        }
        const GateDescriptor &g = flat.gates()[i];
        if (g.kind() == GateKind::CNOT) {
            const double p = h > 0.0 ? phi(rng) : 0.0;
            out.add(GateDescriptor::fixed_2q(g.qubit(0), g.qubit(1), noisy_cnot(p), 1));
        } else {
            out.add(g);
        }
    }
    return out;
}

NoisyFidelity avg_noisy_fidelity(const Ansatz &ansatz, std::span<const double> theta,
                                 const GroundStateResult &target, const NoiseConfig &config) {
    config.validate();
    const Circuit clean = ansatz.bind(theta);
    NoisyFidelity out;
    out.values.assign(config.realizations, 0.0);
    parallel_for(config.realizations, config.workers, [&](std::size_t r) {
        std::mt19937_64 rng(derive_seed(config.seed, r));
        PureState psi = ansatz.initial_state();
        apply_circuit(psi, sample_noisy_circuit(clean, config.h, rng));
        out.values[r] = target.fidelity_with(psi);
    });
    const double k = static_cast<double>(out.values.size());
    for (double v : out.values)
        out.mean += v / k;
    double var = 0.0;
    for (double v : out.values)
        var += (v - out.mean) * (v - out.mean);
    out.std = std::sqrt(var / k);
    return out;
}

void dephasing_channel(MixedState &rho, double gamma_dt) {
    require(gamma_dt >= 0.0, ErrorKind::InvalidArgument, "gamma_dt must be >= 0");
    if (gamma_dt == 0.0) {
        return;
    }
    const std::size_t n = rho.n_qubits();
    std::vector<double> decay(n + 1);
    for (std::size_t d = 0; d <= n; ++d) {
        decay[d] = std::exp(-2.0 * gamma_dt * static_cast<double>(d));
    }
    const std::size_t dim = rho.dim();
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < dim; ++j) {
            rho.at(i, j) *= decay[static_cast<std::size_t>(
                std::popcount(static_cast<std::uint64_t>(i ^ j)))];
        }
    }
}

MixedState noisy_layered_output(const Ansatz &ansatz, std::span<const double> theta,
                                double gamma_dt) {
    require(ansatz.n_qubits() <= kMaxMixedQubits, ErrorKind::ResourceLimit,
            "density-matrix simulation is limited to " + std::to_string(kMaxMixedQubits) +
                " qubits");
    const Circuit c = ansatz.bind(theta);
    MixedState rho(ansatz.initial_state());
    for (std::size_t m = 0; m < c.layer_count(); ++m) {
        for (const auto &g : c.layer(m)) {
            apply_gate(rho, g);
        }
        dephasing_channel(rho, gamma_dt);
    }
    return rho;
}

double ground_space_fidelity(const MixedState &rho, const GroundStateResult &target) {
    if (target.ground_space.empty()) {
        return mixed_fidelity(rho, target.state);
    }
    double f = 0.0;
    for (const auto &v : target.ground_space) {
        f += mixed_fidelity(rho, v);
    }
    return f;
}

} // namespace vqgs
