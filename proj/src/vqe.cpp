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
#include "vqgs/vqe.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "vqgs/error.hpp"

namespace vqgs {

AnsatzSpec AnsatzSpec::for_model(const HamiltonianSpec &model, std::size_t layers) {
    AnsatzSpec spec;
    spec.model = model;
    spec.layers = layers;
    spec.mirror_tied = model.mirror_symmetric();
    return spec;
}

const char *to_string(LayerOrder order) {
    return order == LayerOrder::EvenPhaseOdd ? "even-phase-odd" : "phase-odd-even";
}

bool AnsatzSpec::sz_conserving() const { return model.conserves_sz(); }

void AnsatzSpec::validate() const {
    model.validate();
    require(n_qubits() >= 2 && n_qubits() % 2 == 0, ErrorKind::InvalidArgument,
            "the ansatz needs an even qubit count");
    require(layers >= 1, ErrorKind::InvalidArgument, "the ansatz needs at least one layer");
    require(n_qubits() <= kMaxPureQubits, ErrorKind::ResourceLimit,
            "register too large for the state-vector simulator");
}

std::size_t vqe_param_count(std::size_t n, std::size_t layers, bool mirror_tied) {
    const std::size_t phases = mirror_tied ? n / 2 : n;
    return (phases + n - 1) * layers;
}

Ansatz::Ansatz(AnsatzSpec spec) : spec_(std::move(spec)) {
    spec_.validate();
    const std::size_t n = spec_.n_qubits();
    phase_per_layer_ = spec_.mirror_tied ? n / 2 : n;
    per_layer_ = phase_per_layer_ + (n - 1);
    hamiltonian_bonds_ = spec_.model.bonds();

    BondCoupling scale{1.0, 1.0, 1.0};
    if (spec_.model.model == ModelKind::XYZ) {
        scale = {spec_.model.jx, spec_.model.jy, spec_.model.jz};
    }
    auto phases = [&](std::size_t m) {
        for (std::size_t q = 0; q < n; ++q) {
            const auto [p, sign] = phase_param(m, q);
            slots_.push_back({SlotKind::Phase, m, q, q, p, sign, {}});
        }
    };
    auto bonds = [&](std::size_t m, std::size_t parity) {
        for (std::size_t b = parity; b + 1 < n; b += 2) {
            slots_.push_back(
                {SlotKind::Entangler, m, b, b + 1, entangler_param(m, b), 1.0, scale});
        }
    };
    for (std::size_t m = 0; m < spec_.layers; ++m) {
        if (spec_.order == LayerOrder::PhaseOddEven) {
            phases(m);
            bonds(m, 0);
            bonds(m, 1);
        } else {
            bonds(m, 1);
            phases(m);
            bonds(m, 0);
        }
    }
}

std::pair<std::size_t, double> Ansatz::phase_param(std::size_t layer, std::size_t site) const {
    const std::size_t n = n_qubits();
    const std::size_t base = layer * per_layer_;
    if (!spec_.mirror_tied || site < n / 2) {
        return {base + site, 1.0};
    }
    return {base + (n - 1 - site), -1.0};
}

std::size_t Ansatz::entangler_param(std::size_t layer, std::size_t bond) const {
    return layer * per_layer_ + phase_per_layer_ + bond;
}

void Ansatz::check_length(std::span<const double> theta) const {
    require(theta.size() == param_count(), ErrorKind::DimensionMismatch,
            "parameter vector has length " + std::to_string(theta.size()) +
                ", the ansatz needs " + std::to_string(param_count()));
}

GateDescriptor Ansatz::gate(const GateSlot &s, std::span<const double> theta) const {
    const double t = theta[s.param];
    if (s.kind == SlotKind::Phase) {
        return GateDescriptor::phase(s.q0, s.sign * t);
    }
    return GateDescriptor::entangler(s.q0, s.q1, s.scale.jx * t, s.scale.jy * t,
                                     s.scale.jz * t);
}

Circuit Ansatz::bind(std::span<const double> theta) const {
    check_length(theta);
    Circuit c(n_qubits());
    for (std::size_t i = 0; i < slots_.size(); ++i) {
        if (i == 0 || slots_[i].layer != slots_[i - 1].layer) {
            c.mark_layer();
        }
        c.add(gate(slots_[i], theta));
    }
    return c;
}

PureState Ansatz::initial_state() const { return prepare_singlet_product(n_qubits()); }

PureState Ansatz::prepare(std::span<const double> theta) const {
    check_length(theta);
    PureState psi = initial_state();
    for (const auto &s : slots_) {
        apply_gate(psi, gate(s, theta));
    }
    return psi;
}

double Ansatz::energy(std::span<const double> theta) const {
    return expectation_energy(spec_.model, prepare(theta));
}

std::vector<double> Ansatz::gradient(std::span<const double> theta, double *energy_out,
                                     PureState *state_out) const {
    const std::size_t n = n_qubits();
    PureState phi = prepare(theta);
    PureState lambda = apply_hamiltonian(spec_.model, phi);
    if (energy_out != nullptr) {
        *energy_out = inner_product(phi, lambda).real();
    }
    if (state_out != nullptr) {
        *state_out = phi;
    }
    // U = exp(i t c G): dE/dt = -2 c Im <lambda|G|phi>, taken after the gate.
    std::vector<double> grad(param_count(), 0.0);
    for (auto it = slots_.rbegin(); it != slots_.rend(); ++it) {
        const GateSlot &s = *it;
        if (s.kind == SlotKind::Phase) {
            const std::uint64_t mask = site_mask(n, s.q0);
            cplx acc{0.0, 0.0};
            for (std::size_t i = 0; i < phi.dim(); ++i) {
                if (i & mask) {
                    acc += std::conj(lambda[i]) * phi[i];
                }
            }
            grad[s.param] += -2.0 * s.sign * acc.imag();
        } else {
            const cplx g = pair_matrix_element(lambda.amplitudes(), phi.amplitudes(), n,
                                               s.q0, s.q1, s.scale);
            grad[s.param] += -2.0 * g.imag();
        }
        const GateDescriptor inv = gate(s, theta).inverse();
        apply_gate(phi, inv);
        apply_gate(lambda, inv);
    }
    return grad;
}

AdamState::AdamState(std::size_t n, AdamHyper h)
    : m(n, 0.0), v(n, 0.0), v_max(n, 0.0), hyper(h) {}

void adam_step(std::span<double> theta, AdamState &state, std::span<const double> grad) {
    require(theta.size() == grad.size() && state.m.size() == theta.size(),
            ErrorKind::DimensionMismatch, "Adam state and gradient lengths differ");
    const AdamHyper &h = state.hyper;
    state.t += 1;
    const double t = static_cast<double>(state.t);
    const double bias1 = 1.0 - std::pow(h.beta1, t);
    const double bias2 = 1.0 - std::pow(h.beta2, t);
    for (std::size_t i = 0; i < theta.size(); ++i) {
        state.m[i] = h.beta1 * state.m[i] + (1.0 - h.beta1) * grad[i];
        state.v[i] = h.beta2 * state.v[i] + (1.0 - h.beta2) * grad[i] * grad[i];
        state.v_max[i] = std::max(state.v_max[i], state.v[i]);
        const double second = h.amsgrad ? state.v_max[i] : state.v[i];
        const double m_hat = state.m[i] / bias1;
        const double v_hat = second / bias2;
        theta[i] -= h.alpha * m_hat / (std::sqrt(v_hat) + h.epsilon);
    }
}

void OptimizationTrace::extend(const OptimizationTrace &next) {
    if (energy.empty()) {
        *this = next;
        return;
    }
    energy.insert(energy.end(), next.energy.begin() + 1, next.energy.end());
    fidelity.insert(fidelity.end(), next.fidelity.begin() + 1, next.fidelity.end());
    checkpoints.insert(checkpoints.end(), next.checkpoints.begin(), next.checkpoints.end());
    theta = next.theta;
    best_energy = std::min(best_energy, next.best_energy);
}

OptimizationTrace optimize(const Ansatz &ansatz, std::vector<double> theta0,
                           const OptimizeOptions &options, const GroundStateResult *target,
                           const IterationRecorder &recorder) {
    require(options.max_iter >= 1, ErrorKind::InvalidArgument, "max_iter must be >= 1");
    require(theta0.size() == ansatz.param_count(), ErrorKind::DimensionMismatch,
            "initial parameters do not match the ansatz");
    OptimizationTrace trace;
    trace.energy.reserve(options.max_iter + 1);
    trace.fidelity.reserve(options.max_iter + 1);
    AdamState adam(theta0.size(), options.hyper);
    std::vector<double> theta = std::move(theta0);
    PureState psi(ansatz.n_qubits());
    const double nan = std::numeric_limits<double>::quiet_NaN();

    for (std::size_t it = 0; it <= options.max_iter; ++it) {
        double e = 0.0;
        std::vector<double> grad;
        if (it < options.max_iter) {
            grad = ansatz.gradient(theta, &e, &psi);
        } else {
            psi = ansatz.prepare(theta);
            e = expectation_energy(ansatz.spec().model, psi);
        }
        double f = nan;
        const bool want_f = target != nullptr &&
                            ((options.fidelity_every != 0 && it % options.fidelity_every == 0) ||
                             it == options.max_iter);
        if (want_f) {
            f = target->fidelity_with(psi);
        }
        trace.energy.push_back(e);
        trace.fidelity.push_back(f);
        if (options.checkpoint_every != 0 && it % options.checkpoint_every == 0) {
            trace.checkpoints.emplace_back(it, theta);
        }
        if (recorder) {
            recorder(it, e, f);
        }
        if (it < options.max_iter) {
            adam_step(theta, adam, grad);
        }
    }
    trace.best_energy = *std::min_element(trace.energy.begin(), trace.energy.end());
    trace.theta = std::move(theta);
    return trace;
}

std::optional<std::size_t> energy_plateau(std::span<const double> energy, double tol,
                                          std::size_t window) {
    if (window == 0 || energy.size() <= window) {
        return std::nullopt;
    }
    for (std::size_t i = 0; i + window < energy.size(); ++i) {
        const auto [lo, hi] = std::minmax_element(energy.begin() + static_cast<std::ptrdiff_t>(i),
                                                  energy.begin() + static_cast<std::ptrdiff_t>(i + window + 1));
        if (*hi - *lo < tol) {
            return i + window;
        }
    }
    return std::nullopt;
}

} // namespace vqgs
