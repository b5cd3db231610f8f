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
#include "vqgs/adiabatic.hpp"

#include <cmath>
#include <string>

#include "vqgs/error.hpp"

namespace vqgs {

namespace {

constexpr cplx kMinusI{0.0, -1.0};

/// Bonds of H_odd + s H_even.
std::vector<BondCoupling> ramp_bonds(std::size_t n, double j, double s) {
    return HamiltonianSpec::adiabatic_instant(n, j, s).bonds();
}

void rhs(std::size_t n, double j, double t, double t_max,
         std::span<const cplx> y, std::span<cplx> out) {
    std::fill(out.begin(), out.end(), cplx{0.0, 0.0});
    const auto bonds = ramp_bonds(n, j, t_max > 0.0 ? t / t_max : 1.0);
    accumulate_bonds<cplx>(bonds, n, y, out);
    for (auto &x : out) {
        x *= kMinusI;
    }
}

PureState rk4(std::size_t n, double t_max, double step, double j) {
    PureState psi = prepare_singlet_product(n);
    if (t_max <= 0.0) {
        return psi;
    }
    const auto steps = static_cast<std::size_t>(std::ceil(t_max / step));
    const double h = t_max / static_cast<double>(steps);
    const std::size_t dim = psi.dim();
    std::vector<cplx> k1(dim), k2(dim), k3(dim), k4(dim), tmp(dim);
    auto y = psi.amplitudes();
    for (std::size_t s = 0; s < steps; ++s) {
        const double t = static_cast<double>(s) * h;
        rhs(n, j, t, t_max, y, k1);
        for (std::size_t i = 0; i < dim; ++i)
            tmp[i] = y[i] + 0.5 * h * k1[i];
        rhs(n, j, t + 0.5 * h, t_max, tmp, k2);
        for (std::size_t i = 0; i < dim; ++i)
            tmp[i] = y[i] + 0.5 * h * k2[i];
        rhs(n, j, t + 0.5 * h, t_max, tmp, k3);
        for (std::size_t i = 0; i < dim; ++i)
            tmp[i] = y[i] + h * k3[i];
        rhs(n, j, t + h, t_max, tmp, k4);
        for (std::size_t i = 0; i < dim; ++i)
            y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    return psi;
}

void append_bond_layer(Circuit &c, std::size_t n, std::size_t parity,
                       double angle) {
    for (std::size_t b = parity; b + 1 < n; b += 2) {
        c.add(GateDescriptor::entangler(b, b + 1, angle, angle, angle));
    }
}

} // namespace

void AdiabaticRun::validate() const {
    require(n_qubits >= 2 && n_qubits % 2 == 0, ErrorKind::InvalidArgument,
            "adiabatic runs need an even qubit count");
    require(t_max > 0.0, ErrorKind::InvalidArgument, "T_max must be positive");
    require(m_steps >= 1, ErrorKind::InvalidArgument, "M_steps must be >= 1");
    require(threshold > 0.0 && threshold < 1.0, ErrorKind::InvalidArgument,
            "threshold must lie in (0, 1)");
}

const char *to_string(TrotterOrder order) {
    return order == TrotterOrder::ST1 ? "ST1" : "ST2";
}

PureState exact_evolve(std::size_t n, double t_max, double step,
                       const GroundStateResult *reference, bool self_check,
                       double check_tolerance, double j) {
    require(n >= 2 && n % 2 == 0, ErrorKind::InvalidArgument,
            "exact evolution needs an even qubit count");
    require(t_max >= 0.0, ErrorKind::InvalidArgument, "T_max must be >= 0");
    require(step > 0.0, ErrorKind::InvalidArgument, "integrator step must be positive");
    PureState coarse = rk4(n, t_max, step, j);
    if (!self_check || t_max == 0.0) {
        return coarse;
    }
    PureState fine = rk4(n, t_max, step / 2, j);
    double change = 0.0;
    if (reference != nullptr) {
        change = std::abs(reference->fidelity_with(coarse) - reference->fidelity_with(fine));
    } else {
        change = 1.0 - fidelity(coarse, fine);
    }
    require(change < check_tolerance, ErrorKind::NotConverged,
            "integrator step " + std::to_string(step) +
                " fails the halving self-check (fidelity change " +
                std::to_string(change) + ")");
    return fine;
}

Circuit build_trotter_step(std::size_t k, double dt, TrotterOrder order,
                           std::size_t n, double t_max, double j) {
    require(k >= 1, ErrorKind::InvalidArgument, "Trotter step index starts at 1");
    require(t_max > 0.0, ErrorKind::InvalidArgument, "T_max must be positive");
    require(static_cast<double>(k) * dt <= t_max * (1.0 + 1e-12),
            ErrorKind::InvalidArgument, "Trotter step index beyond T_max / dt");
    require(n >= 2, ErrorKind::InvalidArgument, "Trotter layer needs two qubits");
    Circuit c(n);
    const double even_tau = static_cast<double>(k) * dt * dt / t_max;
    if (order == TrotterOrder::ST1) {
        append_bond_layer(c, n, 0, -j * dt);
        append_bond_layer(c, n, 1, -j * even_tau);
    } else {
        append_bond_layer(c, n, 0, -j * dt / 2);
        append_bond_layer(c, n, 1, -j * even_tau);
        append_bond_layer(c, n, 0, -j * dt / 2);
    }
    return c;
}

Circuit build_adiabatic_circuit(const AdiabaticRun &run, double j) {
    run.validate();
    Circuit c(run.n_qubits);
    for (std::size_t k = 1; k <= run.m_steps; ++k) {
        c.mark_layer();
        c.append(build_trotter_step(k, run.dt(), run.order, run.n_qubits, run.t_max, j));
    }
    return c;
}

ResourceCount resource_count(std::size_t n, std::size_t m, TrotterOrder order) {
    const std::size_t per_layer =
        order == TrotterOrder::ST1 ? 3 * (n - 1) : 3 * (3 * n / 2 - 1);
    return {m, per_layer * m};
}

AdiabaticProblem::AdiabaticProblem(std::size_t n, double j, SearchOptions options)
    : n_(n), j_(j), options_(options),
      target_(ground_state(HamiltonianSpec::heisenberg(n, j))) {}

PureState AdiabaticProblem::evolve(double t_max) const {
    double step = options_.integrator_step;
    for (int attempt = 0; attempt < 6; ++attempt) {
        try {
            return exact_evolve(n_, t_max, step, &target_, true, 1e-6, j_);
        } catch (const Error &e) {
            if (e.kind() != ErrorKind::NotConverged) {
                throw;
            }
            step /= 2;
        }
    }
    fail(ErrorKind::NotConverged, "exact evolution did not pass the step self-check");
}

double AdiabaticProblem::exact_fidelity(double t_max) const {
    return target_.fidelity_with(evolve(t_max));
}

double AdiabaticProblem::min_tmax(double threshold) const {
    require(threshold > 0.0 && threshold < 1.0, ErrorKind::InvalidArgument,
            "threshold must lie in (0, 1)");
    double hi = options_.tmax_initial;
    double lo = 0.0;
    while (exact_fidelity(hi) < threshold) {
        lo = hi;
        hi *= 2.0;
        require(hi <= options_.tmax_cap, ErrorKind::SearchCapExceeded,
                "T_max search exceeded cap " + std::to_string(options_.tmax_cap));
    }
    while ((hi - lo) / hi > options_.tmax_resolution) {
        const double mid = 0.5 * (lo + hi);
        if (exact_fidelity(mid) >= threshold) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return hi;
}

double AdiabaticProblem::schedule_tmax(double threshold) const {
    if (options_.schedule == TmaxSchedule::Bisection) {
        return min_tmax(threshold);
    }
    require(threshold > 0.0 && threshold < 1.0, ErrorKind::InvalidArgument,
            "threshold must lie in (0, 1)");
    require(options_.tmax_coefficient > 0.0, ErrorKind::InvalidArgument,
            "T_max coefficient must be positive");
    const double n2 = static_cast<double>(n_ * n_);
    double t = options_.tmax_coefficient * n2;
    while (exact_fidelity(t) < threshold) {
        t *= 2.0;
        require(t <= options_.tmax_cap, ErrorKind::SearchCapExceeded,
                "T_max search exceeded cap " + std::to_string(options_.tmax_cap));
    }
    return t;
}

PureState AdiabaticProblem::trotter_state(double t_max, std::size_t m,
                                          TrotterOrder order) const {
    PureState psi = prepare_singlet_product(n_);
    const double dt = t_max / static_cast<double>(m);
    for (std::size_t k = 1; k <= m; ++k) {
        apply_circuit(psi, build_trotter_step(k, dt, order, n_, t_max, j_));
    }
    return psi;
}

double AdiabaticProblem::trotter_fidelity(double t_max, std::size_t m,
                                          TrotterOrder order) const {
    return target_.fidelity_with(trotter_state(t_max, m, order));
}

std::size_t AdiabaticProblem::min_layers(double t_max, double threshold,
                                         TrotterOrder order) const {
    require(threshold > 0.0 && threshold < 1.0, ErrorKind::InvalidArgument,
            "threshold must lie in (0, 1)");
    std::size_t hi = 1;
    std::size_t lo = 0; // largest M known to fail
    while (trotter_fidelity(t_max, hi, order) < threshold) {
        lo = hi;
        hi *= 2;
        require(hi <= options_.m_cap, ErrorKind::SearchCapExceeded,
                "Trotter depth search exceeded cap " + std::to_string(options_.m_cap));
    }
    while (hi - lo > 1) {
        const std::size_t mid = lo + (hi - lo) / 2;
        if (trotter_fidelity(t_max, mid, order) >= threshold) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return hi;
}

DepthSearchResult min_layers_adiabatic(std::size_t n, double threshold,
                                       TrotterOrder order,
                                       const SearchOptions &options) {
    const AdiabaticProblem problem(n, 1.0, options);
    DepthSearchResult r;
    r.t_max = problem.schedule_tmax(threshold);
    r.m_star = problem.min_layers(r.t_max, threshold, order);
    r.cnots = resource_count(n, r.m_star, order).cnots;
    r.fidelity = problem.trotter_fidelity(r.t_max, r.m_star, order);
    return r;
}

double min_tmax(std::size_t n, double threshold, const SearchOptions &options) {
    return AdiabaticProblem(n, 1.0, options).min_tmax(threshold);
}

} // namespace vqgs
