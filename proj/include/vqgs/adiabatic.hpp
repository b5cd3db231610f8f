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
#include <optional>

#include "vqgs/gates.hpp"
#include "vqgs/hamiltonian.hpp"
#include "vqgs/state.hpp"

namespace vqgs {

enum class TrotterOrder { ST1, ST2 };

/// One digitized sweep: M_steps Trotter layers covering [0, t_max].
struct AdiabaticRun {
    std::size_t n_qubits{4};
    double t_max{1.0};
    std::size_t m_steps{1};
    TrotterOrder order{TrotterOrder::ST2};
    double threshold{0.99};

    [[nodiscard]] double dt() const { return t_max / static_cast<double>(m_steps); }
    void validate() const;
};

struct ResourceCount {
    std::size_t layers{0};
    std::size_t cnots{0};
};

/// Integrates i d/dt psi = (H_odd + t/T H_even) psi with classical RK4 from
/// the singlet product. When self_check is set, the run is repeated at half
/// the step and `reference` (if given) or the half-step state itself is used
/// to bound the change in fidelity; a change above check_tolerance throws
/// ErrorKind::NotConverged.
PureState exact_evolve(std::size_t n, double t_max, double step,
                       const GroundStateResult *reference = nullptr,
                       bool self_check = true, double check_tolerance = 1e-6,
                       double j = 1.0);

/// One Trotter layer for time step k (1-based) of size dt. Every two-site
/// exponential exp(-i J tau s.s) is one Entangler with all angles -J tau.
Circuit build_trotter_step(std::size_t k, double dt, TrotterOrder order,
                           std::size_t n, double t_max, double j = 1.0);

Circuit build_adiabatic_circuit(const AdiabaticRun &run, double j = 1.0);

ResourceCount resource_count(std::size_t n, std::size_t m, TrotterOrder order);

/// How the depth pipeline picks T_max. Bisection uses min_tmax directly.
/// Quadratic takes the first T = c N^2 that reaches the threshold, with c
/// doubling from tmax_coefficient.
enum class TmaxSchedule { Quadratic, Bisection };

struct SearchOptions {
    double integrator_step{0.01};
    TmaxSchedule schedule{TmaxSchedule::Quadratic};
    double tmax_coefficient{1.0 / 16.0};
    double tmax_initial{1.0};
    double tmax_cap{1.0e4};
    double tmax_resolution{0.01};
    std::size_t m_cap{200000};
};

/// Caches the target ground state of the uniform Heisenberg chain and runs
/// the T_max and depth searches against it.
class AdiabaticProblem {
  public:
    explicit AdiabaticProblem(std::size_t n, double j = 1.0, SearchOptions options = {});

    [[nodiscard]] std::size_t n_qubits() const noexcept { return n_; }
    [[nodiscard]] const GroundStateResult &target() const noexcept { return target_; }

    /// Exact evolution with the step halved until the self-check passes.
    [[nodiscard]] PureState evolve(double t_max) const;
    [[nodiscard]] double exact_fidelity(double t_max) const;

    /// Smallest T_max on a doubling-then-bisection grid with fidelity >=
    /// threshold, resolved to options.tmax_resolution relative.
    [[nodiscard]] double min_tmax(double threshold) const;

    /// T_max used by the depth search, per options.schedule.
    [[nodiscard]] double schedule_tmax(double threshold) const;

    [[nodiscard]] PureState trotter_state(double t_max, std::size_t m,
                                          TrotterOrder order) const;
    [[nodiscard]] double trotter_fidelity(double t_max, std::size_t m,
                                          TrotterOrder order) const;

    /// Smallest M with trotter_fidelity >= threshold, by doubling then
    /// bisection on the integer M.
    [[nodiscard]] std::size_t min_layers(double t_max, double threshold,
                                         TrotterOrder order) const;

  private:
    std::size_t n_;
    double j_;
    SearchOptions options_;
    GroundStateResult target_;
};

struct DepthSearchResult {
    double t_max{0.0};
    std::size_t m_star{0};
    std::size_t cnots{0};
    double fidelity{0.0};
};

/// schedule_tmax followed by the depth search at that T_max.
DepthSearchResult min_layers_adiabatic(std::size_t n, double threshold,
                                       TrotterOrder order,
                                       const SearchOptions &options = {});

/// Convenience overload of AdiabaticProblem::min_tmax.
double min_tmax(std::size_t n, double threshold, const SearchOptions &options = {});

const char *to_string(TrotterOrder order);

} // namespace vqgs
