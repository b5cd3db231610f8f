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

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "vqgs/state.hpp"

namespace vqgs {

/// Coefficients of Jx XX + Jy YY + Jz ZZ on one nearest-neighbour bond.
struct BondCoupling {
    double jx{1.0};
    double jy{1.0};
    double jz{1.0};
};

enum class ModelKind { Heisenberg, XYZ, Kondo, AdiabaticInstant };

/**
 * Open-chain two-site spin Hamiltonian.
 *
 * Heisenberg:       J sum_i s_i . s_{i+1}
 * XYZ:              sum_i Jx XX + Jy YY + Jz ZZ
 * Kondo:            J (J' s_1 . s_2 + sum_{i>=2} s_i . s_{i+1})
 * AdiabaticInstant: H_odd + s H_even, where H_odd holds the bonds (1,2),
 *                   (3,4), ... in 1-based site numbering.
 */
struct HamiltonianSpec {
    ModelKind model{ModelKind::Heisenberg};
    std::size_t n_qubits{2};
    double j{1.0};
    double jx{1.0};
    double jy{1.0};
    double jz{1.0};
    double j_prime{1.0};
    double s{1.0};

    static HamiltonianSpec heisenberg(std::size_t n, double j = 1.0);
    static HamiltonianSpec xyz(std::size_t n, double jx, double jy, double jz);
    static HamiltonianSpec kondo(std::size_t n, double j, double j_prime);
    static HamiltonianSpec adiabatic_instant(std::size_t n, double j, double s);

    /// Throws on hard violations; returns soft warnings (e.g. J' outside (0,1)).
    std::vector<std::string> validate() const;

    /// Coupling for bond (i, i+1), i = 0 .. n-2.
    [[nodiscard]] std::vector<BondCoupling> bonds() const;
    [[nodiscard]] bool conserves_sz() const;
    [[nodiscard]] bool mirror_symmetric() const;
    [[nodiscard]] std::string name() const;
};

/// out += sum_bonds (Jx XX + Jy YY + Jz ZZ) in, for real or complex buffers.
template <typename T>
void accumulate_bonds(std::span<const BondCoupling> bonds, std::size_t n,
                      std::span<const T> in, std::span<T> out);

/// <bra| cx XX + cy YY + cz ZZ |ket> on sites (a, b).
cplx pair_matrix_element(std::span<const cplx> bra, std::span<const cplx> ket,
                         std::size_t n, std::size_t a, std::size_t b,
                         const BondCoupling &c);

/// H|psi>, unnormalized.
PureState apply_hamiltonian(const HamiltonianSpec &spec, const PureState &psi);

/// <psi|H|psi> for a normalized psi.
double expectation_energy(const HamiltonianSpec &spec, const PureState &psi);

/// Total sigma^z (diagonal, eigenvalue n - 2 * #down).
PureState apply_total_sz(const PureState &psi);
/// Site reversal i <-> n - 1 - i.
PureState apply_mirror(const PureState &psi);
/// (sum_i sigma_i)^2; zero on global singlets.
PureState apply_total_spin_squared(const PureState &psi);

struct GroundStateOptions {
    /// Registers up to this size are diagonalized densely.
    std::size_t dense_limit{8};
    std::size_t max_qubits{24};
    std::size_t krylov_dim{40};
    std::size_t max_restarts{400};
    double tolerance{1e-9};
    std::uint64_t seed{0x5eed5eedULL};
};

struct GroundStateResult {
    double energy{0.0};
    PureState state{1};
    /// E_1 - E_0.
    double gap{0.0};
    bool degenerate{false};
    /// Orthonormal basis of the lowest eigenspace (just `state` when unique).
    std::vector<PureState> ground_space;
    double residual{0.0};

    /// Fidelity of psi with the ground space (projection norm squared).
    [[nodiscard]] double fidelity_with(const PureState &psi) const;
};

GroundStateResult ground_state(const HamiltonianSpec &spec,
                               const GroundStateOptions &options = {});

struct SymmetryReport {
    bool commutes_with_sz{false};
    bool mirror_symmetric{false};
    double sz_commutator_norm{0.0};
    double mirror_commutator_norm{0.0};
};

SymmetryReport check_symmetries(const HamiltonianSpec &spec);

} // namespace vqgs
