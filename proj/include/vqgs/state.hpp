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
#include <string_view>
#include <vector>

namespace vqgs {

using cplx = std::complex<double>;

/// Largest register the pure-state simulator accepts.
inline constexpr std::size_t kMaxPureQubits = 26;
/// Largest register the density-matrix path accepts.
inline constexpr std::size_t kMaxMixedQubits = 12;

/// Qubit 0 is the leftmost chain site and the most significant bit of a basis
/// index, so site q lives at bit position (n - 1 - q).
[[nodiscard]] constexpr std::uint64_t site_mask(std::size_t n, std::size_t q) {
    return std::uint64_t{1} << (n - 1 - q);
}

/// State vector over n qubits, 2^n amplitudes.
class PureState {
  public:
    explicit PureState(std::size_t n_qubits);
    PureState(std::size_t n_qubits, std::vector<cplx> amplitudes);

    [[nodiscard]] std::size_t n_qubits() const noexcept { return n_; }
    [[nodiscard]] std::size_t dim() const noexcept { return amps_.size(); }

    [[nodiscard]] std::span<cplx> amplitudes() noexcept { return amps_; }
    [[nodiscard]] std::span<const cplx> amplitudes() const noexcept {
        return amps_;
    }
    cplx &operator[](std::size_t i) noexcept { return amps_[i]; }
    const cplx &operator[](std::size_t i) const noexcept { return amps_[i]; }

    [[nodiscard]] double norm() const;
    void normalize();

  private:
    std::size_t n_;
    std::vector<cplx> amps_;
};

/// Row-major 2^n x 2^n density matrix.
class MixedState {
  public:
    explicit MixedState(std::size_t n_qubits);
    /// |psi><psi|
    explicit MixedState(const PureState &psi);

    [[nodiscard]] std::size_t n_qubits() const noexcept { return n_; }
    [[nodiscard]] std::size_t dim() const noexcept { return dim_; }

    cplx &at(std::size_t row, std::size_t col) noexcept {
        return data_[row * dim_ + col];
    }
    [[nodiscard]] const cplx &at(std::size_t row, std::size_t col) const noexcept {
        return data_[row * dim_ + col];
    }
    /// Flattened view; element (i, j) sits at i * dim + j, which is the
    /// amplitude layout of a 2n-qubit register with the row qubits first.
    [[nodiscard]] std::span<cplx> data() noexcept { return data_; }
    [[nodiscard]] std::span<const cplx> data() const noexcept { return data_; }

    [[nodiscard]] cplx trace() const;
    [[nodiscard]] double purity() const;
    /// Largest |rho_ij - conj(rho_ji)|.
    [[nodiscard]] double hermiticity_error() const;

  private:
    std::size_t n_;
    std::size_t dim_;
    std::vector<cplx> data_;
};

PureState init_basis_state(std::size_t n, std::string_view bits);

/// Product of singlets (|01> - |10>)/sqrt(2) on pairs (0,1), (2,3), ...
PureState prepare_singlet_product(std::size_t n);

cplx inner_product(const PureState &a, const PureState &b);

/// |<a|b>|^2
double fidelity(const PureState &a, const PureState &b);

/// <psi|rho|psi>
double mixed_fidelity(const MixedState &rho, const PureState &psi);

/// Squared norm of the projection of psi onto span(basis). The basis must be
/// orthonormal; used when the target ground space is degenerate.
double subspace_fidelity(std::span<const PureState> basis, const PureState &psi);

/// Total S_z = sum_i sigma^z_i expectation, in units of the Pauli eigenvalue.
double total_sz(const PureState &psi);

/// Probability weight outside the sector with the given number of up spins
/// (basis bits equal to 0 count as up).
double sector_leakage(const PureState &psi, std::size_t n_up);

} // namespace vqgs
