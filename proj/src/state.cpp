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
#include "vqgs/state.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "vqgs/error.hpp"

namespace vqgs {

namespace {

void check_register(std::size_t n, std::size_t cap) {
    require(n >= 1, ErrorKind::InvalidArgument, "qubit count must be >= 1");
    require(n <= cap, ErrorKind::ResourceLimit,
            "qubit count " + std::to_string(n) + " exceeds simulator limit " +
                std::to_string(cap));
}

} // namespace

PureState::PureState(std::size_t n_qubits) : n_(n_qubits) {
    check_register(n_qubits, kMaxPureQubits);
    amps_.assign(std::size_t{1} << n_qubits, cplx{0.0, 0.0});
}

PureState::PureState(std::size_t n_qubits, std::vector<cplx> amplitudes)
    : n_(n_qubits), amps_(std::move(amplitudes)) {
    check_register(n_qubits, kMaxPureQubits);
    require(amps_.size() == (std::size_t{1} << n_qubits),
            ErrorKind::DimensionMismatch,
            "amplitude vector length must be 2^n_qubits");
}

double PureState::norm() const {
    double s = 0.0;
    for (const auto &a : amps_) {
        s += std::norm(a);
    }
    return std::sqrt(s);
}

void PureState::normalize() {
    const double nrm = norm();
    require(nrm > 0.0, ErrorKind::InvalidArgument, "cannot normalize zero state");
    for (auto &a : amps_) {
        a /= nrm;
    }
}

MixedState::MixedState(std::size_t n_qubits)
    : n_(n_qubits), dim_(std::size_t{1} << n_qubits) {
    check_register(n_qubits, kMaxMixedQubits);
    data_.assign(dim_ * dim_, cplx{0.0, 0.0});
}

MixedState::MixedState(const PureState &psi) : MixedState(psi.n_qubits()) {
    const auto a = psi.amplitudes();
    for (std::size_t i = 0; i < dim_; ++i) {
        for (std::size_t j = 0; j < dim_; ++j) {
            data_[i * dim_ + j] = a[i] * std::conj(a[j]);
        }
    }
}

cplx MixedState::trace() const {
    cplx t{0.0, 0.0};
    for (std::size_t i = 0; i < dim_; ++i) {
        t += data_[i * dim_ + i];
    }
    return t;
}

double MixedState::purity() const {
    // tr(rho^2) = sum_ij |rho_ij|^2 for Hermitian rho
    double s = 0.0;
    for (const auto &x : data_) {
        s += std::norm(x);
    }
    return s;
}

double MixedState::hermiticity_error() const {
    double worst = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) {
        for (std::size_t j = i; j < dim_; ++j) {
            worst = std::max(worst, std::abs(at(i, j) - std::conj(at(j, i))));
        }
    }
    return worst;
}

PureState init_basis_state(std::size_t n, std::string_view bits) {
    require(bits.size() == n, ErrorKind::InvalidArgument,
            "bitstring length " + std::to_string(bits.size()) +
                " does not match qubit count " + std::to_string(n));
    PureState psi(n);
    std::size_t index = 0;
    for (std::size_t q = 0; q < n; ++q) {
        require(bits[q] == '0' || bits[q] == '1', ErrorKind::InvalidArgument,
                "bitstring may only contain '0' and '1'");
        if (bits[q] == '1') {
            index |= site_mask(n, q);
        }
    }
    psi[index] = 1.0;
    return psi;
}

PureState prepare_singlet_product(std::size_t n) {
    require(n >= 2 && n % 2 == 0, ErrorKind::InvalidArgument,
            "singlet product needs an even qubit count");
    PureState psi(n);
    const std::size_t pairs = n / 2;
    const double amp = std::pow(std::sqrt(0.5), static_cast<double>(pairs));
    // Each pair contributes |01> (+) or |10> (-); enumerate the 2^pairs choices.
    for (std::uint64_t choice = 0; choice < (std::uint64_t{1} << pairs); ++choice) {
        std::size_t index = 0;
        int sign = 1;
        for (std::size_t p = 0; p < pairs; ++p) {
            const bool flipped = (choice >> p) & 1U;
            const std::size_t up = 2 * p;
            const std::size_t down = 2 * p + 1;
            if (flipped) {
                index |= site_mask(n, up);
                sign = -sign;
            } else {
                index |= site_mask(n, down);
            }
        }
        psi[index] = amp * sign;
    }
    return psi;
}

cplx inner_product(const PureState &a, const PureState &b) {
    require(a.dim() == b.dim(), ErrorKind::DimensionMismatch,
            "inner product of states with different dimensions");
    cplx s{0.0, 0.0};
    const auto x = a.amplitudes();
    const auto y = b.amplitudes();
    for (std::size_t i = 0; i < x.size(); ++i) {
        s += std::conj(x[i]) * y[i];
    }
    return s;
}

double fidelity(const PureState &a, const PureState &b) {
    return std::norm(inner_product(a, b));
}

double mixed_fidelity(const MixedState &rho, const PureState &psi) {
    require(rho.dim() == psi.dim(), ErrorKind::DimensionMismatch,
            "density matrix and state dimensions differ");
    const auto a = psi.amplitudes();
    cplx s{0.0, 0.0};
    for (std::size_t i = 0; i < rho.dim(); ++i) {
        cplx row{0.0, 0.0};
        for (std::size_t j = 0; j < rho.dim(); ++j) {
            row += rho.at(i, j) * a[j];
        }
        s += std::conj(a[i]) * row;
    }
    return s.real();
}

double subspace_fidelity(std::span<const PureState> basis, const PureState &psi) {
    double s = 0.0;
    for (const auto &v : basis) {
        s += fidelity(v, psi);
    }
    return s;
}

double total_sz(const PureState &psi) {
    const std::size_t n = psi.n_qubits();
    const auto a = psi.amplitudes();
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const int ones = std::popcount(static_cast<std::uint64_t>(i));
        s += std::norm(a[i]) * (static_cast<double>(n) - 2.0 * ones);
    }
    return s;
}

double sector_leakage(const PureState &psi, std::size_t n_up) {
    const std::size_t n = psi.n_qubits();
    const auto a = psi.amplitudes();
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const auto ones = static_cast<std::size_t>(std::popcount(static_cast<std::uint64_t>(i)));
        if (n - ones != n_up) {
            s += std::norm(a[i]);
        }
    }
    return s;
}

} // namespace vqgs
