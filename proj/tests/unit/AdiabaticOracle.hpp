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

#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "TestHelpers.hpp"

namespace vqgs::testing {

using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

inline CMat to_eigen(const Dense &m) {
    CMat out(static_cast<Eigen::Index>(m.size()), static_cast<Eigen::Index>(m.size()));
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j)
            out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m[i][j];
    return out;
}

/// Dense H_odd and H_even, where the odd set holds the first bond.
struct DenseRamp {
    CMat odd;
    CMat even;

    explicit DenseRamp(std::size_t n) {
        std::vector<std::array<double, 3>> o(n - 1), e(n - 1);
        for (std::size_t b = 0; b + 1 < n; ++b) {
            auto &dst = (b % 2 == 0) ? o[b] : e[b];
            dst = {1.0, 1.0, 1.0};
        }
        odd = to_eigen(dense_chain(n, o));
        even = to_eigen(dense_chain(n, e));
    }

    [[nodiscard]] CMat at(double s) const { return odd + s * even; }
};

/// exp(-i H tau) for Hermitian H.
inline CMat unitary_step(const CMat &h, double tau) {
    Eigen::SelfAdjointEigenSolver<CMat> es(h);
    const Eigen::VectorXcd phases =
        (es.eigenvalues().cast<cplx>() * cplx{0.0, -tau}).array().exp();
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

inline CVec dimer_product(std::size_t n) {
    CVec psi = CVec::Zero(Eigen::Index{1} << n);
    for (std::size_t i = 0; i < (std::size_t{1} << n); ++i) {
        double amp = 1.0;
        for (std::size_t p = 0; p < n / 2 && amp != 0.0; ++p) {
            const std::size_t a = (i >> (n - 1 - 2 * p)) & 1U;
            const std::size_t b = (i >> (n - 2 - 2 * p)) & 1U;
            amp *= (a == b) ? 0.0 : (a == 0 ? 1.0 : -1.0) / std::sqrt(2.0);
        }
        psi(static_cast<Eigen::Index>(i)) = amp;
    }
    return psi;
}

/// Product of frozen-Hamiltonian steps exp(-i H(k dt) dt), k = 1..m.
inline CVec frozen_steps(const DenseRamp &ramp, std::size_t n, double t_max, std::size_t m) {
    CVec psi = dimer_product(n);
    const double dt = t_max / static_cast<double>(m);
    for (std::size_t k = 1; k <= m; ++k)
        psi = unitary_step(ramp.at(static_cast<double>(k) * dt / t_max), dt) * psi;
    return psi;
}

/// Fine midpoint propagation of the continuous ramp.
inline CVec midpoint_steps(const DenseRamp &ramp, std::size_t n, double t_max, std::size_t m) {
    CVec psi = dimer_product(n);
    const double dt = t_max / static_cast<double>(m);
    for (std::size_t k = 0; k < m; ++k)
        psi = unitary_step(ramp.at((static_cast<double>(k) + 0.5) * dt / t_max), dt) * psi;
    return psi;
}

inline CVec to_eigen(const PureState &psi) {
    CVec v(static_cast<Eigen::Index>(psi.dim()));
    for (std::size_t i = 0; i < psi.dim(); ++i)
        v(static_cast<Eigen::Index>(i)) = psi[i];
    return v;
}

} // namespace vqgs::testing
