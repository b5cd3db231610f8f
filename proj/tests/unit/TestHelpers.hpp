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

// Dense reference linear algebra used as an independent oracle for the
// matrix-free kernels. Everything here is built from explicit Kronecker
// products, never from the library's gate or Hamiltonian kernels.

#include <array>
#include <complex>
#include <cstddef>
#include <random>
#include <span>
#include <vector>

#include "vqgs/state.hpp"

namespace vqgs::testing {

using Dense = std::vector<std::vector<cplx>>;

inline Dense identity(std::size_t d) {
    Dense m(d, std::vector<cplx>(d, 0.0));
    for (std::size_t i = 0; i < d; ++i) {
        m[i][i] = 1.0;
    }
    return m;
}

inline Dense pauli(char which) {
    const cplx i{0.0, 1.0};
    switch (which) {
    case 'X':
        return {{0.0, 1.0}, {1.0, 0.0}};
    case 'Y':
        return {{0.0, -i}, {i, 0.0}};
    case 'Z':
        return {{1.0, 0.0}, {0.0, -1.0}};
    default:
        return identity(2);
    }
}

inline Dense kron(const Dense &a, const Dense &b) {
    const std::size_t ra = a.size();
    const std::size_t rb = b.size();
    Dense m(ra * rb, std::vector<cplx>(ra * rb, 0.0));
    for (std::size_t i = 0; i < ra; ++i)
        for (std::size_t j = 0; j < ra; ++j)
            for (std::size_t k = 0; k < rb; ++k)
                for (std::size_t l = 0; l < rb; ++l)
                    m[i * rb + k][j * rb + l] = a[i][j] * b[k][l];
    return m;
}

/// Operator acting with `op` on `site` (site 0 is the leftmost factor).
inline Dense embed(const Dense &op, std::size_t site, std::size_t n) {
    Dense m = site == 0 ? op : identity(2);
    for (std::size_t q = 1; q < n; ++q) {
        m = kron(m, q == site ? op : identity(2));
    }
    return m;
}

/// op acting on two adjacent sites (site, site+1).
inline Dense embed2(const Dense &op4, std::size_t site, std::size_t n) {
    Dense m = site == 0 ? op4 : identity(2);
    std::size_t q = site == 0 ? 2 : 1;
    while (q < n) {
        if (q == site) {
            m = kron(m, op4);
            q += 2;
        } else {
            m = kron(m, identity(2));
            q += 1;
        }
    }
    return m;
}

inline Dense matmul(const Dense &a, const Dense &b) {
    const std::size_t d = a.size();
    Dense m(d, std::vector<cplx>(d, 0.0));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t k = 0; k < d; ++k) {
            if (a[i][k] == cplx{0.0, 0.0})
                continue;
            for (std::size_t j = 0; j < d; ++j)
                m[i][j] += a[i][k] * b[k][j];
        }
    return m;
}

inline Dense add(const Dense &a, const Dense &b, cplx sb = 1.0) {
    Dense m = a;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j)
            m[i][j] += sb * b[i][j];
    return m;
}

inline std::vector<cplx> matvec(const Dense &a, std::span<const cplx> v) {
    std::vector<cplx> out(a.size(), 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j)
            out[i] += a[i][j] * v[j];
    return out;
}

/// J_x XX + J_y YY + J_z ZZ summed over bonds with per-bond couplings.
inline Dense dense_chain(std::size_t n, const std::vector<std::array<double, 3>> &bonds) {
    const std::size_t d = std::size_t{1} << n;
    Dense h(d, std::vector<cplx>(d, 0.0));
    const char axes[3] = {'X', 'Y', 'Z'};
    for (std::size_t b = 0; b + 1 < n; ++b) {
        for (int a = 0; a < 3; ++a) {
            const Dense pp = kron(pauli(axes[a]), pauli(axes[a]));
            h = add(h, embed2(pp, b, n), bonds[b][static_cast<std::size_t>(a)]);
        }
    }
    return h;
}

inline PureState random_state(std::size_t n, std::mt19937_64 &rng) {
    std::normal_distribution<double> normal;
    PureState psi(n);
    for (auto &a : psi.amplitudes()) {
        a = cplx{normal(rng), normal(rng)};
    }
    psi.normalize();
    return psi;
}

/// Random state supported on the sector with `n_up` zero bits.
inline PureState random_sector_state(std::size_t n, std::size_t n_up,
                                     std::mt19937_64 &rng) {
    std::normal_distribution<double> normal;
    PureState psi(n);
    for (std::size_t i = 0; i < psi.dim(); ++i) {
        std::size_t ones = 0;
        for (std::size_t x = i; x; x >>= 1)
            ones += x & 1U;
        if (n - ones == n_up)
            psi[i] = cplx{normal(rng), normal(rng)};
    }
    psi.normalize();
    return psi;
}

inline double max_abs_diff(std::span<const cplx> a, std::span<const cplx> b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

} // namespace vqgs::testing

namespace vqgs::testing {

/// exp(A) by scaling and squaring of a truncated Taylor series.
inline Dense dense_expm(const Dense &a) {
    double nrm = 0.0;
    for (const auto &row : a)
        for (const auto &x : row)
            nrm = std::max(nrm, std::abs(x));
    int squarings = 0;
    double scale = 1.0;
    while (nrm * static_cast<double>(a.size()) * scale > 0.5) {
        scale *= 0.5;
        ++squarings;
    }
    Dense as = a;
    for (auto &row : as)
        for (auto &x : row)
            x *= scale;
    Dense result = identity(a.size());
    Dense term = identity(a.size());
    for (int k = 1; k <= 20; ++k) {
        term = matmul(term, as);
        for (auto &row : term)
            for (auto &x : row)
                x /= static_cast<double>(k);
        result = add(result, term);
    }
    for (int s = 0; s < squarings; ++s)
        result = matmul(result, result);
    return result;
}

inline std::vector<cplx> flatten(const Dense &m) {
    std::vector<cplx> out;
    for (const auto &row : m)
        out.insert(out.end(), row.begin(), row.end());
    return out;
}

} // namespace vqgs::testing
