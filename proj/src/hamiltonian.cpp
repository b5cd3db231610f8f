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
#include "vqgs/hamiltonian.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <random>

#include "vqgs/error.hpp"

namespace vqgs {

namespace {

using RealVec = std::vector<double>;

double dot(const RealVec &a, const RealVec &b) {
    return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

void axpy(double alpha, const RealVec &x, RealVec &y) {
    for (std::size_t i = 0; i < y.size(); ++i) {
        y[i] += alpha * x[i];
    }
}

double nrm2(const RealVec &a) { return std::sqrt(dot(a, a)); }

void scale(RealVec &a, double s) {
    for (auto &x : a) {
        x *= s;
    }
}

RealVec apply_real(std::span<const BondCoupling> bonds, std::size_t n,
                   const RealVec &v) {
    RealVec out(v.size(), 0.0);
    accumulate_bonds<double>(bonds, n, v, out);
    return out;
}

PureState to_state(std::size_t n, const RealVec &v) {
    std::vector<cplx> amps(v.begin(), v.end());
    return PureState(n, std::move(amps));
}

GroundStateResult dense_ground_state(const HamiltonianSpec &spec) {
    const std::size_t n = spec.n_qubits;
    const std::size_t dim = std::size_t{1} << n;
    const auto bonds = spec.bonds();
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(dim),
                                              static_cast<Eigen::Index>(dim));
    RealVec unit(dim, 0.0);
    for (std::size_t j = 0; j < dim; ++j) {
        unit[j] = 1.0;
        const RealVec col = apply_real(bonds, n, unit);
        unit[j] = 0.0;
        for (std::size_t i = 0; i < dim; ++i) {
            h(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = col[i];
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
    require(es.info() == Eigen::Success, ErrorKind::NotConverged,
            "dense eigensolver failed");
    const auto &evals = es.eigenvalues();
    const auto &evecs = es.eigenvectors();

    GroundStateResult r;
    r.energy = evals(0);
    std::size_t deg = 1;
    while (deg < dim && evals(static_cast<Eigen::Index>(deg)) - evals(0) < 1e-9) {
        ++deg;
    }
    r.degenerate = deg > 1;
    r.gap = deg < dim ? evals(static_cast<Eigen::Index>(deg)) - evals(0) : 0.0;
    for (std::size_t k = 0; k < deg; ++k) {
        RealVec v(dim);
        for (std::size_t i = 0; i < dim; ++i) {
            v[i] = evecs(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k));
        }
        r.ground_space.push_back(to_state(n, v));
    }
    r.state = r.ground_space.front();
    const PureState hpsi = apply_hamiltonian(spec, r.state);
    double res = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
        res += std::norm(hpsi[i] - r.energy * r.state[i]);
    }
    r.residual = std::sqrt(res);
    return r;
}

/// Restarted Krylov-subspace (Rayleigh-Ritz) eigensolver with full
/// reorthogonalization. Keeps the lowest few Ritz vectors plus the ground
/// residual direction on every restart.
GroundStateResult krylov_ground_state(const HamiltonianSpec &spec,
                                      const GroundStateOptions &opt) {
    const std::size_t n = spec.n_qubits;
    const std::size_t dim = std::size_t{1} << n;
    const auto bonds = spec.bonds();
    const std::size_t m = std::min<std::size_t>(std::max<std::size_t>(opt.krylov_dim, 8), dim);
    const std::size_t keep = std::min<std::size_t>(4, m / 2);

    std::vector<RealVec> basis;
    std::vector<RealVec> images; // H applied to each basis vector
    basis.reserve(m);
    images.reserve(m);

    auto orthogonalize = [&](RealVec &w) {
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto &v : basis) {
                axpy(-dot(v, w), v, w);
            }
        }
        return nrm2(w);
    };

    std::mt19937_64 rng(opt.seed);
    std::normal_distribution<double> normal;
    RealVec next(dim);
    for (auto &x : next) {
        x = normal(rng);
    }
    scale(next, 1.0 / nrm2(next));

    Eigen::VectorXd ritz_vals;
    Eigen::MatrixXd ritz_vecs;
    for (std::size_t restart = 0; restart < opt.max_restarts; ++restart) {
        // Extend the subspace with Krylov directions.
        while (basis.size() < m) {
            RealVec w = next;
            const double nw = orthogonalize(w);
            if (nw < 1e-12) {
                break; // invariant subspace reached
            }
            scale(w, 1.0 / nw);
            RealVec hw = apply_real(bonds, n, w);
            basis.push_back(std::move(w));
            next = hw;
            images.push_back(std::move(hw));
        }
        const auto k = static_cast<Eigen::Index>(basis.size());
        Eigen::MatrixXd t(k, k);
        for (Eigen::Index i = 0; i < k; ++i) {
            for (Eigen::Index j = i; j < k; ++j) {
                const double x = dot(basis[static_cast<std::size_t>(i)],
                                     images[static_cast<std::size_t>(j)]);
                t(i, j) = x;
                t(j, i) = x;
            }
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
        ritz_vals = es.eigenvalues();
        ritz_vecs = es.eigenvectors();

        const std::size_t nkeep = std::min<std::size_t>(keep, basis.size());
        std::vector<RealVec> x(nkeep, RealVec(dim, 0.0));
        std::vector<RealVec> hx(nkeep, RealVec(dim, 0.0));
        for (std::size_t r = 0; r < nkeep; ++r) {
            for (std::size_t i = 0; i < basis.size(); ++i) {
                const double c = ritz_vecs(static_cast<Eigen::Index>(i),
                                           static_cast<Eigen::Index>(r));
                axpy(c, basis[i], x[r]);
                axpy(c, images[i], hx[r]);
            }
        }
        std::vector<double> residual(nkeep);
        std::vector<RealVec> resvec(nkeep);
        for (std::size_t r = 0; r < nkeep; ++r) {
            resvec[r] = hx[r];
            axpy(-ritz_vals(static_cast<Eigen::Index>(r)), x[r], resvec[r]);
            residual[r] = nrm2(resvec[r]);
        }
        const bool whole_space = basis.size() == dim;
        const bool second_ok = nkeep < 2 || residual[1] < std::sqrt(opt.tolerance);
        if (whole_space || (residual[0] < opt.tolerance && second_ok)) {
            GroundStateResult res;
            res.energy = ritz_vals(0);
            res.residual = residual[0];
            res.gap = nkeep > 1 ? ritz_vals(1) - ritz_vals(0) : 0.0;
            res.degenerate = nkeep > 1 && res.gap < 1e-9;
            res.ground_space.push_back(to_state(n, x[0]));
            for (std::size_t r = 1; r < nkeep && ritz_vals(static_cast<Eigen::Index>(r)) - ritz_vals(0) < 1e-9; ++r) {
                res.ground_space.push_back(to_state(n, x[r]));
            }
            res.state = res.ground_space.front();
            return res;
        }
        // Thick restart: Ritz vectors (already H-orthonormal images known)
        // plus the residual of the lowest pair as the next direction.
        std::size_t worst = 0;
        if (residual[0] < opt.tolerance && nkeep > 1) {
            worst = 1;
        }
        basis = std::move(x);
        images = std::move(hx);
        next = resvec[worst];
    }
    fail(ErrorKind::NotConverged,
         "Krylov eigensolver did not converge for " + spec.name() + " with n=" +
             std::to_string(n));
}

} // namespace

HamiltonianSpec HamiltonianSpec::heisenberg(std::size_t n, double j) {
    HamiltonianSpec h;
    h.model = ModelKind::Heisenberg;
    h.n_qubits = n;
    h.j = j;
    return h;
}

HamiltonianSpec HamiltonianSpec::xyz(std::size_t n, double jx, double jy,
                                     double jz) {
    HamiltonianSpec h;
    h.model = ModelKind::XYZ;
    h.n_qubits = n;
    h.jx = jx;
    h.jy = jy;
    h.jz = jz;
    return h;
}

HamiltonianSpec HamiltonianSpec::kondo(std::size_t n, double j, double j_prime) {
    HamiltonianSpec h;
    h.model = ModelKind::Kondo;
    h.n_qubits = n;
    h.j = j;
    h.j_prime = j_prime;
    return h;
}

HamiltonianSpec HamiltonianSpec::adiabatic_instant(std::size_t n, double j,
                                                   double s) {
    HamiltonianSpec h;
    h.model = ModelKind::AdiabaticInstant;
    h.n_qubits = n;
    h.j = j;
    h.s = s;
    return h;
}

std::vector<std::string> HamiltonianSpec::validate() const {
    std::vector<std::string> warnings;
    require(n_qubits >= 2 && n_qubits % 2 == 0, ErrorKind::InvalidArgument,
            "n_qubits must be an even integer >= 2");
    require(n_qubits <= kMaxPureQubits, ErrorKind::ResourceLimit,
            "n_qubits exceeds the simulator limit");
    switch (model) {
    case ModelKind::Heisenberg:
        require(j > 0.0, ErrorKind::InvalidArgument,
                "Heisenberg coupling J must be positive");
        break;
    case ModelKind::XYZ:
        break;
    case ModelKind::Kondo:
        require(j > 0.0, ErrorKind::InvalidArgument,
                "Kondo coupling J must be positive");
        if (!(j_prime > 0.0 && j_prime < 1.0)) {
            warnings.push_back("Kondo J' outside (0, 1): the first site is not an impurity");
        }
        break;
    case ModelKind::AdiabaticInstant:
        require(s >= 0.0 && s <= 1.0, ErrorKind::InvalidArgument,
                "adiabatic schedule fraction s must lie in [0, 1]");
        break;
    }
    return warnings;
}

std::vector<BondCoupling> HamiltonianSpec::bonds() const {
    const std::size_t nb = n_qubits >= 1 ? n_qubits - 1 : 0;
    std::vector<BondCoupling> out(nb);
    for (std::size_t b = 0; b < nb; ++b) {
        switch (model) {
        case ModelKind::Heisenberg:
            out[b] = {j, j, j};
            break;
        case ModelKind::XYZ:
            out[b] = {jx, jy, jz};
            break;
        case ModelKind::Kondo: {
            const double c = b == 0 ? j * j_prime : j;
            out[b] = {c, c, c};
            break;
        }
        case ModelKind::AdiabaticInstant: {
            const double c = b % 2 == 0 ? j : j * s;
            out[b] = {c, c, c};
            break;
        }
        }
    }
    return out;
}

bool HamiltonianSpec::conserves_sz() const {
    return model != ModelKind::XYZ || jx == jy;
}

bool HamiltonianSpec::mirror_symmetric() const {
    switch (model) {
    case ModelKind::Kondo:
        return j_prime == 1.0;
    default:
        // Site reversal maps bond b to n-2-b, which has the same parity for
        // even n, so the dimerized instant is mirror symmetric as well.
        return true;
    }
}

std::string HamiltonianSpec::name() const {
    switch (model) {
    case ModelKind::Heisenberg:
        return "heisenberg";
    case ModelKind::XYZ:
        return "xyz";
    case ModelKind::Kondo:
        return "kondo";
    case ModelKind::AdiabaticInstant:
        return "adiabatic_instant";
    }
    return "unknown";
}

template <typename T>
void accumulate_bonds(std::span<const BondCoupling> bonds, std::size_t n,
                      std::span<const T> in, std::span<T> out) {
    require(in.size() == out.size() && in.size() == (std::size_t{1} << n),
            ErrorKind::DimensionMismatch, "bond kernel buffer size mismatch");
    for (std::size_t b = 0; b < bonds.size(); ++b) {
        const auto &c = bonds[b];
        const std::size_t ma = site_mask(n, b);
        const std::size_t mb = site_mask(n, b + 1);
        const std::size_t flip = ma | mb;
        const double par = c.jx - c.jy;
        const double anti = c.jx + c.jy;
        for (std::size_t i = 0; i < in.size(); ++i) {
            const bool parallel = ((i & ma) != 0) == ((i & mb) != 0);
            const double zz = parallel ? c.jz : -c.jz;
            out[i] += zz * in[i] + (parallel ? par : anti) * in[i ^ flip];
        }
    }
}

template void accumulate_bonds<double>(std::span<const BondCoupling>, std::size_t,
                                       std::span<const double>, std::span<double>);
template void accumulate_bonds<cplx>(std::span<const BondCoupling>, std::size_t,
                                     std::span<const cplx>, std::span<cplx>);

cplx pair_matrix_element(std::span<const cplx> bra, std::span<const cplx> ket,
                         std::size_t n, std::size_t a, std::size_t b,
                         const BondCoupling &c) {
    const std::size_t ma = site_mask(n, a);
    const std::size_t mb = site_mask(n, b);
    const std::size_t flip = ma | mb;
    const double par = c.jx - c.jy;
    const double anti = c.jx + c.jy;
    cplx s{0.0, 0.0};
    for (std::size_t i = 0; i < ket.size(); ++i) {
        const bool parallel = ((i & ma) != 0) == ((i & mb) != 0);
        const double zz = parallel ? c.jz : -c.jz;
        s += std::conj(bra[i]) * (zz * ket[i] + (parallel ? par : anti) * ket[i ^ flip]);
    }
    return s;
}

PureState apply_hamiltonian(const HamiltonianSpec &spec, const PureState &psi) {
    require(spec.n_qubits == psi.n_qubits(), ErrorKind::DimensionMismatch,
            "Hamiltonian and state register sizes differ");
    PureState out(psi.n_qubits());
    const auto bonds = spec.bonds();
    accumulate_bonds<cplx>(bonds, psi.n_qubits(), psi.amplitudes(), out.amplitudes());
    return out;
}

double expectation_energy(const HamiltonianSpec &spec, const PureState &psi) {
    require(spec.n_qubits == psi.n_qubits(), ErrorKind::DimensionMismatch,
            "Hamiltonian and state register sizes differ");
    require(std::abs(psi.norm() - 1.0) <= 1e-8, ErrorKind::InvalidArgument,
            "energy expectation needs a normalized state");
    const auto bonds = spec.bonds();
    double e = 0.0;
    for (std::size_t b = 0; b < bonds.size(); ++b) {
        e += pair_matrix_element(psi.amplitudes(), psi.amplitudes(),
                                 psi.n_qubits(), b, b + 1, bonds[b])
                 .real();
    }
    return e;
}

PureState apply_total_sz(const PureState &psi) {
    PureState out = psi;
    const auto n = static_cast<double>(psi.n_qubits());
    for (std::size_t i = 0; i < out.dim(); ++i) {
        out[i] *= n - 2.0 * std::popcount(static_cast<std::uint64_t>(i));
    }
    return out;
}

PureState apply_mirror(const PureState &psi) {
    const std::size_t n = psi.n_qubits();
    PureState out(n);
    for (std::size_t i = 0; i < psi.dim(); ++i) {
        std::size_t r = 0;
        for (std::size_t q = 0; q < n; ++q) {
            if (i & site_mask(n, q)) {
                r |= site_mask(n, n - 1 - q);
            }
        }
        out[r] = psi[i];
    }
    return out;
}

PureState apply_total_spin_squared(const PureState &psi) {
    const std::size_t n = psi.n_qubits();
    PureState out = psi;
    for (auto &a : out.amplitudes()) {
        a *= static_cast<double>(3 * n); // sigma_i . sigma_i = 3
    }
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a + 1; b < n; ++b) {
            const std::size_t ma = site_mask(n, a);
            const std::size_t mb = site_mask(n, b);
            for (std::size_t i = 0; i < psi.dim(); ++i) {
                const bool parallel = ((i & ma) != 0) == ((i & mb) != 0);
                // both orderings of the pair: 2 sigma_a . sigma_b
                out[i] += 2.0 * ((parallel ? 1.0 : -1.0) * psi[i] +
                                 (parallel ? 0.0 : 2.0) * psi[i ^ (ma | mb)]);
            }
        }
    }
    return out;
}

double GroundStateResult::fidelity_with(const PureState &psi) const {
    return subspace_fidelity(ground_space, psi);
}

GroundStateResult ground_state(const HamiltonianSpec &spec,
                               const GroundStateOptions &options) {
    spec.validate();
    require(spec.n_qubits <= options.max_qubits, ErrorKind::ResourceLimit,
            "ground-state oracle limited to n <= " +
                std::to_string(options.max_qubits));
    if (spec.n_qubits <= std::min<std::size_t>(options.dense_limit, 12)) {
        return dense_ground_state(spec);
    }
    return krylov_ground_state(spec, options);
}

SymmetryReport check_symmetries(const HamiltonianSpec &spec) {
    const std::size_t n = spec.n_qubits;
    std::mt19937_64 rng(0xC0FFEEULL);
    std::normal_distribution<double> normal;
    SymmetryReport rep;
    for (int trial = 0; trial < 3; ++trial) {
        PureState psi(n);
        for (auto &a : psi.amplitudes()) {
            a = cplx{normal(rng), normal(rng)};
        }
        psi.normalize();
        const PureState h_sz = apply_hamiltonian(spec, apply_total_sz(psi));
        const PureState sz_h = apply_total_sz(apply_hamiltonian(spec, psi));
        const PureState h_m = apply_hamiltonian(spec, apply_mirror(psi));
        const PureState m_h = apply_mirror(apply_hamiltonian(spec, psi));
        double dz = 0.0;
        double dm = 0.0;
        for (std::size_t i = 0; i < psi.dim(); ++i) {
            dz += std::norm(h_sz[i] - sz_h[i]);
            dm += std::norm(h_m[i] - m_h[i]);
        }
        rep.sz_commutator_norm = std::max(rep.sz_commutator_norm, std::sqrt(dz));
        rep.mirror_commutator_norm = std::max(rep.mirror_commutator_norm, std::sqrt(dm));
    }
    rep.commutes_with_sz = rep.sz_commutator_norm < 1e-9;
    rep.mirror_symmetric = rep.mirror_commutator_norm < 1e-9;
    return rep;
}

} // namespace vqgs
