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
#include "vqgs/gates.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "vqgs/error.hpp"

namespace vqgs {

namespace {

constexpr cplx kI{0.0, 1.0};

void check_unitary(const Matrix4 &u) {
    double worst = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) {
            cplx s{0.0, 0.0};
            for (std::size_t k = 0; k < 4; ++k) {
                s += std::conj(u[k * 4 + i]) * u[k * 4 + j];
            }
            worst = std::max(worst, std::abs(s - (i == j ? 1.0 : 0.0)));
        }
    }
    require(worst < 1e-10, ErrorKind::InvalidArgument,
            "fixed two-qubit gate is not unitary");
}

/// Inserts a zero bit at position p.
constexpr std::size_t insert_zero(std::size_t x, unsigned p) {
    const std::size_t low = x & ((std::size_t{1} << p) - 1);
    return ((x >> p) << (p + 1)) | low;
}

void apply_1q(std::span<cplx> v, std::size_t n, std::size_t q,
              const Matrix2 &m) {
    const std::size_t mask = site_mask(n, q);
    const std::size_t dim = v.size();
    for (std::size_t hi = 0; hi < dim; hi += 2 * mask) {
        for (std::size_t lo = 0; lo < mask; ++lo) {
            const std::size_t i0 = hi + lo;
            const std::size_t i1 = i0 + mask;
            const cplx a0 = v[i0];
            const cplx a1 = v[i1];
            v[i0] = m[0] * a0 + m[1] * a1;
            v[i1] = m[2] * a0 + m[3] * a1;
        }
    }
}

void apply_diag_1q(std::span<cplx> v, std::size_t n, std::size_t q, cplx d0,
                   cplx d1) {
    const std::size_t mask = site_mask(n, q);
    for (std::size_t i = 0; i < v.size(); ++i) {
        v[i] *= (i & mask) ? d1 : d0;
    }
}

template <typename Fn>
void for_each_pair_base(std::size_t dim, std::size_t n, std::size_t a,
                        std::size_t b, Fn &&fn) {
    const auto pa = static_cast<unsigned>(n - 1 - a);
    const auto pb = static_cast<unsigned>(n - 1 - b);
    const unsigned lo = std::min(pa, pb);
    const unsigned hi = std::max(pa, pb);
    const std::size_t ma = std::size_t{1} << pa;
    const std::size_t mb = std::size_t{1} << pb;
    for (std::size_t k = 0; k < dim / 4; ++k) {
        const std::size_t base = insert_zero(insert_zero(k, lo), hi);
        fn(base, ma, mb);
    }
}

void apply_entangler(std::span<cplx> v, std::size_t n, std::size_t a,
                     std::size_t b, const std::array<double, 3> &t) {
    // {|00>,|11>} block: e^{i tz} exp(i (tx - ty) X); {|01>,|10>}: e^{-i tz} exp(i (tx + ty) X)
    const double par = t[0] - t[1];
    const double anti = t[0] + t[1];
    const cplx ez = std::exp(kI * t[2]);
    const cplx p_diag = ez * std::cos(par);
    const cplx p_off = ez * kI * std::sin(par);
    const cplx a_diag = std::conj(ez) * std::cos(anti);
    const cplx a_off = std::conj(ez) * kI * std::sin(anti);
    for_each_pair_base(v.size(), n, a, b, [&](std::size_t base, std::size_t ma,
                                               std::size_t mb) {
        const std::size_t i00 = base;
        const std::size_t i01 = base | mb;
        const std::size_t i10 = base | ma;
        const std::size_t i11 = base | ma | mb;
        const cplx x00 = v[i00];
        const cplx x11 = v[i11];
        v[i00] = p_diag * x00 + p_off * x11;
        v[i11] = p_off * x00 + p_diag * x11;
        const cplx x01 = v[i01];
        const cplx x10 = v[i10];
        v[i01] = a_diag * x01 + a_off * x10;
        v[i10] = a_off * x01 + a_diag * x10;
    });
}

void apply_dense_2q(std::span<cplx> v, std::size_t n, std::size_t a,
                    std::size_t b, const Matrix4 &u) {
    for_each_pair_base(v.size(), n, a, b, [&](std::size_t base, std::size_t ma,
                                               std::size_t mb) {
        const std::array<std::size_t, 4> idx{base, base | mb, base | ma,
                                             base | ma | mb};
        std::array<cplx, 4> x{v[idx[0]], v[idx[1]], v[idx[2]], v[idx[3]]};
        for (std::size_t r = 0; r < 4; ++r) {
            v[idx[r]] = u[r * 4 + 0] * x[0] + u[r * 4 + 1] * x[1] +
                        u[r * 4 + 2] * x[2] + u[r * 4 + 3] * x[3];
        }
    });
}

/// Elementwise complex conjugate of g, moved to qubits shifted by offset.
/// Used for the column side of U rho U^dagger.
GateDescriptor conjugated_shifted(const GateDescriptor &g, std::size_t offset) {
    const double t = g.angles()[0];
    const std::size_t q0 = g.qubit(0) + offset;
    switch (g.kind()) {
    case GateKind::Phase:
        return GateDescriptor::phase(q0, -t);
    case GateKind::RotX:
        return GateDescriptor::rot_x(q0, -t);
    case GateKind::RotY:
        return GateDescriptor::rot_y(q0, t);
    case GateKind::RotZ:
        return GateDescriptor::rot_z(q0, -t);
    case GateKind::CNOT:
        return GateDescriptor::cnot(q0, g.qubit(1) + offset);
    case GateKind::Entangler: {
        // XX, YY and ZZ are real matrices, so conjugation flips every angle.
        const auto &a = g.angles();
        return GateDescriptor::entangler(q0, g.qubit(1) + offset, -a[0], -a[1],
                                         -a[2]);
    }
    case GateKind::FixedUnitary2Q: {
        Matrix4 u = g.unitary();
        for (auto &x : u) {
            x = std::conj(x);
        }
        return GateDescriptor::fixed_2q(q0, g.qubit(1) + offset, u,
                                        g.cnot_cost());
    }
    }
    return g;
}

} // namespace

GateDescriptor GateDescriptor::phase(std::size_t q, double theta) {
    GateDescriptor g;
    g.kind_ = GateKind::Phase;
    g.qubits_ = {q, q};
    g.angles_ = {theta, 0.0, 0.0};
    return g;
}

GateDescriptor GateDescriptor::rot_x(std::size_t q, double theta) {
    auto g = phase(q, theta);
    g.kind_ = GateKind::RotX;
    return g;
}

GateDescriptor GateDescriptor::rot_y(std::size_t q, double theta) {
    auto g = phase(q, theta);
    g.kind_ = GateKind::RotY;
    return g;
}

GateDescriptor GateDescriptor::rot_z(std::size_t q, double theta) {
    auto g = phase(q, theta);
    g.kind_ = GateKind::RotZ;
    return g;
}

GateDescriptor GateDescriptor::cnot(std::size_t control, std::size_t target) {
    require(control != target, ErrorKind::InvalidArgument,
            "CNOT control and target must differ");
    GateDescriptor g;
    g.kind_ = GateKind::CNOT;
    g.arity_ = 2;
    g.qubits_ = {control, target};
    g.cnot_cost_ = 1;
    return g;
}

GateDescriptor GateDescriptor::entangler(std::size_t a, std::size_t b,
                                         double tx, double ty, double tz) {
    require(a != b, ErrorKind::InvalidArgument,
            "entangler qubits must differ");
    GateDescriptor g;
    g.kind_ = GateKind::Entangler;
    g.arity_ = 2;
    g.qubits_ = {a, b};
    g.angles_ = {tx, ty, tz};
    g.cnot_cost_ = 3;
    return g;
}

GateDescriptor GateDescriptor::fixed_2q(std::size_t a, std::size_t b,
                                        const Matrix4 &u, int cnot_cost) {
    require(a != b, ErrorKind::InvalidArgument,
            "two-qubit gate qubits must differ");
    require(cnot_cost >= 0, ErrorKind::InvalidArgument,
            "declared CNOT cost must be nonnegative");
    check_unitary(u);
    GateDescriptor g;
    g.kind_ = GateKind::FixedUnitary2Q;
    g.arity_ = 2;
    g.qubits_ = {a, b};
    g.unitary_ = std::make_shared<const Matrix4>(u);
    g.cnot_cost_ = cnot_cost;
    return g;
}

GateDescriptor GateDescriptor::inverse() const {
    switch (kind_) {
    case GateKind::Phase:
        return phase(qubits_[0], -angles_[0]);
    case GateKind::RotX:
        return rot_x(qubits_[0], -angles_[0]);
    case GateKind::RotY:
        return rot_y(qubits_[0], -angles_[0]);
    case GateKind::RotZ:
        return rot_z(qubits_[0], -angles_[0]);
    case GateKind::CNOT:
        return *this;
    case GateKind::Entangler:
        return entangler(qubits_[0], qubits_[1], -angles_[0], -angles_[1],
                         -angles_[2]);
    case GateKind::FixedUnitary2Q: {
        Matrix4 d{};
        for (std::size_t i = 0; i < 4; ++i) {
            for (std::size_t j = 0; j < 4; ++j) {
                d[i * 4 + j] = std::conj((*unitary_)[j * 4 + i]);
            }
        }
        return fixed_2q(qubits_[0], qubits_[1], d, cnot_cost_);
    }
    }
    return *this;
}

Matrix2 GateDescriptor::matrix2() const {
    const double t = angles_[0];
    const double c = std::cos(t / 2);
    const double s = std::sin(t / 2);
    switch (kind_) {
    case GateKind::Phase:
        return {1.0, 0.0, 0.0, std::exp(kI * t)};
    case GateKind::RotX:
        return {c, kI * s, kI * s, c};
    case GateKind::RotY:
        return {c, s, -s, c};
    case GateKind::RotZ:
        return {std::exp(kI * (t / 2)), 0.0, 0.0, std::exp(-kI * (t / 2))};
    default:
        fail(ErrorKind::InvalidArgument, "matrix2 called on a two-qubit gate");
    }
}

Matrix4 GateDescriptor::matrix4() const {
    switch (kind_) {
    case GateKind::CNOT:
        return {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0};
    case GateKind::Entangler:
        return entangler_unitary(angles_[0], angles_[1], angles_[2]);
    case GateKind::FixedUnitary2Q:
        return *unitary_;
    default:
        fail(ErrorKind::InvalidArgument, "matrix4 called on a one-qubit gate");
    }
}

Circuit::Circuit(std::size_t n_qubits) : n_(n_qubits) {
    require(n_qubits >= 1, ErrorKind::InvalidArgument,
            "circuit needs at least one qubit");
}

void Circuit::add(GateDescriptor g) {
    for (std::size_t i = 0; i < g.arity(); ++i) {
        require(g.qubit(i) < n_, ErrorKind::InvalidArgument,
                "gate references qubit " + std::to_string(g.qubit(i)) +
                    " in a " + std::to_string(n_) + "-qubit circuit");
    }
    gates_.push_back(std::move(g));
}

void Circuit::append(const Circuit &other) {
    require(other.n_ == n_, ErrorKind::DimensionMismatch,
            "appending circuit with a different register size");
    for (const auto &g : other.gates_) {
        gates_.push_back(g);
    }
}

void Circuit::mark_layer() {
    const std::size_t at = gates_.size();
    if (at == 0) {
        return;
    }
    require(layer_marks_.empty() || layer_marks_.back() < at,
            ErrorKind::InvalidArgument, "layer marks must be strictly increasing");
    layer_marks_.push_back(at);
}

std::size_t Circuit::layer_count() const noexcept {
    if (gates_.empty()) {
        return 0;
    }
    std::size_t count = layer_marks_.size() + 1;
    if (!layer_marks_.empty() && layer_marks_.back() == gates_.size()) {
        --count;
    }
    return count;
}

std::span<const GateDescriptor> Circuit::layer(std::size_t i) const {
    require(i < layer_count(), ErrorKind::InvalidArgument, "layer index out of range");
    const std::size_t begin = i == 0 ? 0 : layer_marks_[i - 1];
    const std::size_t end = i < layer_marks_.size() ? layer_marks_[i] : gates_.size();
    return std::span<const GateDescriptor>(gates_).subspan(begin, end - begin);
}

Matrix4 entangler_unitary(double tx, double ty, double tz) {
    const double par = tx - ty;
    const double anti = tx + ty;
    const cplx ez = std::exp(kI * tz);
    Matrix4 u{};
    u[0 * 4 + 0] = ez * std::cos(par);
    u[0 * 4 + 3] = ez * kI * std::sin(par);
    u[3 * 4 + 0] = u[0 * 4 + 3];
    u[3 * 4 + 3] = u[0 * 4 + 0];
    u[1 * 4 + 1] = std::conj(ez) * std::cos(anti);
    u[1 * 4 + 2] = std::conj(ez) * kI * std::sin(anti);
    u[2 * 4 + 1] = u[1 * 4 + 2];
    u[2 * 4 + 2] = u[1 * 4 + 1];
    return u;
}

void append_entangler_decomposition(Circuit &c, std::size_t a, std::size_t b,
                                    double tx, double ty, double tz) {
    constexpr double half_pi = std::numbers::pi / 2;
    c.add(GateDescriptor::rot_z(b, half_pi));
    c.add(GateDescriptor::cnot(b, a));
    c.add(GateDescriptor::rot_z(a, 2 * tz + half_pi));
    c.add(GateDescriptor::rot_y(b, -2 * tx - half_pi));
    c.add(GateDescriptor::cnot(a, b));
    c.add(GateDescriptor::rot_y(b, 2 * ty + half_pi));
    c.add(GateDescriptor::cnot(b, a));
    c.add(GateDescriptor::rot_z(a, -half_pi));
}

Circuit decompose_entangler(double tx, double ty, double tz) {
    Circuit c(2);
    append_entangler_decomposition(c, 0, 1, tx, ty, tz);
    return c;
}

Circuit expand_entanglers(const Circuit &c) {
    Circuit out(c.n_qubits());
    std::size_t next_mark = 0;
    const auto &marks = c.layer_marks();
    for (std::size_t i = 0; i < c.gates().size(); ++i) {
        while (next_mark < marks.size() && marks[next_mark] == i) {
            out.mark_layer();
            ++next_mark;
        }
        const auto &g = c.gates()[i];
        if (g.kind() == GateKind::Entangler) {
            const auto &t = g.angles();
            append_entangler_decomposition(out, g.qubit(0), g.qubit(1), t[0],
                                           t[1], t[2]);
        } else {
            out.add(g);
        }
    }
    return out;
}

void apply_gate(std::span<cplx> amps, std::size_t n, const GateDescriptor &g) {
    for (std::size_t i = 0; i < g.arity(); ++i) {
        require(g.qubit(i) < n, ErrorKind::InvalidArgument,
                "gate qubit index out of range");
    }
    switch (g.kind()) {
    case GateKind::Phase:
        apply_diag_1q(amps, n, g.qubit(0), 1.0, std::exp(kI * g.angles()[0]));
        return;
    case GateKind::RotZ: {
        const cplx e = std::exp(kI * (g.angles()[0] / 2));
        apply_diag_1q(amps, n, g.qubit(0), e, std::conj(e));
        return;
    }
    case GateKind::RotX:
    case GateKind::RotY:
        apply_1q(amps, n, g.qubit(0), g.matrix2());
        return;
    case GateKind::CNOT:
        for_each_pair_base(amps.size(), n, g.qubit(0), g.qubit(1),
                           [&](std::size_t base, std::size_t mc, std::size_t mt) {
                               std::swap(amps[base | mc], amps[base | mc | mt]);
                           });
        return;
    case GateKind::Entangler:
        apply_entangler(amps, n, g.qubit(0), g.qubit(1), g.angles());
        return;
    case GateKind::FixedUnitary2Q:
        apply_dense_2q(amps, n, g.qubit(0), g.qubit(1), g.unitary());
        return;
    }
}

void apply_gate(PureState &psi, const GateDescriptor &g) {
    apply_gate(psi.amplitudes(), psi.n_qubits(), g);
}

void apply_circuit(PureState &psi, const Circuit &c) {
    require(c.n_qubits() == psi.n_qubits(), ErrorKind::DimensionMismatch,
            "circuit and state register sizes differ");
    for (const auto &g : c.gates()) {
        apply_gate(psi, g);
    }
}

void apply_gate(MixedState &rho, const GateDescriptor &g) {
    // rho as a 2n-qubit vector: row qubits 0..n-1 get U, column qubits
    // n..2n-1 get conj(U).
    const std::size_t n = rho.n_qubits();
    apply_gate(rho.data(), 2 * n, g);
    apply_gate(rho.data(), 2 * n, conjugated_shifted(g, n));
}

void apply_circuit(MixedState &rho, const Circuit &c) {
    require(c.n_qubits() == rho.n_qubits(), ErrorKind::DimensionMismatch,
            "circuit and density matrix register sizes differ");
    for (const auto &g : c.gates()) {
        apply_gate(rho, g);
    }
}

std::size_t cnot_count(const Circuit &c) {
    std::size_t total = 0;
    for (const auto &g : c.gates()) {
        total += static_cast<std::size_t>(g.cnot_cost());
    }
    return total;
}

std::vector<cplx> circuit_unitary(const Circuit &c) {
    const std::size_t n = c.n_qubits();
    require(n <= 10, ErrorKind::ResourceLimit,
            "dense circuit unitary limited to 10 qubits");
    const std::size_t dim = std::size_t{1} << n;
    std::vector<cplx> u(dim * dim);
    for (std::size_t j = 0; j < dim; ++j) {
        PureState col(n);
        col[j] = 1.0;
        apply_circuit(col, c);
        for (std::size_t i = 0; i < dim; ++i) {
            u[i * dim + j] = col[i];
        }
    }
    return u;
}

double distance_up_to_phase(std::span<const cplx> a, std::span<const cplx> b) {
    require(a.size() == b.size(), ErrorKind::DimensionMismatch,
            "matrices differ in size");
    std::size_t k = 0;
    for (std::size_t i = 1; i < a.size(); ++i) {
        if (std::abs(a[i]) > std::abs(a[k])) {
            k = i;
        }
    }
    cplx phase{1.0, 0.0};
    if (std::abs(a[k]) > 0.0 && std::abs(b[k]) > 0.0) {
        phase = b[k] / a[k];
        phase /= std::abs(phase);
    }
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        s += std::norm(a[i] * phase - b[i]);
    }
    return std::sqrt(s);
}

} // namespace vqgs
