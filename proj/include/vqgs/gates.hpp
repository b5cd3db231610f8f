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

#include <array>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "vqgs/state.hpp"

namespace vqgs {

using Matrix2 = std::array<cplx, 4>;  ///< row-major 2x2
using Matrix4 = std::array<cplx, 16>; ///< row-major 4x4, first qubit is the high bit

enum class GateKind { Phase, RotX, RotY, RotZ, CNOT, Entangler, FixedUnitary2Q };

/**
 * One gate of a circuit.
 *
 * Conventions: P(t) = diag(1, e^{it}); R_a(t) = exp(i t/2 sigma_a);
 * Entangler(tx, ty, tz) = exp(i(tx XX + ty YY + tz ZZ)); CNOT has qubits
 * {control, target}. FixedUnitary2Q carries an explicit 4x4 matrix and the
 * number of CNOTs it stands for.
 */
class GateDescriptor {
  public:
    static GateDescriptor phase(std::size_t q, double theta);
    static GateDescriptor rot_x(std::size_t q, double theta);
    static GateDescriptor rot_y(std::size_t q, double theta);
    static GateDescriptor rot_z(std::size_t q, double theta);
    static GateDescriptor cnot(std::size_t control, std::size_t target);
    static GateDescriptor entangler(std::size_t a, std::size_t b, double tx,
                                    double ty, double tz);
    static GateDescriptor fixed_2q(std::size_t a, std::size_t b,
                                   const Matrix4 &u, int cnot_cost);

    [[nodiscard]] GateKind kind() const noexcept { return kind_; }
    [[nodiscard]] std::size_t arity() const noexcept { return arity_; }
    [[nodiscard]] std::size_t qubit(std::size_t i) const noexcept {
        return qubits_[i];
    }
    [[nodiscard]] const std::array<double, 3> &angles() const noexcept {
        return angles_;
    }
    [[nodiscard]] const Matrix4 &unitary() const { return *unitary_; }
    [[nodiscard]] int cnot_cost() const noexcept { return cnot_cost_; }

    [[nodiscard]] GateDescriptor inverse() const;

    /// 2x2 matrix of a single-qubit gate.
    [[nodiscard]] Matrix2 matrix2() const;
    /// 4x4 matrix of a two-qubit gate.
    [[nodiscard]] Matrix4 matrix4() const;

  private:
    GateDescriptor() = default;

    GateKind kind_{GateKind::Phase};
    std::size_t arity_{1};
    std::array<std::size_t, 2> qubits_{0, 0};
    std::array<double, 3> angles_{0.0, 0.0, 0.0};
    std::shared_ptr<const Matrix4> unitary_;
    int cnot_cost_{0};
};

class Circuit {
  public:
    explicit Circuit(std::size_t n_qubits);

    [[nodiscard]] std::size_t n_qubits() const noexcept { return n_; }
    [[nodiscard]] const std::vector<GateDescriptor> &gates() const noexcept {
        return gates_;
    }
    [[nodiscard]] const std::vector<std::size_t> &layer_marks() const noexcept {
        return layer_marks_;
    }
    [[nodiscard]] std::size_t size() const noexcept { return gates_.size(); }
    [[nodiscard]] bool empty() const noexcept { return gates_.empty(); }

    void add(GateDescriptor g);
    void append(const Circuit &other);
    /// Records that a new layer starts at the current end of the gate list.
    void mark_layer();

    /// Gates of layer i (layers delimited by layer_marks; a circuit without
    /// marks is one layer).
    [[nodiscard]] std::span<const GateDescriptor> layer(std::size_t i) const;
    [[nodiscard]] std::size_t layer_count() const noexcept;

  private:
    std::size_t n_;
    std::vector<GateDescriptor> gates_;
    std::vector<std::size_t> layer_marks_;
};

Matrix4 entangler_unitary(double tx, double ty, double tz);

/// Three-CNOT realization of Entangler(tx, ty, tz) on qubits (a, b) using
/// five y/z rotations; equal to the entangler up to a global phase.
void append_entangler_decomposition(Circuit &c, std::size_t a, std::size_t b,
                                    double tx, double ty, double tz);

/// Two-qubit circuit realizing entangler_unitary(tx, ty, tz) on qubits (0, 1).
Circuit decompose_entangler(double tx, double ty, double tz);

/// Replaces every Entangler gate by its CNOT decomposition.
Circuit expand_entanglers(const Circuit &c);

/// In-place matrix-free application on a raw amplitude buffer of n qubits.
void apply_gate(std::span<cplx> amps, std::size_t n, const GateDescriptor &g);
void apply_gate(PureState &psi, const GateDescriptor &g);
void apply_circuit(PureState &psi, const Circuit &c);
/// rho -> U rho U^dagger
void apply_gate(MixedState &rho, const GateDescriptor &g);
void apply_circuit(MixedState &rho, const Circuit &c);

/// CNOTs plus 3 per Entangler plus the declared cost of fixed unitaries.
std::size_t cnot_count(const Circuit &c);

/// Dense unitary of a circuit on up to 10 qubits, column j = C|j>.
std::vector<cplx> circuit_unitary(const Circuit &c);

/// Frobenius distance between a and b after removing the global phase that
/// aligns the largest-magnitude element of a with b.
double distance_up_to_phase(std::span<const cplx> a, std::span<const cplx> b);

} // namespace vqgs
