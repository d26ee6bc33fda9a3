#pragma once

#include "ionsynth/types.hpp"

#include <cstdint>

namespace ionsynth {

/// Trapped-ion elementary gates.
///
///   LocalRz     : Rz(theta) = diag(e^{-i theta/2}, e^{+i theta/2}) on one qubit
///   GlobalRx    : fixed Rx(+-pi/2) = (1/sqrt2) [[1, -+i], [-+i, 1]] on every qubit
///   MS          : Molmer-Sorensen, exp(-i theta (sum_q X_q)^2 / 4) on all qubits
///   GlobalPhase : e^{i theta} times identity
///
/// LocalRz, MS and GlobalPhase are parameterized (they carry a slot into the
/// flat parameter vector); the global Rx layers are fixed by construction.
enum class GateKind : std::uint8_t {
    LocalRz,
    GlobalRxPlus,
    GlobalRxMinus,
    MolmerSorensen,
    GlobalPhase,
};

struct GateOp {
    GateKind kind;
    int n_qubits;
    int qubit = -1; // LocalRz only
    int slot = -1;  // parameter slot; -1 for the fixed Rx layers

    bool parameterized() const { return slot >= 0; }
};

GateOp make_local_rz(int n_qubits, int qubit, int slot);
GateOp make_global_rx(int n_qubits, int sign); // sign in {+1, -1}, angle pi/2
GateOp make_ms(int n_qubits, int slot);
GateOp make_global_phase(int n_qubits, int slot);

int hamming_weight(std::uint64_t b);

/// In-place psi <- U psi. `params` supplies the angle for parameterized gates.
void apply_gate(const GateOp& g, const ParameterVector& params, StateVector& psi);

/// In-place psi <- U^dag psi.
void apply_gate_adjoint(const GateOp& g, const ParameterVector& params, StateVector& psi);

/// Same kernels with an explicit angle (fixed gates ignore it).
void apply_gate_angle(const GateOp& g, double angle, StateVector& psi);

/// In-place psi <- Omega psi where gate = exp(i * theta * Omega):
///   LocalRz     : Omega = -Z_q / 2
///   MS          : Omega = -(sum_q X_q)^2 / 4
///   GlobalPhase : Omega = I
/// Output is not normalized in general. Throws for the fixed Rx layers.
void apply_generator(const GateOp& g, StateVector& psi);

/// Dense unitary of the gate, built column by column from apply_gate.
/// Oracle/testing path; rejects n_qubits above the dense limit.
DenseMatrix gate_dense(const GateOp& g, const ParameterVector& params);

} // namespace ionsynth
