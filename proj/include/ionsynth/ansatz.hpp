#pragma once

#include "ionsynth/gates.hpp"
#include "ionsynth/types.hpp"

#include <string>
#include <vector>

namespace ionsynth {

enum class SynthesisMode : std::uint8_t {
    Operator,         // synthesize a full unitary (or selected columns)
    StatePreparation, // map |0...0> to a target state
};

const char* mode_name(SynthesisMode mode);
SynthesisMode parse_mode(const std::string& name);

/// Parameter layout version tag recorded in persisted descriptors; bump if
/// the slot ordering ever changes.
inline constexpr const char* kParamLayoutVersion = "v1";

/// Layered trapped-ion circuit skeleton.
///
/// Block structure, circuit order (left to right):
///   k repetitions of [Rz layer | global Rx(+pi/2) | Rz layer | global Rx(-pi/2) | MS],
///   one closing [Rz layer | global Rx(+pi/2) | Rz layer | global Rx(-pi/2)],
///   a final Rz layer, then a global phase.
/// StatePreparation omits the very first Rz layer (it would only contribute a
/// phase to |0...0>). Parameter slots run left to right in circuit order.
struct AnsatzTopology {
    int n_qubits = 0;
    int ms_count = 0;
    SynthesisMode mode = SynthesisMode::Operator;
    std::vector<GateOp> gate_sequence;
    int param_count = 0;

    std::size_t dim() const { return std::size_t{1} << n_qubits; }
};

/// Largest register the simulator accepts; a circuit on n qubits stores
/// 2^n amplitudes.
inline constexpr int kMaxSimQubits = 24;

AnsatzTopology build_topology(int n_qubits, int ms_count, SynthesisMode mode);

/// Degrees of freedom: (2n+1)k + 3n + 1 for Operator (counting the phase
/// slot), (2n+1)k + 2n for StatePreparation (phase slot excluded).
int dof_count(const AnsatzTopology& t);
int dof_count(int n_qubits, int ms_count, SynthesisMode mode);

/// ceil((4^n - 3n - 1) / (2n + 1)): fewer parameterized MS gates cannot
/// give a universal operator topology on n qubits.
long long lower_bound_operator(int n_qubits);

/// ceil((2^{n+1} - 2n - 2) / (2n + 1)): the state-preparation analogue.
long long lower_bound_state(int n_qubits);

struct BoundGate {
    GateOp op;
    double angle; // +-pi/2 for the fixed Rx layers
};

/// Binds angles to the gate sequence; throws on length mismatch.
std::vector<BoundGate> instantiate(const AnsatzTopology& t, const ParameterVector& x);

/// One-line structured text record: n_qubits, ms_count, mode, layout tag.
std::string topology_descriptor(const AnsatzTopology& t);

} // namespace ionsynth
