#include "ionsynth/ansatz.hpp"

#include <sstream>
#include <stdexcept>

namespace ionsynth {

const char* mode_name(SynthesisMode mode) {
    return mode == SynthesisMode::Operator ? "operator" : "state";
}

SynthesisMode parse_mode(const std::string& name) {
    if (name == "operator") return SynthesisMode::Operator;
    if (name == "state" || name == "state-preparation") return SynthesisMode::StatePreparation;
    throw std::invalid_argument("unknown mode '" + name + "' (expected operator|state)");
}

AnsatzTopology build_topology(int n_qubits, int ms_count, SynthesisMode mode) {
    if (n_qubits < 1) {
        throw std::invalid_argument("build_topology: need at least one qubit");
    }
    if (n_qubits > kMaxSimQubits) {
        throw std::invalid_argument("build_topology: qubit count exceeds simulation limit");
    }
    if (ms_count < 0) {
        throw std::invalid_argument("build_topology: negative MS count");
    }

    AnsatzTopology t;
    t.n_qubits = n_qubits;
    t.ms_count = ms_count;
    t.mode = mode;

    int slot = 0;
    bool first_rz_layer = true;
    auto rz_layer = [&] {
        // StatePreparation drops the leading layer: on |0...0> it is a phase only
        if (first_rz_layer && mode == SynthesisMode::StatePreparation) {
            first_rz_layer = false;
            return;
        }
        first_rz_layer = false;
        for (int q = 0; q < n_qubits; ++q) {
            t.gate_sequence.push_back(make_local_rz(n_qubits, q, slot++));
        }
    };

    for (int rep = 0; rep < ms_count; ++rep) {
        rz_layer();
        t.gate_sequence.push_back(make_global_rx(n_qubits, +1));
        rz_layer();
        t.gate_sequence.push_back(make_global_rx(n_qubits, -1));
        t.gate_sequence.push_back(make_ms(n_qubits, slot++));
    }
    rz_layer();
    t.gate_sequence.push_back(make_global_rx(n_qubits, +1));
    rz_layer();
    t.gate_sequence.push_back(make_global_rx(n_qubits, -1));
    rz_layer();
    t.gate_sequence.push_back(make_global_phase(n_qubits, slot++));

    t.param_count = slot;
    return t;
}

int dof_count(int n_qubits, int ms_count, SynthesisMode mode) {
    const int n = n_qubits;
    const int k = ms_count;
    if (mode == SynthesisMode::Operator) {
        return (2 * n + 1) * k + 3 * n + 1;
    }
    return (2 * n + 1) * k + 2 * n; // explicit phase slot excluded
}

int dof_count(const AnsatzTopology& t) {
    return dof_count(t.n_qubits, t.ms_count, t.mode);
}

static long long ceil_div(long long num, long long den) {
    return (num + den - 1) / den;
}

long long lower_bound_operator(int n_qubits) {
    if (n_qubits < 1) {
        throw std::invalid_argument("lower_bound_operator: need at least one qubit");
    }
    const long long n = n_qubits;
    const long long dim_u = 1LL << (2 * n); // 4^n
    return ceil_div(dim_u - 3 * n - 1, 2 * n + 1);
}

long long lower_bound_state(int n_qubits) {
    if (n_qubits < 1) {
        throw std::invalid_argument("lower_bound_state: need at least one qubit");
    }
    const long long n = n_qubits;
    const long long state_params = (1LL << (n + 1)) - 2;
    return ceil_div(state_params - 2 * n, 2 * n + 1);
}

std::vector<BoundGate> instantiate(const AnsatzTopology& t, const ParameterVector& x) {
    if (x.size() != static_cast<std::size_t>(t.param_count)) {
        throw std::invalid_argument("instantiate: parameter length mismatch");
    }
    std::vector<BoundGate> bound;
    bound.reserve(t.gate_sequence.size());
    for (const GateOp& g : t.gate_sequence) {
        double angle = 0.0;
        if (g.parameterized()) {
            angle = x[static_cast<std::size_t>(g.slot)];
        } else {
            angle = (g.kind == GateKind::GlobalRxPlus) ? kPi / 2.0 : -kPi / 2.0;
        }
        bound.push_back(BoundGate{g, angle});
    }
    return bound;
}

std::string topology_descriptor(const AnsatzTopology& t) {
    std::ostringstream os;
    os << "topology n_qubits=" << t.n_qubits << " ms_count=" << t.ms_count
       << " mode=" << mode_name(t.mode) << " layout=" << kParamLayoutVersion;
    return os.str();
}

} // namespace ionsynth
