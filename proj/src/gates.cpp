#include "ionsynth/gates.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace ionsynth {

GateOp make_local_rz(int n_qubits, int qubit, int slot) {
    if (qubit < 0 || qubit >= n_qubits) {
        throw std::invalid_argument("make_local_rz: qubit index out of range");
    }
    if (slot < 0) {
        throw std::invalid_argument("make_local_rz: parameter slot required");
    }
    return GateOp{GateKind::LocalRz, n_qubits, qubit, slot};
}

GateOp make_global_rx(int n_qubits, int sign) {
    if (sign != 1 && sign != -1) {
        throw std::invalid_argument("make_global_rx: sign must be +1 or -1");
    }
    return GateOp{sign > 0 ? GateKind::GlobalRxPlus : GateKind::GlobalRxMinus,
                  n_qubits, -1, -1};
}

GateOp make_ms(int n_qubits, int slot) {
    if (slot < 0) {
        throw std::invalid_argument("make_ms: parameter slot required");
    }
    return GateOp{GateKind::MolmerSorensen, n_qubits, -1, slot};
}

GateOp make_global_phase(int n_qubits, int slot) {
    if (slot < 0) {
        throw std::invalid_argument("make_global_phase: parameter slot required");
    }
    return GateOp{GateKind::GlobalPhase, n_qubits, -1, slot};
}

int hamming_weight(std::uint64_t b) {
    return std::popcount(b);
}

namespace {

// Qubit q occupies bit (n-1-q) of a basis index: qubit 0 is the top wire and
// the most significant bit.
inline std::size_t qubit_stride(int n_qubits, int qubit) {
    return std::size_t{1} << (n_qubits - 1 - qubit);
}

void rz_kernel(StateVector& psi, int qubit, double theta) {
    const std::size_t dim = psi.dim();
    const std::size_t s = qubit_stride(psi.n_qubits, qubit);
    const Cx lo = std::polar(1.0, -theta / 2.0); // bit clear
    const Cx hi = std::polar(1.0, +theta / 2.0); // bit set
    for (std::size_t base = 0; base < dim; base += 2 * s) {
        for (std::size_t off = 0; off < s; ++off) {
            psi.amps[base + off] *= lo;
            psi.amps[base + off + s] *= hi;
        }
    }
}

// Rx(sign * pi/2) = (1/sqrt2) [[1, -i*sign], [-i*sign, 1]] on every qubit.
void global_rx_kernel(StateVector& psi, int sign) {
    const std::size_t dim = psi.dim();
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const Cx off_diag{0.0, -inv_sqrt2 * sign};
    for (int q = 0; q < psi.n_qubits; ++q) {
        const std::size_t s = qubit_stride(psi.n_qubits, q);
        for (std::size_t base = 0; base < dim; base += 2 * s) {
            for (std::size_t off = 0; off < s; ++off) {
                Cx a0 = psi.amps[base + off];
                Cx a1 = psi.amps[base + off + s];
                psi.amps[base + off] = inv_sqrt2 * a0 + off_diag * a1;
                psi.amps[base + off + s] = off_diag * a0 + inv_sqrt2 * a1;
            }
        }
    }
}

// H on every qubit; self-inverse.
void hadamard_all(StateVector& psi) {
    const std::size_t dim = psi.dim();
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (int q = 0; q < psi.n_qubits; ++q) {
        const std::size_t s = qubit_stride(psi.n_qubits, q);
        for (std::size_t base = 0; base < dim; base += 2 * s) {
            for (std::size_t off = 0; off < s; ++off) {
                Cx a0 = psi.amps[base + off];
                Cx a1 = psi.amps[base + off + s];
                psi.amps[base + off] = inv_sqrt2 * (a0 + a1);
                psi.amps[base + off + s] = inv_sqrt2 * (a0 - a1);
            }
        }
    }
}

// MS(theta) = H^{xn} diag(e^{-i theta (n - 2 Hamm(b))^2 / 4}) H^{xn}.
// In the Hadamard basis sum_q X_q is diagonal with eigenvalue n - 2 Hamm(b).
void ms_kernel(StateVector& psi, double theta) {
    const int n = psi.n_qubits;
    hadamard_all(psi);
    // the phase only depends on the Hamming weight; n+1 distinct values
    std::vector<Cx> phase(static_cast<std::size_t>(n) + 1);
    for (int h = 0; h <= n; ++h) {
        const double w = static_cast<double>(n - 2 * h);
        phase[static_cast<std::size_t>(h)] = std::polar(1.0, -theta * w * w / 4.0);
    }
    const std::size_t dim = psi.dim();
    for (std::size_t b = 0; b < dim; ++b) {
        psi.amps[b] *= phase[static_cast<std::size_t>(hamming_weight(b))];
    }
    hadamard_all(psi);
}

void global_phase_kernel(StateVector& psi, double theta) {
    const Cx f = std::polar(1.0, theta);
    for (Cx& a : psi.amps) {
        a *= f;
    }
}

double fetch_angle(const GateOp& g, const ParameterVector& params) {
    if (static_cast<std::size_t>(g.slot) >= params.size()) {
        throw std::invalid_argument("apply_gate: parameter slot out of range");
    }
    return params[static_cast<std::size_t>(g.slot)];
}

void check_dims(const GateOp& g, const StateVector& psi) {
    if (psi.n_qubits != g.n_qubits) {
        throw std::invalid_argument("apply_gate: qubit-count mismatch");
    }
}

} // namespace

void apply_gate_angle(const GateOp& g, double angle, StateVector& psi) {
    check_dims(g, psi);
    switch (g.kind) {
        case GateKind::LocalRz:
            rz_kernel(psi, g.qubit, angle);
            break;
        case GateKind::GlobalRxPlus:
            global_rx_kernel(psi, +1);
            break;
        case GateKind::GlobalRxMinus:
            global_rx_kernel(psi, -1);
            break;
        case GateKind::MolmerSorensen:
            ms_kernel(psi, angle);
            break;
        case GateKind::GlobalPhase:
            global_phase_kernel(psi, angle);
            break;
    }
}

void apply_gate(const GateOp& g, const ParameterVector& params, StateVector& psi) {
    apply_gate_angle(g, g.parameterized() ? fetch_angle(g, params) : 0.0, psi);
}

void apply_gate_adjoint(const GateOp& g, const ParameterVector& params, StateVector& psi) {
    check_dims(g, psi);
    switch (g.kind) {
        case GateKind::LocalRz:
            rz_kernel(psi, g.qubit, -fetch_angle(g, params));
            break;
        case GateKind::GlobalRxPlus:
            global_rx_kernel(psi, -1);
            break;
        case GateKind::GlobalRxMinus:
            global_rx_kernel(psi, +1);
            break;
        case GateKind::MolmerSorensen:
            ms_kernel(psi, -fetch_angle(g, params));
            break;
        case GateKind::GlobalPhase:
            global_phase_kernel(psi, -fetch_angle(g, params));
            break;
    }
}

void apply_generator(const GateOp& g, StateVector& psi) {
    check_dims(g, psi);
    switch (g.kind) {
        case GateKind::LocalRz: {
            // Omega = -Z_q/2: -1/2 on bit clear, +1/2 on bit set
            const std::size_t dim = psi.dim();
            const std::size_t s = qubit_stride(psi.n_qubits, g.qubit);
            for (std::size_t base = 0; base < dim; base += 2 * s) {
                for (std::size_t off = 0; off < s; ++off) {
                    psi.amps[base + off] *= -0.5;
                    psi.amps[base + off + s] *= 0.5;
                }
            }
            break;
        }
        case GateKind::MolmerSorensen: {
            // Omega = -(sum_q X_q)^2/4, diagonal -(n - 2 Hamm)^2/4 in the Hadamard basis
            const int n = psi.n_qubits;
            hadamard_all(psi);
            std::vector<double> scale(static_cast<std::size_t>(n) + 1);
            for (int h = 0; h <= n; ++h) {
                const double w = static_cast<double>(n - 2 * h);
                scale[static_cast<std::size_t>(h)] = -w * w / 4.0;
            }
            const std::size_t dim = psi.dim();
            for (std::size_t b = 0; b < dim; ++b) {
                psi.amps[b] *= scale[static_cast<std::size_t>(hamming_weight(b))];
            }
            hadamard_all(psi);
            break;
        }
        case GateKind::GlobalPhase:
            // Omega = I
            break;
        case GateKind::GlobalRxPlus:
        case GateKind::GlobalRxMinus:
            throw std::invalid_argument(
                "apply_generator: global Rx layers carry no parameter");
    }
}

DenseMatrix gate_dense(const GateOp& g, const ParameterVector& params) {
    if (g.n_qubits > kMaxDenseQubits) {
        throw std::invalid_argument("gate_dense: size limit exceeded");
    }
    const std::size_t dim = std::size_t{1} << g.n_qubits;
    DenseMatrix m(dim, dim);
    for (std::size_t j = 0; j < dim; ++j) {
        StateVector col = StateVector::basis(g.n_qubits, j);
        apply_gate(g, params, col);
        for (std::size_t i = 0; i < dim; ++i) {
            m.at(i, j) = col.amps[i];
        }
    }
    return m;
}

} // namespace ionsynth
