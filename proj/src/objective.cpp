#include "ionsynth/objective.hpp"

#include "ionsynth/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ionsynth {

SynthesisTarget SynthesisTarget::from_state(StateVector psi) {
    const double n = vec_norm(psi);
    if (std::abs(n - 1.0) > 1e-12) {
        throw std::invalid_argument("SynthesisTarget: state not normalized");
    }
    SynthesisTarget t;
    t.kind = Kind::State;
    t.n_qubits = psi.n_qubits;
    t.state = std::move(psi);
    return t;
}

SynthesisTarget SynthesisTarget::from_columns(int n_qubits,
                                              std::vector<std::size_t> selection,
                                              std::vector<StateVector> columns) {
    if (selection.empty() || selection.size() != columns.size()) {
        throw std::invalid_argument("SynthesisTarget: selection/column count mismatch");
    }
    const std::size_t dim = std::size_t{1} << n_qubits;
    for (std::size_t i = 0; i < selection.size(); ++i) {
        if (selection[i] >= dim) {
            throw std::invalid_argument("SynthesisTarget: selection index out of range");
        }
        for (std::size_t j = i + 1; j < selection.size(); ++j) {
            if (selection[i] == selection[j]) {
                throw std::invalid_argument("SynthesisTarget: duplicate selection index");
            }
        }
        if (columns[i].n_qubits != n_qubits) {
            throw std::invalid_argument("SynthesisTarget: column dimension mismatch");
        }
    }
    // selected columns of a unitary are orthonormal
    for (std::size_t i = 0; i < columns.size(); ++i) {
        for (std::size_t j = i; j < columns.size(); ++j) {
            const Cx g = inner(columns[i], columns[j]);
            const Cx expect = (i == j) ? Cx{1.0, 0.0} : Cx{0.0, 0.0};
            if (std::abs(g - expect) > 1e-10) {
                throw std::invalid_argument("SynthesisTarget: columns not orthonormal");
            }
        }
    }
    SynthesisTarget t;
    t.kind = Kind::Columns;
    t.n_qubits = n_qubits;
    t.selection = std::move(selection);
    t.columns = std::move(columns);
    return t;
}

SynthesisTarget SynthesisTarget::from_unitary(DenseMatrix u) {
    if (u.rows != u.cols) {
        throw std::invalid_argument("SynthesisTarget: unitary must be square");
    }
    int n = 0;
    while ((std::size_t{1} << n) < u.rows) ++n;
    if ((std::size_t{1} << n) != u.rows) {
        throw std::invalid_argument("SynthesisTarget: dimension is not a power of two");
    }
    if (unitarity_residual(u) > 1e-10) {
        throw std::invalid_argument("SynthesisTarget: matrix is not unitary");
    }
    SynthesisTarget t;
    t.kind = Kind::FullUnitary;
    t.n_qubits = n;
    t.unitary = std::move(u);
    return t;
}

std::size_t SynthesisTarget::column_count() const {
    switch (kind) {
        case Kind::State:
            return 1;
        case Kind::Columns:
            return selection.size();
        case Kind::FullUnitary:
            return std::size_t{1} << n_qubits;
    }
    return 0;
}

void simulate(const AnsatzTopology& t, const ParameterVector& x, StateVector& psi,
              SimDirection direction) {
    if (psi.n_qubits != t.n_qubits) {
        throw std::invalid_argument("simulate: state dimension mismatch");
    }
    if (x.size() != static_cast<std::size_t>(t.param_count)) {
        throw std::invalid_argument("simulate: parameter length mismatch");
    }
    if (direction == SimDirection::Forward) {
        for (const GateOp& g : t.gate_sequence) {
            apply_gate(g, x, psi);
        }
    } else {
        for (auto it = t.gate_sequence.rbegin(); it != t.gate_sequence.rend(); ++it) {
            apply_gate_adjoint(*it, x, psi);
        }
    }
}

void CostEvaluator::check(const AnsatzTopology& t, const ParameterVector& x,
                          const SynthesisTarget& target) const {
    if (target.n_qubits != t.n_qubits) {
        throw std::invalid_argument("cost: target dimension mismatch");
    }
    if (x.size() != static_cast<std::size_t>(t.param_count)) {
        throw std::invalid_argument("cost: parameter length mismatch");
    }
    require_finite(x);
}

namespace {

void load_column(StateVector& dst, const StateVector& src) {
    dst.n_qubits = src.n_qubits;
    dst.amps = src.amps; // reuses dst capacity when dimensions repeat
}

void load_unitary_column(StateVector& dst, const DenseMatrix& u, int n_qubits,
                         std::size_t j) {
    dst.n_qubits = n_qubits;
    dst.amps.resize(u.rows);
    for (std::size_t i = 0; i < u.rows; ++i) {
        dst.amps[i] = u.at(i, j);
    }
}

void load_basis(StateVector& dst, int n_qubits, std::size_t index) {
    dst.n_qubits = n_qubits;
    dst.amps.assign(std::size_t{1} << n_qubits, Cx{0.0, 0.0});
    dst.amps[index] = Cx{1.0, 0.0};
}

} // namespace

double CostEvaluator::column_cost(const AnsatzTopology& t, const ParameterVector& x,
                                  std::size_t basis_index, const StateVector& column) {
    // g = 2 (1 - Re <e_j | f(x)^dag | u_j>): simulate the adjoint circuit on
    // the target column and read the basis_index amplitude. The term is a
    // squared distance; the clamp removes the ~1e-16 negative excursion
    // rounding can produce at an exact synthesis.
    load_column(ket_, column);
    simulate(t, x, ket_, SimDirection::Adjoint);
    return std::max(0.0, 2.0 * (1.0 - ket_.amps[basis_index].real()));
}

void CostEvaluator::column_cost_and_gradient(const AnsatzTopology& t,
                                             const ParameterVector& x,
                                             std::size_t basis_index,
                                             const StateVector& column, double& cost_out,
                                             std::vector<double>& grad_accum) {
    // Two-state sweep over the gates of f(x)^dag in circuit order. The i-th
    // product factor of f(x)^dag is the daggered i-th circuit gate, so its
    // generator is the negated forward generator, and advancing either state
    // by that factor is one application of the forward gate.
    load_basis(bra_, t.n_qubits, basis_index);
    load_column(ket_, column);
    simulate(t, x, ket_, SimDirection::Adjoint);

    cost_out = std::max(0.0, 2.0 * (1.0 - ket_.amps[basis_index].real()));

    scratch_.n_qubits = t.n_qubits;
    for (const GateOp& g : t.gate_sequence) {
        if (g.parameterized()) {
            scratch_.amps = ket_.amps;
            apply_generator(g, scratch_);
            // H = -Omega_forward, so df = 2 Im <psi1|H|psi2> = -2 Im <psi1|Omega|psi2>
            grad_accum[static_cast<std::size_t>(g.slot)] -=
                2.0 * inner(bra_.amps, scratch_.amps).imag();
        }
        apply_gate(g, x, bra_);
        apply_gate(g, x, ket_);
    }
}

double CostEvaluator::cost(const AnsatzTopology& t, const ParameterVector& x,
                           const SynthesisTarget& target) {
    check(t, x, target);
    switch (target.kind) {
        case SynthesisTarget::Kind::State:
            return column_cost(t, x, 0, target.state);
        case SynthesisTarget::Kind::Columns: {
            double acc = 0.0;
            for (std::size_t i = 0; i < target.selection.size(); ++i) {
                acc += column_cost(t, x, target.selection[i], target.columns[i]);
            }
            return acc / static_cast<double>(target.selection.size());
        }
        case SynthesisTarget::Kind::FullUnitary: {
            const std::size_t dim = target.unitary.rows;
            StateVector col;
            double acc = 0.0;
            for (std::size_t j = 0; j < dim; ++j) {
                load_unitary_column(col, target.unitary, t.n_qubits, j);
                acc += column_cost(t, x, j, col);
            }
            return acc / static_cast<double>(dim);
        }
    }
    throw std::logic_error("cost: unreachable");
}

double CostEvaluator::cost_and_gradient_into(const AnsatzTopology& t,
                                             const ParameterVector& x,
                                             const SynthesisTarget& target,
                                             std::vector<double>& grad_out) {
    check(t, x, target);
    grad_out.assign(static_cast<std::size_t>(t.param_count), 0.0);

    double total_cost = 0.0;
    std::size_t n_cols = 0;
    double col_cost = 0.0;
    switch (target.kind) {
        case SynthesisTarget::Kind::State:
            n_cols = 1;
            column_cost_and_gradient(t, x, 0, target.state, col_cost, grad_out);
            total_cost = col_cost;
            break;
        case SynthesisTarget::Kind::Columns:
            n_cols = target.selection.size();
            for (std::size_t i = 0; i < n_cols; ++i) {
                column_cost_and_gradient(t, x, target.selection[i], target.columns[i],
                                         col_cost, grad_out);
                total_cost += col_cost;
            }
            break;
        case SynthesisTarget::Kind::FullUnitary: {
            const std::size_t dim = target.unitary.rows;
            n_cols = dim;
            StateVector col;
            for (std::size_t j = 0; j < dim; ++j) {
                load_unitary_column(col, target.unitary, t.n_qubits, j);
                column_cost_and_gradient(t, x, j, col, col_cost, grad_out);
                total_cost += col_cost;
            }
            break;
        }
    }
    const double inv = 1.0 / static_cast<double>(n_cols);
    for (double& g : grad_out) {
        g *= inv;
    }
    return total_cost * inv;
}

GradientResult CostEvaluator::cost_and_gradient(const AnsatzTopology& t,
                                                const ParameterVector& x,
                                                const SynthesisTarget& target) {
    GradientResult r;
    r.cost = cost_and_gradient_into(t, x, target, r.gradient);
    return r;
}

double cost(const AnsatzTopology& t, const ParameterVector& x,
            const SynthesisTarget& target) {
    CostEvaluator ev;
    return ev.cost(t, x, target);
}

GradientResult cost_and_gradient(const AnsatzTopology& t, const ParameterVector& x,
                                 const SynthesisTarget& target) {
    CostEvaluator ev;
    return ev.cost_and_gradient(t, x, target);
}

} // namespace ionsynth
