#pragma once

#include "ionsynth/ansatz.hpp"
#include "ionsynth/types.hpp"

#include <vector>

namespace ionsynth {

/// What the optimizer is asked to reproduce: a single state, a selected set
/// of columns of a unitary, or the full unitary (all 2^n columns).
struct SynthesisTarget {
    enum class Kind : std::uint8_t { State, Columns, FullUnitary };

    Kind kind = Kind::State;
    int n_qubits = 0;
    StateVector state;                   // State
    std::vector<std::size_t> selection;  // Columns: basis indices phi(i)
    std::vector<StateVector> columns;    // Columns: u_{phi(i)}
    DenseMatrix unitary;                 // FullUnitary

    static SynthesisTarget from_state(StateVector psi);
    static SynthesisTarget from_columns(int n_qubits,
                                        std::vector<std::size_t> selection,
                                        std::vector<StateVector> columns);
    static SynthesisTarget from_unitary(DenseMatrix u);

    std::size_t column_count() const;
};

struct GradientResult {
    double cost = 0.0;
    std::vector<double> gradient;
};

enum class SimDirection : std::uint8_t { Forward, Adjoint };

/// psi <- f(x) psi (Forward) or f(x)^dag psi (Adjoint).
void simulate(const AnsatzTopology& t, const ParameterVector& x, StateVector& psi,
              SimDirection direction);

/// Evaluates the synthesis error and its exact gradient. Owns the scratch
/// state buffers so repeated evaluations on one topology never allocate; one
/// evaluator per worker thread.
///
/// Per column j the error term is 2 (1 - Re <e_j | f(x)^dag | u_j>) -- the
/// squared Euclidean distance || f(x) e_j - u_j ||^2 -- and terms are
/// averaged over the selected columns. The gradient runs a single bra/ket
/// sweep over the gates of f(x)^dag, emitting 2 Im <psi1| H |psi2> at each
/// parameterized gate, where H is the (sign-flipped) generator of the
/// daggered gate. Cost plus gradient takes three circuit simulations per
/// column; columns are processed sequentially so the reduction order is
/// fixed and runs are reproducible.
class CostEvaluator {
  public:
    double cost(const AnsatzTopology& t, const ParameterVector& x,
                const SynthesisTarget& target);

    GradientResult cost_and_gradient(const AnsatzTopology& t, const ParameterVector& x,
                                     const SynthesisTarget& target);

    /// As cost_and_gradient but writing into a caller-held gradient vector.
    double cost_and_gradient_into(const AnsatzTopology& t, const ParameterVector& x,
                                  const SynthesisTarget& target,
                                  std::vector<double>& grad_out);

  private:
    StateVector bra_;     // <psi1| as a ket
    StateVector ket_;     // |psi2>
    StateVector scratch_; // generator application buffer

    void check(const AnsatzTopology& t, const ParameterVector& x,
               const SynthesisTarget& target) const;
    double column_cost(const AnsatzTopology& t, const ParameterVector& x,
                       std::size_t basis_index, const StateVector& column);
    void column_cost_and_gradient(const AnsatzTopology& t, const ParameterVector& x,
                                  std::size_t basis_index, const StateVector& column,
                                  double& cost_out, std::vector<double>& grad_accum);
};

/// Convenience wrappers constructing a throwaway evaluator.
double cost(const AnsatzTopology& t, const ParameterVector& x,
            const SynthesisTarget& target);
GradientResult cost_and_gradient(const AnsatzTopology& t, const ParameterVector& x,
                                 const SynthesisTarget& target);

} // namespace ionsynth
