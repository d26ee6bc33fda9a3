#include "ionsynth/synthesis.hpp"

#include <memory>

namespace ionsynth {

OptimizationRun synthesize_target(const AnsatzTopology& t, const SynthesisTarget& target,
                                  const OptimizerConfig& cfg, int threads) {
    auto factory = [&t, &target]() -> Objective {
        auto evaluator = std::make_shared<CostEvaluator>();
        return [&t, &target, evaluator](const std::vector<double>& x,
                                        std::vector<double>& grad) {
            return evaluator->cost_and_gradient_into(t, x, target, grad);
        };
    };
    return minimize_with_restarts(factory, static_cast<std::size_t>(t.param_count), cfg,
                                  threads);
}

long long auto_ms_count(int n_qubits, SynthesisMode mode) {
    if (mode == SynthesisMode::StatePreparation) {
        return lower_bound_state(n_qubits);
    }
    const long long bound = lower_bound_operator(n_qubits);
    // n=2 operators need one gate beyond the counting bound in practice
    return (n_qubits == 2) ? bound + 1 : bound;
}

long long ms_count_plus_ten_percent(long long ms_count) {
    if (ms_count <= 0) return 1;
    return ms_count + (ms_count + 9) / 10;
}

} // namespace ionsynth
