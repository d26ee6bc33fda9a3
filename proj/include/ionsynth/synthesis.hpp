#pragma once

#include "ionsynth/ansatz.hpp"
#include "ionsynth/bfgs.hpp"
#include "ionsynth/objective.hpp"

namespace ionsynth {

/// Wires a CostEvaluator-backed objective (one evaluator per worker) into
/// the multi-restart minimizer.
OptimizationRun synthesize_target(const AnsatzTopology& t, const SynthesisTarget& target,
                                  const OptimizerConfig& cfg, int threads = 1);

/// MS-gate count used by "auto": the theoretical lower bound, except the
/// 2-qubit operator case which empirically needs one extra gate.
long long auto_ms_count(int n_qubits, SynthesisMode mode);

/// +10% more MS gates, rounded up (at least one extra).
long long ms_count_plus_ten_percent(long long ms_count);

} // namespace ionsynth
