#pragma once

#include "ionsynth/types.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace ionsynth {

/// Objective contract: return the cost at x and fill grad (resized by the
/// caller to x.size()). Must be safe for concurrent invocation on distinct
/// parameter vectors.
using Objective =
    std::function<double(const std::vector<double>& x, std::vector<double>& grad)>;

enum class GradNormKind : std::uint8_t { Infinity, Euclidean };

struct OptimizerConfig {
    double grad_tol = 1e-5;    // gradient-norm stopping threshold
    GradNormKind grad_norm = GradNormKind::Infinity;
    int max_iterations = 10000;
    int restarts = 10;
    std::uint64_t seed = 0;
    double wolfe_c1 = 1e-4;
    double wolfe_c2 = 0.9;
    double init_lo = 0.0;      // restart starting points uniform in [lo, hi)
    double init_hi = 2.0 * kPi;

    void validate() const;
};

enum class TerminationReason : std::uint8_t {
    Converged,         // gradient infinity-norm below grad_tol
    MaxIterations,
    LineSearchFailure,
    Aborted,           // objective returned a non-finite value
};

const char* termination_name(TerminationReason r);

struct MinimizeResult {
    std::vector<double> x;
    double cost = 0.0;
    int iterations = 0;
    TerminationReason reason = TerminationReason::Aborted;
    bool converged() const { return reason == TerminationReason::Converged; }
};

struct RestartStats {
    double final_cost = 0.0;
    int iterations = 0;
    TerminationReason reason = TerminationReason::Aborted;
    double wall_seconds = 0.0;
};

struct OptimizationRun {
    std::vector<double> best_x;
    double best_cost = 0.0;
    int best_restart = -1;
    int iterations = 0; // of the best restart; what sweep statistics consume
    bool converged = false;
    std::vector<RestartStats> per_restart;
    double wall_seconds = 0.0;

    /// Canonical textual form (17 significant digits); used for the
    /// determinism contract, where two runs must serialize identically.
    std::string serialize() const;
};

/// Per-iteration observer: (iteration, cost, gradient norm).
using IterationCallback = std::function<void(int, double, double)>;

/// BFGS with a dense identity-initialized inverse-Hessian approximation and
/// a strong-Wolfe line search. Stops when the configured gradient norm drops
/// below grad_tol, on max_iterations, or on line-search failure.
MinimizeResult minimize(const Objective& objective, const std::vector<double>& x0,
                        const OptimizerConfig& cfg,
                        const IterationCallback& on_iteration = nullptr);

/// Factory returning an independent objective per worker so restarts can run
/// concurrently with per-worker scratch buffers.
using ObjectiveFactory = std::function<Objective()>;

/// cfg.restarts independent minimizations from uniform random starting
/// points in [init_lo, init_hi); restart r draws its start from stream r of
/// cfg.seed, so results are identical across runs and thread counts.
OptimizationRun minimize_with_restarts(const ObjectiveFactory& make_objective,
                                       std::size_t param_count,
                                       const OptimizerConfig& cfg, int threads = 1);

/// Reduction shared by the restart driver and the sweep harness: lowest
/// final cost wins, ties break to the lowest restart index, aborted restarts
/// never win. Throws when every restart aborted.
OptimizationRun assemble_run(std::vector<MinimizeResult> results,
                             std::vector<double> wall_seconds);

/// Single shared objective; restarts run serially.
OptimizationRun minimize_with_restarts(const Objective& objective,
                                       std::size_t param_count,
                                       const OptimizerConfig& cfg);

} // namespace ionsynth
