#pragma once

#include "ionsynth/ansatz.hpp"
#include "ionsynth/bfgs.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace ionsynth {

/// MS-count sweep over a sample of random targets. Each (target, restart)
/// pair is an independent job; the scheduler never influences the numbers,
/// only the wall-clock columns.
struct ExperimentSpec {
    SynthesisMode mode = SynthesisMode::StatePreparation;
    int n_qubits = 0;
    std::vector<int> ms_counts;  // nonempty, nonnegative, strictly increasing
    int sample_size = 50;
    OptimizerConfig optimizer;   // optimizer.seed is the experiment base seed
    int threads = 1;
    double conv_threshold = 1e-6; // a sweep point counts as converged below this

    enum class TargetSource : std::uint8_t { Haar, Identity };
    TargetSource target_source = TargetSource::Haar;

    void validate() const;
};

struct SweepRecord {
    int ms_count = 0;
    double max_error = 0.0;          // best cost per target, maximized over the sample
    double mean_iterations = 0.0;    // best restart per target, averaged
    double mean_time_per_iter_s = 0.0;
    int converged = 0;               // targets below conv_threshold
    int sample_size = 0;
};

struct SweepResult {
    std::vector<SweepRecord> records;
    /// Per ms_count, per target: the full runs, for callers that need more
    /// than the aggregate rows.
    std::vector<std::vector<OptimizationRun>> runs;
};

SweepResult run_sweep(const ExperimentSpec& spec);

/// Seed of the optimization for target index t at MS count k, derived from
/// the experiment base seed; pinned in FORMATS.md.
std::uint64_t sweep_job_seed(std::uint64_t base_seed, int ms_count, int target_index);

void write_sweep_csv(std::ostream& os, const std::vector<SweepRecord>& records);
void save_sweep_csv(const std::string& path, const std::vector<SweepRecord>& records);

struct TradeoffResult {
    SweepRecord at_bound;
    SweepRecord at_plus_ten_percent;
    long long bound = 0;
    long long plus_ten_percent = 0;
    /// mean_iterations(bound) / mean_iterations(bound + 10%).
    double iteration_ratio = 0.0;
};

/// Runs the spec's sample at the theoretical bound and at bound+10% MS
/// gates (ms_counts in the spec is ignored).
TradeoffResult run_tradeoff(const ExperimentSpec& spec);

void write_tradeoff_csv(std::ostream& os, const TradeoffResult& r);
void save_tradeoff_csv(const std::string& path, const TradeoffResult& r);

} // namespace ionsynth
