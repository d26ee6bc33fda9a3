#include "ionsynth/sweep.hpp"

#include "ionsynth/haar.hpp"
#include "ionsynth/objective.hpp"
#include "ionsynth/parallel.hpp"
#include "ionsynth/rng.hpp"
#include "ionsynth/synthesis.hpp"
#include "ionsynth/target_io.hpp"

#include <chrono>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ionsynth {

void ExperimentSpec::validate() const {
    if (n_qubits < 1) {
        throw std::invalid_argument("ExperimentSpec: need at least one qubit");
    }
    if (ms_counts.empty()) {
        throw std::invalid_argument("ExperimentSpec: ms_counts must be nonempty");
    }
    for (std::size_t i = 0; i < ms_counts.size(); ++i) {
        if (ms_counts[i] < 0) {
            throw std::invalid_argument("ExperimentSpec: negative ms_count");
        }
        if (i > 0 && ms_counts[i] <= ms_counts[i - 1]) {
            throw std::invalid_argument("ExperimentSpec: ms_counts must be strictly increasing");
        }
    }
    if (sample_size < 1) {
        throw std::invalid_argument("ExperimentSpec: sample_size must be positive");
    }
    if (!(conv_threshold > 0.0)) {
        throw std::invalid_argument("ExperimentSpec: conv_threshold must be positive");
    }
    optimizer.validate();
}

std::uint64_t sweep_job_seed(std::uint64_t base_seed, int ms_count, int target_index) {
    return mix64(base_seed + 0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(ms_count) + 1) +
                 0x517CC1B727220A95ULL * (static_cast<std::uint64_t>(target_index) + 1));
}

namespace {

SynthesisTarget make_sample_target(const ExperimentSpec& spec, int target_index) {
    if (spec.target_source == ExperimentSpec::TargetSource::Identity) {
        if (spec.mode == SynthesisMode::Operator) {
            return SynthesisTarget::from_unitary(
                DenseMatrix::identity(std::size_t{1} << spec.n_qubits));
        }
        return SynthesisTarget::from_state(StateVector::zero_state(spec.n_qubits));
    }
    // target index doubles as the sampler stream id
    if (spec.mode == SynthesisMode::Operator) {
        return SynthesisTarget::from_unitary(haar_unitary(
            spec.n_qubits, spec.optimizer.seed, static_cast<std::uint64_t>(target_index)));
    }
    return SynthesisTarget::from_state(haar_state(
        spec.n_qubits, spec.optimizer.seed, static_cast<std::uint64_t>(target_index)));
}

SweepRecord aggregate(const ExperimentSpec& spec, int ms_count,
                      const std::vector<OptimizationRun>& runs) {
    SweepRecord rec;
    rec.ms_count = ms_count;
    rec.sample_size = spec.sample_size;
    double iter_sum = 0.0;
    double wall_sum = 0.0;
    long long best_iter_sum = 0;
    for (const OptimizationRun& run : runs) {
        rec.max_error = std::max(rec.max_error, run.best_cost);
        iter_sum += static_cast<double>(run.iterations);
        best_iter_sum += run.iterations;
        if (run.best_restart >= 0) {
            wall_sum += run.per_restart[static_cast<std::size_t>(run.best_restart)].wall_seconds;
        }
        if (run.best_cost < spec.conv_threshold) {
            ++rec.converged;
        }
    }
    rec.mean_iterations = iter_sum / static_cast<double>(runs.size());
    rec.mean_time_per_iter_s =
        best_iter_sum > 0 ? wall_sum / static_cast<double>(best_iter_sum) : 0.0;
    return rec;
}

} // namespace

SweepResult run_sweep(const ExperimentSpec& spec) {
    spec.validate();

    std::vector<SynthesisTarget> targets;
    targets.reserve(static_cast<std::size_t>(spec.sample_size));
    for (int t = 0; t < spec.sample_size; ++t) {
        targets.push_back(make_sample_target(spec, t));
    }

    SweepResult result;
    result.records.reserve(spec.ms_counts.size());
    result.runs.reserve(spec.ms_counts.size());

    const std::size_t n_targets = static_cast<std::size_t>(spec.sample_size);
    const std::size_t n_restarts = static_cast<std::size_t>(spec.optimizer.restarts);

    for (int ms_count : spec.ms_counts) {
        const AnsatzTopology topo = build_topology(spec.n_qubits, ms_count, spec.mode);

        // flattened (target, restart) job grid
        std::vector<MinimizeResult> results(n_targets * n_restarts);
        std::vector<double> walls(n_targets * n_restarts, 0.0);
        parallel_for(n_targets * n_restarts, spec.threads, [&](std::size_t job) {
            const std::size_t t = job / n_restarts;
            const std::size_t r = job % n_restarts;
            const std::uint64_t job_seed =
                sweep_job_seed(spec.optimizer.seed, ms_count, static_cast<int>(t));
            RngStream rng(job_seed, r);
            std::vector<double> x0(static_cast<std::size_t>(topo.param_count));
            for (double& v : x0) {
                v = rng.uniform(spec.optimizer.init_lo, spec.optimizer.init_hi);
            }
            CostEvaluator evaluator;
            const Objective obj = [&](const std::vector<double>& x,
                                      std::vector<double>& grad) {
                return evaluator.cost_and_gradient_into(topo, x, targets[t], grad);
            };
            const auto t0 = std::chrono::steady_clock::now();
            results[job] = minimize(obj, x0, spec.optimizer);
            walls[job] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                             .count();
        });

        std::vector<OptimizationRun> runs;
        runs.reserve(n_targets);
        for (std::size_t t = 0; t < n_targets; ++t) {
            std::vector<MinimizeResult> slice(results.begin() + static_cast<long>(t * n_restarts),
                                              results.begin() + static_cast<long>((t + 1) * n_restarts));
            std::vector<double> wall_slice(walls.begin() + static_cast<long>(t * n_restarts),
                                           walls.begin() + static_cast<long>((t + 1) * n_restarts));
            runs.push_back(assemble_run(std::move(slice), std::move(wall_slice)));
        }

        result.records.push_back(aggregate(spec, ms_count, runs));
        result.runs.push_back(std::move(runs));
    }
    return result;
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRecord>& records) {
    os << "ms_count,max_error,mean_iterations,mean_time_per_iter_s,converged,sample_size\n";
    for (const SweepRecord& r : records) {
        os << r.ms_count << ',' << format_double(r.max_error) << ','
           << format_double(r.mean_iterations) << ','
           << format_double(r.mean_time_per_iter_s) << ',' << r.converged << ','
           << r.sample_size << "\n";
    }
}

void save_sweep_csv(const std::string& path, const std::vector<SweepRecord>& records) {
    std::ofstream os(path);
    if (!os) {
        throw std::runtime_error("cannot open '" + path + "' for writing");
    }
    write_sweep_csv(os, records);
    if (!os) {
        throw std::runtime_error("write failed for '" + path + "'");
    }
}

TradeoffResult run_tradeoff(const ExperimentSpec& spec) {
    TradeoffResult out;
    out.bound = (spec.mode == SynthesisMode::Operator)
                    ? lower_bound_operator(spec.n_qubits)
                    : lower_bound_state(spec.n_qubits);
    out.plus_ten_percent = ms_count_plus_ten_percent(out.bound);

    ExperimentSpec local = spec;
    local.ms_counts = {static_cast<int>(out.bound), static_cast<int>(out.plus_ten_percent)};
    const SweepResult sweep = run_sweep(local);
    out.at_bound = sweep.records[0];
    out.at_plus_ten_percent = sweep.records[1];
    out.iteration_ratio = out.at_plus_ten_percent.mean_iterations > 0.0
                              ? out.at_bound.mean_iterations /
                                    out.at_plus_ten_percent.mean_iterations
                              : 0.0;
    return out;
}

void write_tradeoff_csv(std::ostream& os, const TradeoffResult& r) {
    os << "config,ms_count,max_error,mean_iterations,mean_time_per_iter_s,converged,sample_size\n";
    const auto row = [&os](const char* label, const SweepRecord& rec) {
        os << label << ',' << rec.ms_count << ',' << format_double(rec.max_error) << ','
           << format_double(rec.mean_iterations) << ','
           << format_double(rec.mean_time_per_iter_s) << ',' << rec.converged << ','
           << rec.sample_size << "\n";
    };
    row("bound", r.at_bound);
    row("bound_plus_10pct", r.at_plus_ten_percent);
}

void save_tradeoff_csv(const std::string& path, const TradeoffResult& r) {
    std::ofstream os(path);
    if (!os) {
        throw std::runtime_error("cannot open '" + path + "' for writing");
    }
    write_tradeoff_csv(os, r);
    if (!os) {
        throw std::runtime_error("write failed for '" + path + "'");
    }
}

} // namespace ionsynth
