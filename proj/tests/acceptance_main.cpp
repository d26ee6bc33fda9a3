// Acceptance suite: one pass/fail line per criterion, exit code = number of
// failed criteria. Tolerances are pinned in code; every experiment is seeded
// and deterministic (wall-clock columns aside).
//
// Known expected failure: criterion 4's second clause asserts that EVERY
// 2-qubit Haar target stays above 1e-2 with two entangling gates. The
// parameter count at two gates (17) already exceeds dim U(4) = 16, and the
// measured distance-to-circuit distribution is spread over [~1e-5, ~0.2], so
// roughly half the sample sits below 1e-2. The clause is checked exactly as
// stated and reported honestly; the non-universality evidence (sample maximum
// far above threshold) is printed alongside.

#include "ionsynth/ansatz.hpp"
#include "ionsynth/bfgs.hpp"
#include "ionsynth/gates.hpp"
#include "ionsynth/haar.hpp"
#include "ionsynth/objective.hpp"
#include "ionsynth/rng.hpp"
#include "ionsynth/sweep.hpp"
#include "ionsynth/synthesis.hpp"
#include "ionsynth/target_io.hpp"
#include "ionsynth/tensor.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

using namespace ionsynth;

namespace {

int g_failures = 0;

int worker_threads() {
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 2 : static_cast<int>(hw);
}

void criterion(const std::string& name, const std::function<bool(std::string&)>& body) {
    std::string detail;
    bool ok = false;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("[%s] %s (%.1fs)%s%s\n", ok ? "PASS" : "FAIL", name.c_str(), secs,
                detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
    if (!ok) ++g_failures;
}

ParameterVector random_params(int count, std::uint64_t seed) {
    RngStream rng(seed, 0);
    ParameterVector x(static_cast<std::size_t>(count));
    for (double& v : x) {
        v = rng.uniform(0.0, 2.0 * kPi);
    }
    return x;
}

// best cost over `restarts` seeded restarts for one target
OptimizationRun optimize(const AnsatzTopology& topo, const SynthesisTarget& target,
                         std::uint64_t seed, int restarts) {
    OptimizerConfig cfg;
    cfg.restarts = restarts;
    cfg.seed = seed;
    return synthesize_target(topo, target, cfg, worker_threads());
}

bool criterion_gradient(std::string& detail) {
    double worst = 0.0;
    RngStream pick(20240, 0);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 1 + static_cast<int>(pick.next_u64() % 4);
        const int k = static_cast<int>(pick.next_u64() % 6);
        const SynthesisMode mode =
            (trial % 2 == 0) ? SynthesisMode::Operator : SynthesisMode::StatePreparation;
        const AnsatzTopology topo = build_topology(n, k, mode);
        const SynthesisTarget target =
            mode == SynthesisMode::Operator
                ? SynthesisTarget::from_unitary(
                      haar_unitary(n, 4000, static_cast<std::uint64_t>(trial)))
                : SynthesisTarget::from_state(
                      haar_state(n, 4000, static_cast<std::uint64_t>(trial)));
        const ParameterVector x =
            random_params(topo.param_count, 7000 + static_cast<std::uint64_t>(trial));

        CostEvaluator ev;
        const GradientResult gr = ev.cost_and_gradient(topo, x, target);
        const double h = 1e-6;
        for (int j = 0; j < topo.param_count; ++j) {
            ParameterVector xp = x;
            ParameterVector xm = x;
            xp[static_cast<std::size_t>(j)] += h;
            xm[static_cast<std::size_t>(j)] -= h;
            const double fd = (ev.cost(topo, xp, target) - ev.cost(topo, xm, target)) / (2 * h);
            worst = std::max(worst, std::abs(fd - gr.gradient[static_cast<std::size_t>(j)]));
        }
    }
    std::ostringstream os;
    os << "max |analytic - FD| = " << worst;
    detail = os.str();
    return worst < 1e-6;
}

bool criterion_ms_diagonalization(std::string& detail) {
    double worst = 0.0;
    RngStream rng(555, 0);
    for (int n = 1; n <= 4; ++n) {
        // H^{xn} built independently by kron
        const double s = 1.0 / std::sqrt(2.0);
        const DenseMatrix h2(2, 2, {Cx{s, 0}, Cx{s, 0}, Cx{s, 0}, Cx{-s, 0}});
        DenseMatrix hn = h2;
        for (int q = 1; q < n; ++q) {
            hn = kron(hn, h2);
        }
        const std::size_t dim = std::size_t{1} << n;
        for (int trial = 0; trial < 20; ++trial) {
            const double theta = rng.uniform(-2.0 * kPi, 2.0 * kPi);
            DenseMatrix d(dim, dim);
            for (std::size_t b = 0; b < dim; ++b) {
                const double w = static_cast<double>(n - 2 * hamming_weight(b));
                d.at(b, b) = std::polar(1.0, -theta * w * w / 4.0);
            }
            const DenseMatrix oracle = matmul(hn, matmul(d, hn));
            const DenseMatrix impl = gate_dense(make_ms(n, 0), {theta});
            worst = std::max(worst, frobenius_distance(impl, oracle));
        }
    }
    std::ostringstream os;
    os << "max Frobenius distance = " << worst;
    detail = os.str();
    return worst < 1e-12;
}

bool criterion_bounds(std::string& detail) {
    const bool ok = lower_bound_operator(2) == 2 && lower_bound_operator(3) == 8 &&
                    lower_bound_operator(4) == 27 && lower_bound_state(3) == 2 &&
                    lower_bound_state(4) == 3 && lower_bound_state(5) == 5 &&
                    lower_bound_state(7) == 16 &&
                    dof_count(3, 2, SynthesisMode::Operator) == 24;
    detail = "operator 2->2 3->8 4->27; state 3->2 4->3 5->5 7->16; dof(3,2)=24";
    return ok;
}

bool criterion_two_qubit(std::string& detail) {
    const int sample = 50;
    const int restarts = 20;
    const AnsatzTopology t3 = build_topology(2, 3, SynthesisMode::Operator);
    const AnsatzTopology t2 = build_topology(2, 2, SynthesisMode::Operator);

    double max_k3 = 0.0;
    double max_k2 = 0.0;
    double min_k2 = 1e300;
    int below_threshold = 0;
    for (int t = 0; t < sample; ++t) {
        const SynthesisTarget target = SynthesisTarget::from_unitary(
            haar_unitary(2, 1, static_cast<std::uint64_t>(t)));
        const OptimizationRun r3 =
            optimize(t3, target, sweep_job_seed(1, 3, t), restarts);
        const OptimizationRun r2 =
            optimize(t2, target, sweep_job_seed(1, 2, t), restarts);
        max_k3 = std::max(max_k3, r3.best_cost);
        max_k2 = std::max(max_k2, r2.best_cost);
        min_k2 = std::min(min_k2, r2.best_cost);
        if (r2.best_cost <= 1e-2) ++below_threshold;
    }
    const bool k3_ok = max_k3 < 1e-6;
    const bool k2_ok = below_threshold == 0;
    std::ostringstream os;
    os << "k=3 max error " << max_k3 << (k3_ok ? " < 1e-6 ok" : " FAILS 1e-6")
       << "; k=2 per-target floors in [" << min_k2 << ", " << max_k2 << "], "
       << below_threshold << "/" << sample << " below 1e-2"
       << "; non-universality evidence: k=2 sample max " << max_k2 << " >> 1e-2";
    detail = os.str();
    return k3_ok && k2_ok;
}

bool criterion_three_qubit(std::string& detail) {
    const int sample = 10;
    const int restarts = 20;
    const AnsatzTopology t8 = build_topology(3, 8, SynthesisMode::Operator);
    const AnsatzTopology t7 = build_topology(3, 7, SynthesisMode::Operator);

    double max_k8 = 0.0;
    double max_k7 = 0.0;
    for (int t = 0; t < sample; ++t) {
        const SynthesisTarget target = SynthesisTarget::from_unitary(
            haar_unitary(3, 1, static_cast<std::uint64_t>(t)));
        max_k8 = std::max(
            max_k8, optimize(t8, target, sweep_job_seed(1, 8, t), restarts).best_cost);
        max_k7 = std::max(
            max_k7, optimize(t7, target, sweep_job_seed(1, 7, t), restarts).best_cost);
    }
    std::ostringstream os;
    os << "k=8 max error " << max_k8 << "; k=7 stays at " << max_k7;
    detail = os.str();
    return max_k8 < 1e-6 && max_k7 > 1e-3;
}

bool criterion_state_preparation(std::string& detail) {
    const int sample = 20;
    const int restarts = 10;
    std::ostringstream os;
    bool ok = true;
    for (const auto& [n, k] : std::vector<std::pair<int, int>>{{3, 2}, {4, 3}, {5, 5}}) {
        const AnsatzTopology at_bound = build_topology(n, k, SynthesisMode::StatePreparation);
        const AnsatzTopology below = build_topology(n, k - 1, SynthesisMode::StatePreparation);
        double max_bound = 0.0;
        double max_below = 0.0;
        for (int t = 0; t < sample; ++t) {
            const SynthesisTarget target = SynthesisTarget::from_state(
                haar_state(n, 1, static_cast<std::uint64_t>(t)));
            max_bound = std::max(
                max_bound, optimize(at_bound, target, sweep_job_seed(1, k, t), restarts).best_cost);
            max_below = std::max(
                max_below,
                optimize(below, target, sweep_job_seed(1, k - 1, t), restarts).best_cost);
        }
        ok = ok && max_bound < 1e-6 && max_below > 1e-3;
        os << "n=" << n << ": k=" << k << " max " << max_bound << ", k=" << k - 1
           << " max " << max_below << "; ";
    }
    detail = os.str();
    return ok;
}

bool criterion_iteration_peak(std::string& detail) {
    ExperimentSpec spec;
    spec.mode = SynthesisMode::StatePreparation;
    spec.n_qubits = 3;
    spec.ms_counts = {0, 1, 2, 3, 4, 5, 6};
    spec.sample_size = 20;
    spec.optimizer.restarts = 10;
    spec.optimizer.seed = 1;
    spec.threads = worker_threads();
    const SweepResult r = run_sweep(spec);

    double peak_iters = -1.0;
    int peak_k = -1;
    double iters_at_2 = -1.0;
    double iters_at_4 = -1.0;
    std::ostringstream os;
    for (const SweepRecord& rec : r.records) {
        const bool converging = rec.max_error < 1e-6;
        os << "k=" << rec.ms_count << (converging ? "*" : "") << ":"
           << rec.mean_iterations << " ";
        if (rec.ms_count == 2) iters_at_2 = rec.mean_iterations;
        if (rec.ms_count == 4) iters_at_4 = rec.mean_iterations;
        if (converging && rec.mean_iterations > peak_iters) {
            peak_iters = rec.mean_iterations;
            peak_k = rec.ms_count;
        }
    }
    detail = "mean iterations (converging marked *): " + os.str();
    return peak_k == 2 && iters_at_4 >= 0.0 && iters_at_4 < iters_at_2;
}

bool criterion_tradeoff(std::string& detail) {
    ExperimentSpec spec;
    spec.mode = SynthesisMode::StatePreparation;
    spec.n_qubits = 4; // state bound 3, +10% rounds up to 4
    spec.ms_counts = {0};
    spec.sample_size = 20;
    spec.optimizer.restarts = 10;
    spec.optimizer.seed = 1;
    spec.threads = worker_threads();
    const TradeoffResult r = run_tradeoff(spec);

    std::ostringstream os;
    os << "k=" << r.bound << ": " << r.at_bound.mean_iterations << " iters, max "
       << r.at_bound.max_error << "; k=" << r.plus_ten_percent << ": "
       << r.at_plus_ten_percent.mean_iterations << " iters, max "
       << r.at_plus_ten_percent.max_error;
    detail = os.str();
    return r.plus_ten_percent == r.bound + 1 &&
           r.at_plus_ten_percent.mean_iterations <= r.at_bound.mean_iterations &&
           r.at_bound.max_error < 1e-6 && r.at_plus_ten_percent.max_error < 1e-6;
}

bool criterion_haar(std::string& detail) {
    double worst_residual = 0.0;
    double mean_err_worst = 0.0;
    for (int n : {1, 2}) {
        double acc = 0.0;
        const int draws = 10000;
        for (int i = 0; i < draws; ++i) {
            const DenseMatrix u = haar_unitary(n, 777, static_cast<std::uint64_t>(i));
            worst_residual = std::max(worst_residual, unitarity_residual(u));
            acc += std::norm(u.at(0, 0));
        }
        const double expect = 1.0 / static_cast<double>(1 << n);
        mean_err_worst = std::max(mean_err_worst, std::abs(acc / draws - expect));
    }

    // KS invariance at n=1: |(VU)_00|^2 vs |U_00|^2
    const int draws = 10000;
    const DenseMatrix v = haar_unitary(1, 31337);
    std::vector<double> plain;
    std::vector<double> rotated;
    plain.reserve(draws);
    rotated.reserve(draws);
    for (int i = 0; i < draws; ++i) {
        const DenseMatrix u = haar_unitary(1, 556, static_cast<std::uint64_t>(i));
        plain.push_back(std::norm(u.at(0, 0)));
        rotated.push_back(std::norm(matmul(v, u).at(0, 0)));
    }
    std::sort(plain.begin(), plain.end());
    std::sort(rotated.begin(), rotated.end());
    double ks = 0.0;
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < plain.size() && j < rotated.size()) {
        if (plain[i] <= rotated[j]) {
            ++i;
        } else {
            ++j;
        }
        ks = std::max(ks, std::abs(static_cast<double>(i) - static_cast<double>(j)) /
                              static_cast<double>(draws));
    }
    const double ks_critical = 1.628 * std::sqrt(2.0 / static_cast<double>(draws));

    std::ostringstream os;
    os << "worst residual " << worst_residual << "; |E|U00|^2 - 2^-n| <= " << mean_err_worst
       << "; KS " << ks << " (critical " << ks_critical << ")";
    detail = os.str();
    return worst_residual < 1e-12 && mean_err_worst < 0.02 && ks < ks_critical;
}

bool criterion_optimizer(std::string& detail) {
    const Objective rosenbrock = [](const std::vector<double>& x, std::vector<double>& g) {
        const double a = 1.0 - x[0];
        const double b = x[1] - x[0] * x[0];
        g[0] = -2.0 * a - 400.0 * x[0] * b;
        g[1] = 200.0 * b;
        return a * a + 100.0 * b * b;
    };
    OptimizerConfig cfg;
    cfg.grad_tol = 1e-8;
    const MinimizeResult r = minimize(rosenbrock, {-1.2, 1.0}, cfg);
    const bool rosen_ok =
        std::abs(r.x[0] - 1.0) < 1e-6 && std::abs(r.x[1] - 1.0) < 1e-6;

    // determinism across repeated runs and thread counts
    const AnsatzTopology topo = build_topology(2, 1, SynthesisMode::StatePreparation);
    const SynthesisTarget target = SynthesisTarget::from_state(haar_state(2, 90));
    OptimizerConfig scfg;
    scfg.restarts = 8;
    scfg.seed = 11;
    const std::string run1 = synthesize_target(topo, target, scfg, 1).serialize();
    const std::string run1b = synthesize_target(topo, target, scfg, 1).serialize();
    const std::string run2 = synthesize_target(topo, target, scfg, 2).serialize();
    const std::string run4 = synthesize_target(topo, target, scfg, 4).serialize();
    const bool deterministic = run1 == run1b && run1 == run2 && run1 == run4;

    std::ostringstream os;
    os << "rosenbrock -> (" << r.x[0] << ", " << r.x[1] << ") in " << r.iterations
       << " iters; determinism " << (deterministic ? "ok" : "BROKEN");
    detail = os.str();
    return rosen_ok && deterministic;
}

bool criterion_round_trip(std::string& detail) {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "ionsynth_acceptance_io";
    fs::create_directories(dir);

    bool ok = true;
    std::ostringstream os;

    // targets: value-exact round trip
    TargetFile tf;
    tf.kind = TargetFile::Kind::Unitary;
    tf.n_qubits = 3;
    tf.provenance = "haar seed=21 stream=0";
    tf.unitary = haar_unitary(3, 21);
    const std::string upath = (dir / "u.target").string();
    save_target(upath, tf);
    ok = ok && load_target(upath).unitary.entries == tf.unitary.entries;

    TargetFile sf;
    sf.kind = TargetFile::Kind::State;
    sf.n_qubits = 4;
    sf.state = haar_state(4, 22);
    const std::string spath = (dir / "s.target").string();
    save_target(spath, sf);
    ok = ok && load_target(spath).state.amps == sf.state.amps;
    os << "targets exact: " << (ok ? "yes" : "NO");

    // results: replay reproduces best_cost bitwise
    OptimizerConfig cfg;
    cfg.restarts = 5;
    cfg.seed = 77;
    const AnsatzTopology topo = build_topology(3, 2, SynthesisMode::StatePreparation);
    TargetFile st;
    st.kind = TargetFile::Kind::State;
    st.n_qubits = 3;
    st.state = haar_state(3, 23);
    const std::string tpath = (dir / "replay.target").string();
    save_target(tpath, st);

    ResultRecord rec;
    rec.mode = SynthesisMode::StatePreparation;
    rec.n_qubits = 3;
    rec.ms_count = 2;
    rec.target_path = tpath;
    rec.cfg = cfg;
    rec.threads = worker_threads();
    rec.run = synthesize_target(topo, load_target(tpath).to_target(), cfg, rec.threads);
    const std::string rpath = (dir / "replay.result").string();
    save_result(rpath, rec);

    const ResultRecord stored = load_result(rpath);
    const OptimizationRun replayed = synthesize_target(
        build_topology(stored.n_qubits, stored.ms_count, stored.mode),
        load_target(stored.target_path).to_target(), stored.cfg, stored.threads);
    const bool replay_ok = replayed.best_cost == stored.run.best_cost;
    ok = ok && replay_ok;
    os << "; replay bit-identical: " << (replay_ok ? "yes" : "NO");

    fs::remove_all(dir);
    detail = os.str();
    return ok;
}

} // namespace

int main() {
    std::printf("ionsynth acceptance suite (threads=%d)\n", worker_threads());
    criterion("C1  gradient matches central finite differences (50 instances, <1e-6)",
              criterion_gradient);
    criterion("C2  MS diagonalization identity (n=1..4, 20 angles, <1e-12)",
              criterion_ms_diagonalization);
    criterion("C3  lower-bound and DOF tables", criterion_bounds);
    criterion("C4  2-qubit operators: k=3 universal (<1e-6), k=2 every target >1e-2",
              criterion_two_qubit);
    criterion("C5  3-qubit operators: k=8 universal (<1e-6), k=7 above 1e-3",
              criterion_three_qubit);
    criterion("C6  state preparation at the bound (n=3,4,5), bound-1 fails",
              criterion_state_preparation);
    criterion("C7  iteration count peaks at the experimental bound (n=3 states)",
              criterion_iteration_peak);
    criterion("C8  +10% MS gates do not cost iterations (n=4 states)",
              criterion_tradeoff);
    criterion("C9  Haar sampler: unitarity, moments, KS invariance", criterion_haar);
    criterion("C10 optimizer: Rosenbrock and seeded determinism", criterion_optimizer);
    criterion("C11 round-trip persistence and bit-identical replay", criterion_round_trip);

    if (g_failures == 0) {
        std::printf("all criteria passed\n");
    } else {
        std::printf("%d criterion(s) failed\n", g_failures);
    }
    return g_failures;
}
