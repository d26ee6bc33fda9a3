#include "ionsynth/bfgs.hpp"

#include "ionsynth/parallel.hpp"
#include "ionsynth/rng.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace ionsynth {

void OptimizerConfig::validate() const {
    if (!(grad_tol > 0.0)) {
        throw std::invalid_argument("OptimizerConfig: grad_tol must be positive");
    }
    if (max_iterations < 1) {
        throw std::invalid_argument("OptimizerConfig: max_iterations must be positive");
    }
    if (restarts < 1) {
        throw std::invalid_argument("OptimizerConfig: restarts must be positive");
    }
    if (!(wolfe_c1 > 0.0 && wolfe_c1 < wolfe_c2 && wolfe_c2 < 1.0)) {
        throw std::invalid_argument("OptimizerConfig: need 0 < c1 < c2 < 1");
    }
    if (!(init_lo < init_hi)) {
        throw std::invalid_argument("OptimizerConfig: empty init range");
    }
}

const char* termination_name(TerminationReason r) {
    switch (r) {
        case TerminationReason::Converged: return "converged";
        case TerminationReason::MaxIterations: return "max_iterations";
        case TerminationReason::LineSearchFailure: return "line_search_failure";
        case TerminationReason::Aborted: return "aborted";
    }
    return "unknown";
}

namespace {

double inf_norm(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) {
        m = std::max(m, std::abs(x));
    }
    return m;
}

double grad_norm(const std::vector<double>& v, GradNormKind kind) {
    if (kind == GradNormKind::Infinity) {
        return inf_norm(v);
    }
    double acc = 0.0;
    for (double x : v) {
        acc += x * x;
    }
    return std::sqrt(acc);
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        acc += a[i] * b[i];
    }
    return acc;
}

double norm2(const std::vector<double>& v) {
    return std::sqrt(dot(v, v));
}

bool all_finite(double f, const std::vector<double>& g) {
    if (!std::isfinite(f)) return false;
    for (double x : g) {
        if (!std::isfinite(x)) return false;
    }
    return true;
}

struct LinePoint {
    double alpha = 0.0;
    double phi = 0.0;  // objective value along the ray
    double dphi = 0.0; // directional derivative
};

// Evaluates the objective at x + alpha*p; returns false on non-finite values.
class RayEvaluator {
  public:
    RayEvaluator(const Objective& obj, const std::vector<double>& x,
                 const std::vector<double>& p)
        : obj_(obj), x_(x), p_(p), trial_(x.size()), grad_(x.size()) {}

    bool eval(double alpha, LinePoint& out) {
        for (std::size_t i = 0; i < x_.size(); ++i) {
            trial_[i] = x_[i] + alpha * p_[i];
        }
        const double f = obj_(trial_, grad_);
        out.alpha = alpha;
        out.phi = f;
        out.dphi = dot(grad_, p_);
        return all_finite(f, grad_);
    }

    const std::vector<double>& trial() const { return trial_; }
    const std::vector<double>& grad() const { return grad_; }

  private:
    const Objective& obj_;
    const std::vector<double>& x_;
    const std::vector<double>& p_;
    std::vector<double> trial_;
    std::vector<double> grad_;
};

// Cubic-interpolated trial point inside (lo.alpha, hi.alpha), safeguarded
// toward bisection when the interpolant is degenerate or too close to an end.
double interpolate(const LinePoint& lo, const LinePoint& hi) {
    const double a = lo.alpha;
    const double b = hi.alpha;
    const double d1 = lo.dphi + hi.dphi - 3.0 * (lo.phi - hi.phi) / (a - b);
    const double disc = d1 * d1 - lo.dphi * hi.dphi;
    double cand = 0.5 * (a + b);
    if (disc >= 0.0) {
        const double d2 = std::copysign(std::sqrt(disc), b - a);
        const double denom = hi.dphi - lo.dphi + 2.0 * d2;
        if (denom != 0.0) {
            cand = b - (b - a) * (hi.dphi + d2 - d1) / denom;
        }
    }
    const double left = std::min(a, b);
    const double right = std::max(a, b);
    const double width = right - left;
    if (!std::isfinite(cand) || cand < left + 0.1 * width || cand > right - 0.1 * width) {
        cand = 0.5 * (a + b);
    }
    return cand;
}

// Strong-Wolfe line search (bracket then zoom). Returns true and the
// accepted point with its gradient still live in `ray` on success.
bool line_search(RayEvaluator& ray, const LinePoint& start, double c1, double c2,
                 LinePoint& accepted) {
    constexpr int kMaxBracket = 30;
    constexpr int kMaxZoom = 50;
    const double phi0 = start.phi;
    const double dphi0 = start.dphi;

    auto armijo = [&](const LinePoint& pt) {
        return pt.phi <= phi0 + c1 * pt.alpha * dphi0;
    };
    auto curvature = [&](const LinePoint& pt) {
        return std::abs(pt.dphi) <= -c2 * dphi0;
    };

    auto zoom = [&](LinePoint lo, LinePoint hi) {
        for (int j = 0; j < kMaxZoom; ++j) {
            if (std::abs(hi.alpha - lo.alpha) <
                1e-14 * std::max({1.0, std::abs(lo.alpha), std::abs(hi.alpha)})) {
                return false;
            }
            LinePoint pt;
            const bool finite = ray.eval(interpolate(lo, hi), pt);
            if (!finite || !armijo(pt) || pt.phi >= lo.phi) {
                hi = pt;
                continue;
            }
            if (curvature(pt)) {
                accepted = pt;
                return true;
            }
            if (pt.dphi * (hi.alpha - lo.alpha) >= 0.0) {
                hi = lo;
            }
            lo = pt;
        }
        return false;
    };

    LinePoint prev{0.0, phi0, dphi0};
    double alpha = 1.0;
    for (int i = 0; i < kMaxBracket; ++i) {
        LinePoint pt;
        const bool finite = ray.eval(alpha, pt);
        if (!finite || !armijo(pt) || (i > 0 && pt.phi >= prev.phi)) {
            return zoom(prev, pt);
        }
        if (curvature(pt)) {
            accepted = pt;
            return true;
        }
        if (pt.dphi >= 0.0) {
            return zoom(pt, prev);
        }
        prev = pt;
        alpha *= 2.0;
        if (alpha > 1e10) break;
    }
    return false;
}

} // namespace

MinimizeResult minimize(const Objective& objective, const std::vector<double>& x0,
                        const OptimizerConfig& cfg, const IterationCallback& on_iteration) {
    cfg.validate();
    const std::size_t n = x0.size();

    MinimizeResult result;
    result.x = x0;

    std::vector<double> g(n);
    double f = objective(x0, g);
    if (!all_finite(f, g)) {
        result.cost = std::numeric_limits<double>::quiet_NaN();
        result.reason = TerminationReason::Aborted;
        return result;
    }
    result.cost = f;

    if (grad_norm(g, cfg.grad_norm) < cfg.grad_tol) {
        result.reason = TerminationReason::Converged;
        return result;
    }

    // dense inverse-Hessian approximation, identity-initialized
    std::vector<double> h(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        h[i * n + i] = 1.0;
    }

    std::vector<double> x = x0;
    std::vector<double> p(n), s(n), y(n), hy(n);
    bool first_update = true;
    result.reason = TerminationReason::MaxIterations;

    for (int iter = 1; iter <= cfg.max_iterations; ++iter) {
        // p = -H g
        for (std::size_t i = 0; i < n; ++i) {
            double acc = 0.0;
            const double* row = &h[i * n];
            for (std::size_t j = 0; j < n; ++j) {
                acc += row[j] * g[j];
            }
            p[i] = -acc;
        }
        double dphi0 = dot(p, g);
        if (!(dphi0 < 0.0)) {
            // curvature information went bad; fall back to steepest descent
            for (std::size_t i = 0; i < n; ++i) {
                h[i * n + i] = 1.0;
                for (std::size_t j = 0; j < n; ++j) {
                    if (i != j) h[i * n + j] = 0.0;
                }
                p[i] = -g[i];
            }
            dphi0 = -dot(g, g);
            first_update = true;
            if (dphi0 == 0.0) {
                result.reason = TerminationReason::Converged;
                break;
            }
        }

        RayEvaluator ray(objective, x, p);
        LinePoint accepted;
        if (!line_search(ray, LinePoint{0.0, f, dphi0}, cfg.wolfe_c1, cfg.wolfe_c2,
                         accepted)) {
            result.reason = TerminationReason::LineSearchFailure;
            break;
        }

        for (std::size_t i = 0; i < n; ++i) {
            s[i] = accepted.alpha * p[i];
            y[i] = ray.grad()[i] - g[i];
        }
        x = ray.trial();
        g = ray.grad();
        f = accepted.phi;
        result.x = x;
        result.cost = f;
        result.iterations = iter;

        const double gnorm = grad_norm(g, cfg.grad_norm);
        if (on_iteration) on_iteration(iter, f, gnorm);
        if (gnorm < cfg.grad_tol) {
            result.reason = TerminationReason::Converged;
            break;
        }

        const double sy = dot(s, y);
        if (sy > 1e-10 * norm2(s) * norm2(y)) {
            if (first_update) {
                // scale the initial H to the Rayleigh estimate sy/yy
                const double yy = dot(y, y);
                if (yy > 0.0) {
                    const double scale = sy / yy;
                    for (std::size_t i = 0; i < n; ++i) {
                        for (std::size_t j = 0; j < n; ++j) {
                            h[i * n + j] = (i == j) ? scale : 0.0;
                        }
                    }
                }
                first_update = false;
            }
            const double rho = 1.0 / sy;
            for (std::size_t i = 0; i < n; ++i) {
                double acc = 0.0;
                const double* row = &h[i * n];
                for (std::size_t j = 0; j < n; ++j) {
                    acc += row[j] * y[j];
                }
                hy[i] = acc;
            }
            const double yhy = dot(y, hy);
            const double c = rho * (1.0 + rho * yhy);
            for (std::size_t i = 0; i < n; ++i) {
                double* row = &h[i * n];
                const double si = s[i];
                const double hyi = hy[i];
                for (std::size_t j = 0; j < n; ++j) {
                    row[j] += c * si * s[j] - rho * (si * hy[j] + hyi * s[j]);
                }
            }
        }
    }
    return result;
}

std::string OptimizationRun::serialize() const {
    // timing fields are intentionally excluded: equality is over the
    // optimization outputs, which are deterministic per seed
    std::ostringstream os;
    char buf[64];
    auto put = [&](double v) {
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        os << buf;
    };
    os << "run best_restart=" << best_restart << " best_cost=";
    put(best_cost);
    os << " iterations=" << iterations << " converged=" << (converged ? 1 : 0) << "\n";
    os << "x";
    for (double v : best_x) {
        os << ' ';
        put(v);
    }
    os << "\n";
    for (std::size_t r = 0; r < per_restart.size(); ++r) {
        os << "restart " << r << " cost=";
        put(per_restart[r].final_cost);
        os << " iters=" << per_restart[r].iterations
           << " reason=" << termination_name(per_restart[r].reason) << "\n";
    }
    return os.str();
}

OptimizationRun assemble_run(std::vector<MinimizeResult> results,
                             std::vector<double> wall_seconds) {
    OptimizationRun run;
    run.per_restart.reserve(results.size());
    for (std::size_t r = 0; r < results.size(); ++r) {
        const double wall = r < wall_seconds.size() ? wall_seconds[r] : 0.0;
        run.per_restart.push_back(
            RestartStats{results[r].cost, results[r].iterations, results[r].reason, wall});
    }

    int best = -1;
    for (std::size_t r = 0; r < results.size(); ++r) {
        if (results[r].reason == TerminationReason::Aborted) continue;
        if (best < 0 || results[r].cost < results[static_cast<std::size_t>(best)].cost) {
            best = static_cast<int>(r);
        }
    }
    if (best < 0) {
        throw std::runtime_error("all restarts aborted");
    }
    MinimizeResult& winner = results[static_cast<std::size_t>(best)];
    run.best_x = std::move(winner.x);
    run.best_cost = winner.cost;
    run.best_restart = best;
    run.iterations = winner.iterations;
    run.converged = winner.reason == TerminationReason::Converged;
    return run;
}

OptimizationRun minimize_with_restarts(const ObjectiveFactory& make_objective,
                                       std::size_t param_count,
                                       const OptimizerConfig& cfg, int threads) {
    cfg.validate();
    const auto t_start = std::chrono::steady_clock::now();

    const std::size_t n_restarts = static_cast<std::size_t>(cfg.restarts);
    std::vector<MinimizeResult> results(n_restarts);
    std::vector<double> walls(n_restarts, 0.0);

    parallel_for(n_restarts, threads, [&](std::size_t r) {
        // restart start points depend only on (seed, restart index)
        RngStream rng(cfg.seed, r);
        std::vector<double> x0(param_count);
        for (double& v : x0) {
            v = rng.uniform(cfg.init_lo, cfg.init_hi);
        }
        const Objective obj = make_objective();
        const auto t0 = std::chrono::steady_clock::now();
        results[r] = minimize(obj, x0, cfg);
        const auto t1 = std::chrono::steady_clock::now();
        walls[r] = std::chrono::duration<double>(t1 - t0).count();
    });

    OptimizationRun run = assemble_run(std::move(results), std::move(walls));
    run.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    return run;
}

OptimizationRun minimize_with_restarts(const Objective& objective,
                                       std::size_t param_count,
                                       const OptimizerConfig& cfg) {
    return minimize_with_restarts([&objective]() { return objective; }, param_count, cfg,
                                  1);
}

} // namespace ionsynth
