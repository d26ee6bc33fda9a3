#include "ionsynth/target_io.hpp"

#include "ionsynth/tensor.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ionsynth {

namespace {

constexpr const char* kTargetTag = "ionsynth-target v1";
constexpr const char* kResultTag = "ionsynth-result v1";

[[noreturn]] void fail(const std::string& origin, const std::string& why) {
    throw std::runtime_error(origin + ": " + why);
}

double parse_double(const std::string& s, const std::string& origin) {
    const char* begin = s.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin) {
        fail(origin, "malformed number '" + s + "'");
    }
    return v;
}

long long parse_int(const std::string& s, const std::string& origin) {
    const char* begin = s.c_str();
    char* end = nullptr;
    const long long v = std::strtoll(begin, &end, 10);
    if (end == begin) {
        fail(origin, "malformed integer '" + s + "'");
    }
    return v;
}

std::uint64_t parse_u64(const std::string& s, const std::string& origin) {
    const char* begin = s.c_str();
    char* end = nullptr;
    const std::uint64_t v = std::strtoull(begin, &end, 10);
    if (end == begin) {
        fail(origin, "malformed integer '" + s + "'");
    }
    return v;
}

Cx parse_entry(const std::string& line, const std::string& origin) {
    std::istringstream is(line);
    double re = 0.0;
    double im = 0.0;
    if (!(is >> re >> im)) {
        fail(origin, "malformed entry line '" + line + "'");
    }
    std::string extra;
    if (is >> extra) {
        fail(origin, "trailing tokens in entry line '" + line + "'");
    }
    if (!std::isfinite(re) || !std::isfinite(im)) {
        fail(origin, "non-finite entry");
    }
    return Cx{re, im};
}

// "key: value" split; value may contain spaces.
bool split_kv(const std::string& line, std::string& key, std::string& value) {
    const auto pos = line.find(": ");
    if (pos == std::string::npos) {
        if (!line.empty() && line.back() == ':') {
            key = line.substr(0, line.size() - 1);
            value.clear();
            return true;
        }
        return false;
    }
    key = line.substr(0, pos);
    value = line.substr(pos + 2);
    return true;
}

std::string next_line(std::istream& is, const std::string& origin) {
    std::string line;
    if (!std::getline(is, line)) {
        fail(origin, "unexpected end of file");
    }
    if (!line.empty() && line.back() == '\r') {
        line.pop_back();
    }
    return line;
}

int qubits_for_entry_count(std::size_t entries, bool square, const std::string& origin) {
    // states store 2^n entries, matrices 4^n
    std::size_t dim = entries;
    if (square) {
        std::size_t root = 1;
        while (root * root < entries) ++root;
        if (root * root != entries) {
            fail(origin, "matrix entry count is not a perfect square");
        }
        dim = root;
    }
    int n = 0;
    while ((std::size_t{1} << n) < dim) ++n;
    if ((std::size_t{1} << n) != dim || n == 0) {
        fail(origin, "dimension " + std::to_string(dim) + " is not a power of two (>= 2)");
    }
    return n;
}

} // namespace

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

SynthesisMode TargetFile::natural_mode() const {
    return kind == Kind::Unitary ? SynthesisMode::Operator
                                 : SynthesisMode::StatePreparation;
}

SynthesisTarget TargetFile::to_target() const {
    if (kind == Kind::Unitary) {
        return SynthesisTarget::from_unitary(unitary);
    }
    return SynthesisTarget::from_state(state);
}

void write_target(std::ostream& os, const TargetFile& t) {
    os << kTargetTag << "\n";
    os << "kind: " << (t.kind == TargetFile::Kind::Unitary ? "unitary" : "state") << "\n";
    os << "qubits: " << t.n_qubits << "\n";
    if (!t.provenance.empty()) {
        os << "provenance: " << t.provenance << "\n";
    }
    const std::vector<Cx>& data =
        (t.kind == TargetFile::Kind::Unitary) ? t.unitary.entries : t.state.amps;
    os << "entries: " << data.size() << "\n";
    for (const Cx& z : data) {
        os << format_double(z.real()) << ' ' << format_double(z.imag()) << "\n";
    }
}

void save_target(const std::string& path, const TargetFile& t) {
    std::ofstream os(path);
    if (!os) {
        throw std::runtime_error("cannot open '" + path + "' for writing");
    }
    write_target(os, t);
    if (!os) {
        throw std::runtime_error("write failed for '" + path + "'");
    }
}

TargetFile read_target(std::istream& is, const std::string& origin) {
    if (next_line(is, origin) != kTargetTag) {
        fail(origin, std::string("version tag mismatch (expected '") + kTargetTag + "')");
    }

    TargetFile t;
    bool have_kind = false;
    long long declared_qubits = -1;
    long long entry_count = -1;
    for (;;) {
        const std::string line = next_line(is, origin);
        std::string key, value;
        if (!split_kv(line, key, value)) {
            fail(origin, "expected 'key: value', got '" + line + "'");
        }
        if (key == "kind") {
            if (value == "unitary") {
                t.kind = TargetFile::Kind::Unitary;
            } else if (value == "state") {
                t.kind = TargetFile::Kind::State;
            } else {
                fail(origin, "unknown kind '" + value + "'");
            }
            have_kind = true;
        } else if (key == "qubits") {
            declared_qubits = parse_int(value, origin);
        } else if (key == "provenance") {
            t.provenance = value;
        } else if (key == "entries") {
            entry_count = parse_int(value, origin);
            break;
        } else {
            fail(origin, "unknown header key '" + key + "'");
        }
    }
    if (!have_kind) {
        fail(origin, "missing 'kind' header");
    }
    if (entry_count <= 0) {
        fail(origin, "bad entry count");
    }

    std::vector<Cx> data;
    data.reserve(static_cast<std::size_t>(entry_count));
    for (long long i = 0; i < entry_count; ++i) {
        data.push_back(parse_entry(next_line(is, origin), origin));
    }

    const bool square = t.kind == TargetFile::Kind::Unitary;
    t.n_qubits = qubits_for_entry_count(data.size(), square, origin);
    if (declared_qubits >= 0 && declared_qubits != t.n_qubits) {
        fail(origin, "qubits header disagrees with entry count");
    }

    if (t.kind == TargetFile::Kind::Unitary) {
        const std::size_t dim = std::size_t{1} << t.n_qubits;
        t.unitary = DenseMatrix(dim, dim, std::move(data));
        const double residual = unitarity_residual(t.unitary);
        if (residual > 1e-8) {
            fail(origin, "matrix is not unitary (residual " + format_double(residual) + ")");
        }
    } else {
        t.state = StateVector(t.n_qubits, std::move(data));
        const double err = std::abs(vec_norm(t.state) - 1.0);
        if (err > 1e-8) {
            fail(origin, "state is not normalized (residual " + format_double(err) + ")");
        }
    }
    return t;
}

TargetFile load_target(const std::string& path) {
    std::ifstream is(path);
    if (!is) {
        throw std::runtime_error("cannot open target file '" + path + "'");
    }
    return read_target(is, path);
}

void save_result(const std::string& path, const ResultRecord& r) {
    std::ofstream os(path);
    if (!os) {
        throw std::runtime_error("cannot open '" + path + "' for writing");
    }
    os << kResultTag << "\n";
    os << "mode: " << mode_name(r.mode) << "\n";
    os << "qubits: " << r.n_qubits << "\n";
    os << "ms_count: " << r.ms_count << "\n";
    os << "layout: " << kParamLayoutVersion << "\n";
    os << "target_path: " << r.target_path << "\n";
    if (!r.target_provenance.empty()) {
        os << "target_provenance: " << r.target_provenance << "\n";
    }
    os << "grad_tol: " << format_double(r.cfg.grad_tol) << "\n";
    os << "grad_norm: " << (r.cfg.grad_norm == GradNormKind::Infinity ? "inf" : "l2")
       << "\n";
    os << "max_iter: " << r.cfg.max_iterations << "\n";
    os << "restarts: " << r.cfg.restarts << "\n";
    os << "seed: " << r.cfg.seed << "\n";
    os << "wolfe_c1: " << format_double(r.cfg.wolfe_c1) << "\n";
    os << "wolfe_c2: " << format_double(r.cfg.wolfe_c2) << "\n";
    os << "init_lo: " << format_double(r.cfg.init_lo) << "\n";
    os << "init_hi: " << format_double(r.cfg.init_hi) << "\n";
    os << "threads: " << r.threads << "\n";
    os << "best_cost: " << format_double(r.run.best_cost) << "\n";
    os << "best_restart: " << r.run.best_restart << "\n";
    os << "iterations: " << r.run.iterations << "\n";
    os << "converged: " << (r.run.converged ? 1 : 0) << "\n";
    os << "wall_seconds: " << format_double(r.run.wall_seconds) << "\n";
    os << "params: " << r.run.best_x.size() << "\n";
    for (double v : r.run.best_x) {
        os << format_double(v) << "\n";
    }
    os << "per_restart: " << r.run.per_restart.size() << "\n";
    for (std::size_t i = 0; i < r.run.per_restart.size(); ++i) {
        const RestartStats& st = r.run.per_restart[i];
        os << i << ' ' << format_double(st.final_cost) << ' ' << st.iterations << ' '
           << termination_name(st.reason) << ' ' << format_double(st.wall_seconds)
           << "\n";
    }
    os << "end\n";
    if (!os) {
        throw std::runtime_error("write failed for '" + path + "'");
    }
}

namespace {

TerminationReason parse_reason(const std::string& s, const std::string& origin) {
    if (s == "converged") return TerminationReason::Converged;
    if (s == "max_iterations") return TerminationReason::MaxIterations;
    if (s == "line_search_failure") return TerminationReason::LineSearchFailure;
    if (s == "aborted") return TerminationReason::Aborted;
    fail(origin, "unknown termination reason '" + s + "'");
}

} // namespace

ResultRecord load_result(const std::string& path) {
    std::ifstream is(path);
    if (!is) {
        throw std::runtime_error("cannot open result file '" + path + "'");
    }
    const std::string& origin = path;
    if (next_line(is, origin) != kResultTag) {
        fail(origin, std::string("version tag mismatch (expected '") + kResultTag + "')");
    }

    ResultRecord r;
    long long param_count = -1;
    for (;;) {
        const std::string line = next_line(is, origin);
        std::string key, value;
        if (!split_kv(line, key, value)) {
            fail(origin, "expected 'key: value', got '" + line + "'");
        }
        if (key == "mode") {
            r.mode = parse_mode(value);
        } else if (key == "qubits") {
            r.n_qubits = static_cast<int>(parse_int(value, origin));
        } else if (key == "ms_count") {
            r.ms_count = static_cast<int>(parse_int(value, origin));
        } else if (key == "layout") {
            if (value != kParamLayoutVersion) {
                fail(origin, "parameter layout version mismatch ('" + value + "')");
            }
        } else if (key == "target_path") {
            r.target_path = value;
        } else if (key == "target_provenance") {
            r.target_provenance = value;
        } else if (key == "grad_tol") {
            r.cfg.grad_tol = parse_double(value, origin);
        } else if (key == "grad_norm") {
            if (value == "inf") {
                r.cfg.grad_norm = GradNormKind::Infinity;
            } else if (value == "l2") {
                r.cfg.grad_norm = GradNormKind::Euclidean;
            } else {
                fail(origin, "unknown grad_norm '" + value + "'");
            }
        } else if (key == "max_iter") {
            r.cfg.max_iterations = static_cast<int>(parse_int(value, origin));
        } else if (key == "restarts") {
            r.cfg.restarts = static_cast<int>(parse_int(value, origin));
        } else if (key == "seed") {
            r.cfg.seed = parse_u64(value, origin);
        } else if (key == "wolfe_c1") {
            r.cfg.wolfe_c1 = parse_double(value, origin);
        } else if (key == "wolfe_c2") {
            r.cfg.wolfe_c2 = parse_double(value, origin);
        } else if (key == "init_lo") {
            r.cfg.init_lo = parse_double(value, origin);
        } else if (key == "init_hi") {
            r.cfg.init_hi = parse_double(value, origin);
        } else if (key == "threads") {
            r.threads = static_cast<int>(parse_int(value, origin));
        } else if (key == "best_cost") {
            r.run.best_cost = parse_double(value, origin);
        } else if (key == "best_restart") {
            r.run.best_restart = static_cast<int>(parse_int(value, origin));
        } else if (key == "iterations") {
            r.run.iterations = static_cast<int>(parse_int(value, origin));
        } else if (key == "converged") {
            r.run.converged = parse_int(value, origin) != 0;
        } else if (key == "wall_seconds") {
            r.run.wall_seconds = parse_double(value, origin);
        } else if (key == "params") {
            param_count = parse_int(value, origin);
            break;
        } else {
            fail(origin, "unknown header key '" + key + "'");
        }
    }
    if (param_count < 0) {
        fail(origin, "missing params section");
    }

    r.run.best_x.resize(static_cast<std::size_t>(param_count));
    for (long long i = 0; i < param_count; ++i) {
        r.run.best_x[static_cast<std::size_t>(i)] =
            parse_double(next_line(is, origin), origin);
    }

    const std::string pr_line = next_line(is, origin);
    std::string key, value;
    if (!split_kv(pr_line, key, value) || key != "per_restart") {
        fail(origin, "expected per_restart section");
    }
    const long long n_restarts = parse_int(value, origin);
    r.run.per_restart.resize(static_cast<std::size_t>(n_restarts));
    for (long long i = 0; i < n_restarts; ++i) {
        std::istringstream ls(next_line(is, origin));
        long long idx = 0;
        std::string cost_s, iters_s, reason_s, wall_s;
        if (!(ls >> idx >> cost_s >> iters_s >> reason_s >> wall_s) || idx != i) {
            fail(origin, "malformed per_restart line");
        }
        RestartStats st;
        st.final_cost = parse_double(cost_s, origin);
        st.iterations = static_cast<int>(parse_int(iters_s, origin));
        st.reason = parse_reason(reason_s, origin);
        st.wall_seconds = parse_double(wall_s, origin);
        r.run.per_restart[static_cast<std::size_t>(i)] = st;
    }
    if (next_line(is, origin) != "end") {
        fail(origin, "missing end marker");
    }
    return r;
}

} // namespace ionsynth
