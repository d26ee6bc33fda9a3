#pragma once

#include "ionsynth/ansatz.hpp"
#include "ionsynth/bfgs.hpp"
#include "ionsynth/objective.hpp"
#include "ionsynth/types.hpp"

#include <iosfwd>
#include <string>

namespace ionsynth {

/// Structured-text persistence for targets and synthesis results. Values are
/// written with 17 significant digits, which round-trips doubles exactly;
/// the grammar is documented in FORMATS.md.

struct TargetFile {
    enum class Kind : std::uint8_t { Unitary, State };

    Kind kind = Kind::State;
    int n_qubits = 0;
    std::string provenance; // free-text origin note, e.g. "haar seed=42 stream=0"
    DenseMatrix unitary;    // Unitary
    StateVector state;      // State

    SynthesisTarget to_target() const;
    SynthesisMode natural_mode() const;
};

void save_target(const std::string& path, const TargetFile& t);
void write_target(std::ostream& os, const TargetFile& t);

/// Throws std::runtime_error with a specific reason on version-tag mismatch,
/// malformed entries, non-power-of-two dimension, or a unitarity /
/// normalization residual above 1e-8.
TargetFile load_target(const std::string& path);
TargetFile read_target(std::istream& is, const std::string& origin);

/// Full configuration echo plus outcome: enough to rerun the optimization
/// and reproduce best_cost bit-for-bit.
struct ResultRecord {
    SynthesisMode mode = SynthesisMode::Operator;
    int n_qubits = 0;
    int ms_count = 0;
    std::string target_path;
    std::string target_provenance;
    OptimizerConfig cfg;
    int threads = 1;
    OptimizationRun run;
};

void save_result(const std::string& path, const ResultRecord& r);
ResultRecord load_result(const std::string& path);

/// Exact decimal formatting helpers shared by the file writers.
std::string format_double(double v);

} // namespace ionsynth
