#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace ionsynth {

using Cx = std::complex<double>;

// Largest qubit count for which dense matrices (targets, oracles) may be
// materialized. State-vector kernels are not bound by this.
inline constexpr int kMaxDenseQubits = 12;

inline constexpr double kPi = 3.141592653589793238462643383279502884;

bool is_finite(Cx z);

/// Normalized (when so flagged) complex amplitude vector over the 2^n basis
/// states of an n-qubit register. Qubit 0 is the most significant bit of a
/// basis index, matching the top wire of a circuit diagram.
struct StateVector {
    int n_qubits = 0;
    std::vector<Cx> amps;

    StateVector() = default;

    /// Takes ownership of `amplitudes`; rejects wrong length and NaN/Inf.
    StateVector(int n, std::vector<Cx> amplitudes);

    std::size_t dim() const { return amps.size(); }

    Cx& operator[](std::size_t i) { return amps[i]; }
    const Cx& operator[](std::size_t i) const { return amps[i]; }

    static StateVector zero_state(int n);              // |0...0>
    static StateVector basis(int n, std::size_t index); // e_index
};

/// Dense row-major complex matrix. Used for synthesis targets and test
/// oracles only, never inside the simulation hot path.
struct DenseMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<Cx> entries;

    DenseMatrix() = default;
    DenseMatrix(std::size_t r, std::size_t c); // zero-initialized
    DenseMatrix(std::size_t r, std::size_t c, std::vector<Cx> data);

    Cx& at(std::size_t i, std::size_t j) { return entries[i * cols + j]; }
    const Cx& at(std::size_t i, std::size_t j) const { return entries[i * cols + j]; }

    static DenseMatrix identity(std::size_t n);
};

/// Flat vector of real angles (radians) instantiating a topology; slots are
/// assigned left to right in circuit order.
using ParameterVector = std::vector<double>;

void require_finite(const ParameterVector& x);

} // namespace ionsynth
