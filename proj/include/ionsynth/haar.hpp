#pragma once

#include "ionsynth/rng.hpp"
#include "ionsynth/types.hpp"

namespace ionsynth {

/// Uniform (Haar-measure) random unitary on n qubits: a 2^n x 2^n matrix of
/// independent standard complex gaussians is QR-factorized and Q's columns
/// are rescaled by the phases of R's diagonal. Without that rescaling plain
/// QR output is not Haar-distributed.
DenseMatrix haar_unitary(int n_qubits, RngStream& rng);
DenseMatrix haar_unitary(int n_qubits, std::uint64_t seed, std::uint64_t stream = 0);

/// Sphere-uniform random pure state (normalized complex gaussian vector).
StateVector haar_state(int n_qubits, RngStream& rng);
StateVector haar_state(int n_qubits, std::uint64_t seed, std::uint64_t stream = 0);

} // namespace ionsynth
