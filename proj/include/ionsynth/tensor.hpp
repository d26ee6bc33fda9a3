#pragma once

#include "ionsynth/types.hpp"

namespace ionsynth {

/// Kronecker product: entry ((i1*b.rows+i2),(j1*b.cols+j2)) = a[i1,j1]*b[i2,j2].
/// Throws if the result would exceed the dense size limit.
DenseMatrix kron(const DenseMatrix& a, const DenseMatrix& b);

/// Conjugate transpose.
DenseMatrix dagger(const DenseMatrix& m);

DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b);

std::vector<Cx> matvec(const DenseMatrix& m, const std::vector<Cx>& v);

/// Euclidean norm sqrt(x^dag x).
double vec_norm(const StateVector& v);
double vec_norm(const std::vector<Cx>& v);

/// <a|b> = sum conj(a_i) * b_i. Throws on length mismatch.
Cx inner(const StateVector& a, const StateVector& b);
Cx inner(const std::vector<Cx>& a, const std::vector<Cx>& b);

double frobenius_norm(const DenseMatrix& m);
double frobenius_distance(const DenseMatrix& a, const DenseMatrix& b);

/// Max |(M^dag M - I)_{ij}|; zero for exactly unitary M.
double unitarity_residual(const DenseMatrix& m);

} // namespace ionsynth
