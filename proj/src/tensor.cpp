#include "ionsynth/tensor.hpp"

#include <cmath>
#include <stdexcept>

namespace ionsynth {

bool is_finite(Cx z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

static void check_entries_finite(const std::vector<Cx>& data, const char* what) {
    for (const Cx& z : data) {
        if (!is_finite(z)) {
            throw std::invalid_argument(std::string(what) + ": non-finite entry");
        }
    }
}

StateVector::StateVector(int n, std::vector<Cx> amplitudes)
    : n_qubits(n), amps(std::move(amplitudes)) {
    if (n < 0 || n > 62) {
        throw std::invalid_argument("StateVector: invalid qubit count");
    }
    if (amps.size() != (std::size_t{1} << n)) {
        throw std::invalid_argument("StateVector: length must be 2^n_qubits");
    }
    check_entries_finite(amps, "StateVector");
}

StateVector StateVector::zero_state(int n) {
    return basis(n, 0);
}

StateVector StateVector::basis(int n, std::size_t index) {
    if (n < 0 || n > 62) {
        throw std::invalid_argument("StateVector: invalid qubit count");
    }
    std::size_t dim = std::size_t{1} << n;
    if (index >= dim) {
        throw std::invalid_argument("StateVector: basis index out of range");
    }
    std::vector<Cx> a(dim, Cx{0.0, 0.0});
    a[index] = Cx{1.0, 0.0};
    StateVector s;
    s.n_qubits = n;
    s.amps = std::move(a);
    return s;
}

DenseMatrix::DenseMatrix(std::size_t r, std::size_t c)
    : rows(r), cols(c), entries(r * c, Cx{0.0, 0.0}) {
    if (r == 0 || c == 0) {
        throw std::invalid_argument("DenseMatrix: dimensions must be positive");
    }
}

DenseMatrix::DenseMatrix(std::size_t r, std::size_t c, std::vector<Cx> data)
    : rows(r), cols(c), entries(std::move(data)) {
    if (r == 0 || c == 0) {
        throw std::invalid_argument("DenseMatrix: dimensions must be positive");
    }
    if (entries.size() != r * c) {
        throw std::invalid_argument("DenseMatrix: entries length must be rows*cols");
    }
    check_entries_finite(entries, "DenseMatrix");
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m.at(i, i) = Cx{1.0, 0.0};
    }
    return m;
}

void require_finite(const ParameterVector& x) {
    for (double v : x) {
        if (!std::isfinite(v)) {
            throw std::invalid_argument("ParameterVector: non-finite entry");
        }
    }
}

DenseMatrix kron(const DenseMatrix& a, const DenseMatrix& b) {
    const std::size_t max_dim = std::size_t{1} << kMaxDenseQubits;
    if (a.rows > max_dim / b.rows || a.cols > max_dim / b.cols) {
        throw std::invalid_argument("kron: target too large for dense storage");
    }
    DenseMatrix out(a.rows * b.rows, a.cols * b.cols);
    for (std::size_t i1 = 0; i1 < a.rows; ++i1) {
        for (std::size_t j1 = 0; j1 < a.cols; ++j1) {
            const Cx f = a.at(i1, j1);
            if (f == Cx{0.0, 0.0}) continue;
            for (std::size_t i2 = 0; i2 < b.rows; ++i2) {
                for (std::size_t j2 = 0; j2 < b.cols; ++j2) {
                    out.at(i1 * b.rows + i2, j1 * b.cols + j2) = f * b.at(i2, j2);
                }
            }
        }
    }
    return out;
}

DenseMatrix dagger(const DenseMatrix& m) {
    DenseMatrix out(m.cols, m.rows);
    for (std::size_t i = 0; i < m.rows; ++i) {
        for (std::size_t j = 0; j < m.cols; ++j) {
            out.at(j, i) = std::conj(m.at(i, j));
        }
    }
    return out;
}

DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.cols != b.rows) {
        throw std::invalid_argument("matmul: inner dimension mismatch");
    }
    DenseMatrix out(a.rows, b.cols);
    for (std::size_t i = 0; i < a.rows; ++i) {
        for (std::size_t k = 0; k < a.cols; ++k) {
            const Cx f = a.at(i, k);
            if (f == Cx{0.0, 0.0}) continue;
            for (std::size_t j = 0; j < b.cols; ++j) {
                out.at(i, j) += f * b.at(k, j);
            }
        }
    }
    return out;
}

std::vector<Cx> matvec(const DenseMatrix& m, const std::vector<Cx>& v) {
    if (m.cols != v.size()) {
        throw std::invalid_argument("matvec: dimension mismatch");
    }
    std::vector<Cx> out(m.rows, Cx{0.0, 0.0});
    for (std::size_t i = 0; i < m.rows; ++i) {
        Cx acc{0.0, 0.0};
        for (std::size_t j = 0; j < m.cols; ++j) {
            acc += m.at(i, j) * v[j];
        }
        out[i] = acc;
    }
    return out;
}

double vec_norm(const std::vector<Cx>& v) {
    double acc = 0.0;
    for (const Cx& z : v) {
        acc += std::norm(z);
    }
    return std::sqrt(acc);
}

double vec_norm(const StateVector& v) {
    return vec_norm(v.amps);
}

Cx inner(const std::vector<Cx>& a, const std::vector<Cx>& b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("inner: length mismatch");
    }
    Cx acc{0.0, 0.0};
    for (std::size_t i = 0; i < a.size(); ++i) {
        acc += std::conj(a[i]) * b[i];
    }
    return acc;
}

Cx inner(const StateVector& a, const StateVector& b) {
    return inner(a.amps, b.amps);
}

double frobenius_norm(const DenseMatrix& m) {
    double acc = 0.0;
    for (const Cx& z : m.entries) {
        acc += std::norm(z);
    }
    return std::sqrt(acc);
}

double frobenius_distance(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.rows != b.rows || a.cols != b.cols) {
        throw std::invalid_argument("frobenius_distance: shape mismatch");
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < a.entries.size(); ++i) {
        acc += std::norm(a.entries[i] - b.entries[i]);
    }
    return std::sqrt(acc);
}

double unitarity_residual(const DenseMatrix& m) {
    if (m.rows != m.cols) {
        throw std::invalid_argument("unitarity_residual: matrix must be square");
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < m.cols; ++i) {
        for (std::size_t j = 0; j < m.cols; ++j) {
            Cx acc{0.0, 0.0};
            for (std::size_t k = 0; k < m.rows; ++k) {
                acc += std::conj(m.at(k, i)) * m.at(k, j);
            }
            if (i == j) acc -= Cx{1.0, 0.0};
            worst = std::max(worst, std::abs(acc));
        }
    }
    return worst;
}

} // namespace ionsynth
