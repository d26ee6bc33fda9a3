#include "ionsynth/haar.hpp"

#include "ionsynth/tensor.hpp"

#include <cmath>
#include <stdexcept>

namespace ionsynth {

namespace {

DenseMatrix ginibre(std::size_t dim, RngStream& rng) {
    DenseMatrix g(dim, dim);
    for (Cx& z : g.entries) {
        z = Cx{rng.gaussian(), rng.gaussian()};
    }
    return g;
}

// Householder QR in place: returns the reflector vectors and leaves R in `a`.
// Reflector k maps column k of the trailing block onto a multiple of e_k.
std::vector<std::vector<Cx>> householder_qr(DenseMatrix& a) {
    const std::size_t n = a.rows;
    std::vector<std::vector<Cx>> reflectors;
    reflectors.reserve(n);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        std::vector<Cx> v(n - k);
        double xnorm2 = 0.0;
        for (std::size_t i = k; i < n; ++i) {
            v[i - k] = a.at(i, k);
            xnorm2 += std::norm(a.at(i, k));
        }
        const double xnorm = std::sqrt(xnorm2);
        if (xnorm == 0.0) {
            reflectors.emplace_back();
            continue;
        }
        // alpha = -exp(i arg(x0)) * ||x|| avoids cancellation in v = x - alpha e1
        const Cx x0 = v[0];
        const double x0abs = std::abs(x0);
        const Cx phase = (x0abs == 0.0) ? Cx{1.0, 0.0} : x0 / x0abs;
        const Cx alpha = -phase * xnorm;
        v[0] -= alpha;
        double vnorm2 = 0.0;
        for (const Cx& z : v) {
            vnorm2 += std::norm(z);
        }
        if (vnorm2 == 0.0) {
            reflectors.emplace_back();
            continue;
        }
        const double inv = 2.0 / vnorm2;
        // A[k:, k:] <- (I - 2 v v^dag / ||v||^2) A[k:, k:]
        for (std::size_t j = k; j < n; ++j) {
            Cx proj{0.0, 0.0};
            for (std::size_t i = k; i < n; ++i) {
                proj += std::conj(v[i - k]) * a.at(i, j);
            }
            proj *= inv;
            for (std::size_t i = k; i < n; ++i) {
                a.at(i, j) -= proj * v[i - k];
            }
        }
        reflectors.push_back(std::move(v));
    }
    return reflectors;
}

} // namespace

DenseMatrix haar_unitary(int n_qubits, RngStream& rng) {
    if (n_qubits < 1 || n_qubits > kMaxDenseQubits) {
        throw std::invalid_argument("haar_unitary: qubit count outside dense limit");
    }
    const std::size_t dim = std::size_t{1} << n_qubits;
    DenseMatrix r = ginibre(dim, rng);
    const auto reflectors = householder_qr(r);

    // Q = H_0 H_1 ... H_{p-1}: apply the reflectors to the identity in
    // reverse order.
    DenseMatrix q = DenseMatrix::identity(dim);
    for (std::size_t k = reflectors.size(); k-- > 0;) {
        const std::vector<Cx>& v = reflectors[k];
        if (v.empty()) continue;
        double vnorm2 = 0.0;
        for (const Cx& z : v) {
            vnorm2 += std::norm(z);
        }
        const double inv = 2.0 / vnorm2;
        for (std::size_t j = 0; j < dim; ++j) {
            Cx proj{0.0, 0.0};
            for (std::size_t i = k; i < dim; ++i) {
                proj += std::conj(v[i - k]) * q.at(i, j);
            }
            proj *= inv;
            for (std::size_t i = k; i < dim; ++i) {
                q.at(i, j) -= proj * v[i - k];
            }
        }
    }

    // rescale column j by the phase of R_jj so the distribution is exactly Haar
    for (std::size_t j = 0; j < dim; ++j) {
        const Cx rjj = r.at(j, j);
        const double mag = std::abs(rjj);
        const Cx phase = (mag == 0.0) ? Cx{1.0, 0.0} : rjj / mag;
        for (std::size_t i = 0; i < dim; ++i) {
            q.at(i, j) *= phase;
        }
    }
    return q;
}

DenseMatrix haar_unitary(int n_qubits, std::uint64_t seed, std::uint64_t stream) {
    RngStream rng(seed, stream);
    return haar_unitary(n_qubits, rng);
}

StateVector haar_state(int n_qubits, RngStream& rng) {
    const std::size_t dim = std::size_t{1} << n_qubits;
    std::vector<Cx> amps(dim);
    double norm2 = 0.0;
    for (Cx& z : amps) {
        z = Cx{rng.gaussian(), rng.gaussian()};
        norm2 += std::norm(z);
    }
    const double inv = 1.0 / std::sqrt(norm2);
    for (Cx& z : amps) {
        z *= inv;
    }
    return StateVector(n_qubits, std::move(amps));
}

StateVector haar_state(int n_qubits, std::uint64_t seed, std::uint64_t stream) {
    RngStream rng(seed, stream);
    return haar_state(n_qubits, rng);
}

} // namespace ionsynth
