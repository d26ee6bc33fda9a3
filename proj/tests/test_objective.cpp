#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ionsynth/haar.hpp"
#include "ionsynth/objective.hpp"
#include "ionsynth/rng.hpp"
#include "ionsynth/tensor.hpp"

#include "oracles.hpp"

#include <cmath>

using namespace ionsynth;
using namespace ionsynth::testing;

namespace {

ParameterVector random_params(const AnsatzTopology& t, std::uint64_t seed) {
    RngStream rng(seed, 0);
    ParameterVector x(static_cast<std::size_t>(t.param_count));
    for (double& v : x) {
        v = rng.uniform(0, 2 * kPi);
    }
    return x;
}

double fd_gradient_error(const AnsatzTopology& t, const ParameterVector& x,
                         const SynthesisTarget& target, double h = 1e-6) {
    const GradientResult gr = cost_and_gradient(t, x, target);
    double max_err = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) {
        ParameterVector xp = x;
        ParameterVector xm = x;
        xp[j] += h;
        xm[j] -= h;
        const double fd = (cost(t, xp, target) - cost(t, xm, target)) / (2.0 * h);
        max_err = std::max(max_err, std::abs(fd - gr.gradient[j]));
    }
    return max_err;
}

} // namespace

TEST_CASE("cost of the identity instantiation") {
    const AnsatzTopology t = build_topology(2, 1, SynthesisMode::StatePreparation);
    const ParameterVector x(static_cast<std::size_t>(t.param_count), 0.0);
    CHECK(cost(t, x, SynthesisTarget::from_state(StateVector::zero_state(2))) ==
          doctest::Approx(0.0));
    // orthogonal target: the Re term vanishes
    CHECK(cost(t, x, SynthesisTarget::from_state(StateVector::basis(2, 1))) ==
          doctest::Approx(2.0));
}

TEST_CASE("single-Rz cost profile g(theta) = 2(1 - cos(theta/2))") {
    const AnsatzTopology t = build_topology(1, 0, SynthesisMode::Operator);
    const SynthesisTarget target = SynthesisTarget::from_state(StateVector::zero_state(1));
    for (double theta : {0.0, 0.3, 1.1, kPi, 4.5}) {
        const ParameterVector x = {theta, 0.0, 0.0, 0.0};
        CHECK(cost(t, x, target) == doctest::Approx(2.0 * (1.0 - std::cos(theta / 2.0))));
        const GradientResult gr = cost_and_gradient(t, x, target);
        CHECK(gr.gradient[0] == doctest::Approx(std::sin(theta / 2.0)));
    }
    // derivative vanishes at the minimum
    const GradientResult at_zero = cost_and_gradient(t, {0, 0, 0, 0}, target);
    CHECK(std::abs(at_zero.gradient[0]) < 1e-15);
}

TEST_CASE("gradient vanishes at a perfect synthesis") {
    const AnsatzTopology t = build_topology(2, 1, SynthesisMode::StatePreparation);
    const ParameterVector x_star = random_params(t, 41);

    StateVector psi = StateVector::zero_state(2);
    simulate(t, x_star, psi, SimDirection::Forward);
    const SynthesisTarget target = SynthesisTarget::from_state(psi);

    const GradientResult gr = cost_and_gradient(t, x_star, target);
    CHECK(gr.cost < 1e-14);
    for (double g : gr.gradient) {
        CHECK(std::abs(g) < 1e-8);
    }
}

TEST_CASE("analytic gradient matches central finite differences") {
    RngStream pick(2024, 0);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 1 + static_cast<int>(pick.next_u64() % 4);
        const int k = static_cast<int>(pick.next_u64() % 4);
        const bool op_mode = (pick.next_u64() & 1) != 0;
        const SynthesisMode mode =
            op_mode ? SynthesisMode::Operator : SynthesisMode::StatePreparation;
        const AnsatzTopology t = build_topology(n, k, mode);
        const SynthesisTarget target =
            op_mode ? SynthesisTarget::from_unitary(
                          haar_unitary(n, 3000 + static_cast<std::uint64_t>(trial)))
                    : SynthesisTarget::from_state(
                          haar_state(n, 3000 + static_cast<std::uint64_t>(trial)));
        const ParameterVector x = random_params(t, 500 + static_cast<std::uint64_t>(trial));
        CHECK(fd_gradient_error(t, x, target) < 1e-6);
    }
}

TEST_CASE("simulate: adjoint of forward is the identity") {
    const AnsatzTopology t = build_topology(3, 2, SynthesisMode::Operator);
    const ParameterVector x = random_params(t, 7);
    const StateVector psi = random_state(3, 71);
    StateVector out = psi;
    simulate(t, x, out, SimDirection::Forward);
    CHECK(std::abs(vec_norm(out) - 1.0) < 1e-12);
    simulate(t, x, out, SimDirection::Adjoint);
    CHECK(max_abs_diff(out.amps, psi.amps) < 1e-12);
}

TEST_CASE("simulate matches the dense gate product") {
    const AnsatzTopology t = build_topology(2, 1, SynthesisMode::Operator);
    const ParameterVector x = random_params(t, 19);

    DenseMatrix product = DenseMatrix::identity(4);
    for (const GateOp& g : t.gate_sequence) {
        product = matmul(gate_dense(g, x), product);
    }
    const StateVector psi = random_state(2, 33);
    StateVector out = psi;
    simulate(t, x, out, SimDirection::Forward);
    CHECK(max_abs_diff(out.amps, matvec(product, psi.amps)) < 1e-12);
}

TEST_CASE("cost is invariant under 2*pi shifts of the phase slot") {
    const AnsatzTopology t = build_topology(2, 1, SynthesisMode::Operator);
    ParameterVector x = random_params(t, 13);
    const SynthesisTarget target = SynthesisTarget::from_unitary(haar_unitary(2, 77));
    const double before = cost(t, x, target);
    x[static_cast<std::size_t>(t.param_count) - 1] += 2.0 * kPi;
    CHECK(std::abs(cost(t, x, target) - before) < 1e-12);
}

TEST_CASE("near-zero cost certifies the column residuals") {
    const AnsatzTopology t = build_topology(2, 1, SynthesisMode::Operator);
    const ParameterVector x_star = random_params(t, 23);

    DenseMatrix u(4, 4);
    for (std::size_t j = 0; j < 4; ++j) {
        StateVector col = StateVector::basis(2, j);
        simulate(t, x_star, col, SimDirection::Forward);
        for (std::size_t i = 0; i < 4; ++i) {
            u.at(i, j) = col.amps[i];
        }
    }
    const SynthesisTarget target = SynthesisTarget::from_unitary(u);
    REQUIRE(cost(t, x_star, target) < 1e-12);

    for (std::size_t j = 0; j < 4; ++j) {
        StateVector col = StateVector::basis(2, j);
        simulate(t, x_star, col, SimDirection::Forward);
        double residual = 0.0;
        for (std::size_t i = 0; i < 4; ++i) {
            residual += std::norm(col.amps[i] - u.at(i, j));
        }
        CHECK(std::sqrt(residual) < 1e-10);
    }
}

TEST_CASE("full-unitary cost equals the scaled Frobenius distance") {
    for (int n = 1; n <= 3; ++n) {
        const AnsatzTopology t = build_topology(n, 1, SynthesisMode::Operator);
        const ParameterVector x = random_params(t, 60 + static_cast<std::uint64_t>(n));
        const DenseMatrix u = haar_unitary(n, 90 + static_cast<std::uint64_t>(n));
        const SynthesisTarget target = SynthesisTarget::from_unitary(u);

        DenseMatrix f(std::size_t{1} << n, std::size_t{1} << n);
        for (std::size_t j = 0; j < f.cols; ++j) {
            StateVector col = StateVector::basis(n, j);
            simulate(t, x, col, SimDirection::Forward);
            for (std::size_t i = 0; i < f.rows; ++i) {
                f.at(i, j) = col.amps[i];
            }
        }
        const double frob = frobenius_distance(f, u);
        const double expected = frob * frob / static_cast<double>(std::size_t{1} << n);
        CHECK(std::abs(cost(t, x, target) - expected) < 1e-10);
    }
}

TEST_CASE("column-selection targets average the selected terms") {
    const int n = 2;
    const AnsatzTopology t = build_topology(n, 1, SynthesisMode::Operator);
    const ParameterVector x = random_params(t, 3);
    const DenseMatrix u = haar_unitary(n, 8);

    std::vector<std::size_t> selection = {3, 1};
    std::vector<StateVector> cols;
    for (std::size_t j : selection) {
        std::vector<Cx> amps(4);
        for (std::size_t i = 0; i < 4; ++i) {
            amps[i] = u.at(i, j);
        }
        cols.emplace_back(n, std::move(amps));
    }
    const SynthesisTarget target = SynthesisTarget::from_columns(n, selection, cols);

    double manual = 0.0;
    for (std::size_t c = 0; c < selection.size(); ++c) {
        StateVector adj = cols[c];
        simulate(t, x, adj, SimDirection::Adjoint);
        manual += 2.0 * (1.0 - adj.amps[selection[c]].real());
    }
    manual /= static_cast<double>(selection.size());
    CHECK(cost(t, x, target) == doctest::Approx(manual));

    CHECK(fd_gradient_error(t, x, target) < 1e-6);
}

TEST_CASE("cost bounds for single-column targets") {
    const AnsatzTopology t = build_topology(2, 0, SynthesisMode::StatePreparation);
    for (int trial = 0; trial < 10; ++trial) {
        const SynthesisTarget target = SynthesisTarget::from_state(
            haar_state(2, 400 + static_cast<std::uint64_t>(trial)));
        const ParameterVector x = random_params(t, static_cast<std::uint64_t>(trial));
        const double c = cost(t, x, target);
        CHECK(c >= 0.0);
        CHECK(c <= 4.0);
    }
}

TEST_CASE("target validation") {
    // unnormalized state
    CHECK_THROWS_AS(
        SynthesisTarget::from_state(StateVector(1, {Cx{0.9, 0}, Cx{0.1, 0}})),
        std::invalid_argument);

    // non-unitary matrix
    DenseMatrix bad = DenseMatrix::identity(2);
    bad.at(0, 1) = Cx{0.5, 0};
    CHECK_THROWS_AS(SynthesisTarget::from_unitary(bad), std::invalid_argument);

    // duplicate selection indices
    const StateVector e0 = StateVector::basis(1, 0);
    const StateVector e1 = StateVector::basis(1, 1);
    CHECK_THROWS_AS(SynthesisTarget::from_columns(1, {0, 0}, {e0, e1}),
                    std::invalid_argument);
    // non-orthonormal columns
    CHECK_THROWS_AS(SynthesisTarget::from_columns(1, {0, 1}, {e0, e0}),
                    std::invalid_argument);
}

TEST_CASE("dimension and finiteness errors") {
    const AnsatzTopology t = build_topology(2, 0, SynthesisMode::Operator);
    const SynthesisTarget wrong_dim =
        SynthesisTarget::from_state(StateVector::zero_state(3));
    ParameterVector x(static_cast<std::size_t>(t.param_count), 0.0);
    CHECK_THROWS_AS(cost(t, x, wrong_dim), std::invalid_argument);

    const SynthesisTarget ok = SynthesisTarget::from_state(StateVector::zero_state(2));
    CHECK_THROWS_AS(cost(t, ParameterVector{1.0}, ok), std::invalid_argument);

    x[0] = std::nan("");
    CHECK_THROWS_AS(cost(t, x, ok), std::invalid_argument);
}
