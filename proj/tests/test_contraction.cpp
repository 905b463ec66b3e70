#include <doctest.h>

#include <cmath>

#include "qot/contraction.hpp"
#include "qot/errors.hpp"

using namespace qot;

namespace {

SeminormSpec pauli_spec() { return {pauli_resources(), SeminormKind::Linf, 1}; }

DensityMatrix diag_state(double a) {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 0) = a;
    m(1, 1) = 1 - a;
    return DensityMatrix(m);
}

const DensityMatrix& half() {
    static const DensityMatrix s(identity(2) / 2.0);
    return s;
}

QuantumChannel amplitude_damping(double g) {
    Matrix k0 = Matrix::Zero(2, 2), k1 = Matrix::Zero(2, 2);
    k0(0, 0) = 1;
    k0(1, 1) = std::sqrt(1 - g);
    k1(0, 1) = std::sqrt(g);
    return QuantumChannel({k0, k1});
}

}  // namespace

TEST_CASE("lip of depolarizing is certified in closed form") {
    for (double p : {0.0, 0.3, 1.0}) {
        CostReport l = lip(depolarizing(2, p).heisenberg_superop(), pauli_spec());
        CHECK(l.lower == doctest::Approx(1 - p).epsilon(1e-12));
        CHECK(l.upper == l.lower);
        CHECK(l.gap == 0);
        CHECK(l.lower_method == "closed-form");
    }
}

TEST_CASE("lip is infinite when the fixed algebra leaves the seminorm kernel") {
    SeminormSpec z{single_resource(pauli(3), "sz"), SeminormKind::Linf, 1};
    Matrix h(2, 2);
    h << 1, 1, 1, -1;
    h /= std::sqrt(2.0);
    CHECK(std::isinf(lip(unitary_channel(h).heisenberg_superop(), z).lower));
}

TEST_CASE("lip and contraction via states agree on a random channel") {
    Rng rng = make_rng(51);
    QuantumChannel ch = random_unital_qubit_channel(rng);
    LipOptions lo;
    lo.ascent = AscentOptions{40, 300, 0.1, 0, true};
    lo.compute_upper = false;
    const double a = lip(ch.heisenberg_superop(), pauli_spec(), lo).lower;
    PairsOptions po;
    po.n_pairs = 64;
    const double b = contraction_via_states(ch, pauli_spec(), po).lower;
    CHECK(b <= a * (1 + 1e-6));
    CHECK(b == doctest::Approx(a).epsilon(0.02));
}

TEST_CASE("gamma kernel") {
    DensityMatrix s = diag_state(0.75);
    CHECK((gamma(s, identity(2)) - s.matrix()).norm() < 1e-14);
    Matrix off = Matrix::Zero(2, 2);
    off(0, 1) = 1;
    off(1, 0) = 1;
    CHECK(gamma(s, off)(0, 1).real() == doctest::Approx(0.4551196).epsilon(1e-6));
    Rng rng = make_rng(52);
    DensityMatrix r = random_full_rank_state(rng, 3, 0.05);
    Matrix x = random_hermitian(rng, 3).matrix();
    CHECK((gamma_inverse(r, gamma(r, x)) - x).norm() < 1e-10);
}

TEST_CASE("lambda2 of depolarizing and replacer") {
    for (double p : {0.1, 0.5, 0.9}) {
        Lambda2Report r = bkm_lambda2(depolarizing(2, p));
        CHECK(r.lambda2 == doctest::Approx((1 - p) * (1 - p)).epsilon(1e-10));
        CHECK(r.lambda1 == doctest::Approx(1.0));
        CHECK(r.symmetry_defect < 1e-9);
    }
    CHECK(std::abs(bkm_lambda2(replacer(diag_state(0.3))).lambda2) < 1e-10);
}

TEST_CASE("lambda2 of random primitive channels lies in [0, 1)") {
    for (int t = 0; t < 5; ++t) {
        Rng rng = make_rng(53, t);
        Lambda2Report r = bkm_lambda2(random_unital_qubit_channel(rng, 3, 0.2));
        CHECK(r.lambda2 >= -1e-9);
        CHECK(r.lambda2 < 1);
        CHECK(r.spectrum.back() >= -1e-9);
    }
}

TEST_CASE("structural failures of lambda2") {
    CHECK_THROWS_AS(bkm_lambda2(identity_channel(2)), StructuralError);
    CHECK_THROWS_AS(bkm_lambda2(amplitude_damping(0.3)), DomainError);
}

TEST_CASE("relative entropy values") {
    DensityMatrix s = diag_state(0.75);
    CHECK(relative_entropy(s, s).value == doctest::Approx(0.0));
    CHECK(relative_entropy(diag_state(1.0), half()).value == doctest::Approx(std::log(2.0)));
    CHECK(relative_entropy(s, half()).value == doctest::Approx(0.1308120).epsilon(1e-7));
    RelativeEntropy inf = relative_entropy(half(), diag_state(1.0));
    CHECK(!inf.finite);
    CHECK(std::isinf(inf.value));
}

TEST_CASE("entropy derivative matches central differences") {
    for (int t = 0; t < 10; ++t) {
        Rng rng = make_rng(54, t);
        DensityMatrix rho = random_full_rank_state(rng, 3, 0.05), sigma = random_full_rank_state(rng, 3, 0.05);
        Matrix h = random_hermitian(rng, 3).matrix();
        h -= h.trace() / 3.0 * identity(3);
        h /= trace_norm(h);
        const double dt = 1e-4;
        const double fd = (relative_entropy(DensityMatrix(rho.matrix() + dt * h), sigma).value -
                           relative_entropy(DensityMatrix(rho.matrix() - dt * h), sigma).value) /
                          (2 * dt);
        CHECK(std::abs(fd - entropy_derivative(rho, h, sigma)) < 1e-5);
    }
}

TEST_CASE("second-order expansion error is third order") {
    Rng rng = make_rng(55);
    DensityMatrix sigma = random_full_rank_state(rng, 2, 0.1);
    Matrix x = random_hermitian(rng, 2).matrix();
    x -= x.trace() / 2.0 * identity(2);
    const double c = second_order_coefficient(sigma, x);
    auto err = [&](double e) {
        return std::abs(relative_entropy(DensityMatrix(sigma.matrix() + e * x), sigma).value - e * e * c);
    };
    CHECK(err(1e-2) / err(5e-3) >= 3.5);
    CHECK(err(5e-3) / err(2.5e-3) >= 3.5);
}

TEST_CASE("f_p values") {
    CHECK(f_p(0.5, 0.25) == doctest::Approx(0.4649735).epsilon(1e-7));
    for (double x : {-0.4, 0.1, 0.3}) CHECK(f_p(0.0, x) == doctest::Approx(1.0));
    CHECK(f_p(0.3, 1e-6) == doctest::Approx(0.7).epsilon(1e-5));
    CHECK_THROWS_AS(f_p(0.3, 0.5), DomainError);
    CHECK_THROWS_AS(f_p(1.2, 0.1), DomainError);
}

TEST_CASE("entropy contraction samples") {
    CHECK(entropy_contraction_sample(replacer(half()), half(), 200, 1).ratio == 0);
    CHECK(entropy_contraction_sample(identity_channel(2), half(), 200, 1).ratio == doctest::Approx(1.0));
    for (double p : {0.2, 0.7}) {
        EntropySample s = entropy_contraction_sample(depolarizing(2, p), half(), 2000, 2);
        CHECK(s.ratio <= (1 - p) * (1 - p) + 1e-8);
        EntropySample r = refine_entropy_argmax(depolarizing(2, p), half(), s.argmax, 200, 3);
        CHECK(r.ratio >= s.ratio);
        CHECK(r.ratio <= (1 - p) * (1 - p) + 1e-6);
    }
}

TEST_CASE("optimizer residual") {
    QuantumChannel ch = depolarizing(2, 0.4);
    CHECK(optimizer_residual(ch, half(), half(), 0.37) < 1e-12);
    CHECK(optimizer_residual(ch, half(), diag_state(0.9), 0.1) > 1e-3);
}

TEST_CASE("log-lipschitz samples") {
    for (double p : {0.2, 0.6}) {
        EntropySample s = loglip_sample(depolarizing(2, p), half(), pauli_spec(), 500, 4);
        CHECK(s.ratio <= 1 - p + 1e-8);
        CHECK(s.ratio > 1 - p - 0.05);
    }
    CHECK(loglip_sample(identity_channel(2), half(), pauli_spec(), 50, 5).ratio == doctest::Approx(1.0));
}

TEST_CASE("entropy upper bound on depolarizing and lazy random channels") {
    AscentOptions a{20, 200, 0.1, 0, true};
    EntropyUpperReport dep = entropy_upper_check(depolarizing(2, 0.4), pauli_spec(), 500, 6, a);
    CHECK(dep.holds);
    CHECK(dep.rhs_factored == doctest::Approx(0.36).epsilon(1e-6));
    for (int t = 0; t < 3; ++t) {
        Rng rng = make_rng(56, t);
        EntropyUpperReport r = entropy_upper_check(random_unital_qubit_channel(rng, 3, 0.3), pauli_spec(), 300, t, a);
        CHECK(r.eta_lower <= r.rhs_factored + 5e-2);
        CHECK(r.rhs_composite <= r.rhs_factored + 1e-6);
    }
}
