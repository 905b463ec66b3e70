#include <doctest.h>

#include <cmath>

#include "qot/contraction.hpp"
#include "qot/errors.hpp"
#include "qot/mixing.hpp"

using namespace qot;

namespace {

SeminormSpec pauli_spec() { return {pauli_resources(), SeminormKind::Linf, 1}; }

ConditionalExpectation pauli_ce() { return conditional_expectation(pauli_resources().elements); }

}  // namespace

TEST_CASE("trace mixing of depolarizing channels") {
    MixingReport r = trace_mixing_time(depolarizing(2, 0.5), 0.01);
    CHECK(r.time == 7);
    CHECK(!r.cap_exceeded);
    // Pure inputs sit at trace-norm distance 1 from 1/2 and shrink by (1 - p) per step.
    for (std::size_t n = 0; n < r.trace.size(); ++n)
        CHECK(r.trace[n] == doctest::Approx(std::pow(0.5, n + 1)).epsilon(1e-8));
    CHECK(trace_mixing_time(depolarizing(2, 1.0), 0.01).time == 1);
}

TEST_CASE("identity never mixes") {
    MixingOptions o;
    o.cap = 50;
    MixingReport r = trace_mixing_time(identity_channel(2), 0.01, o);
    CHECK(r.time == -1);
    CHECK(r.cap_exceeded);
    CHECK(r.stationary);
}

TEST_CASE("trace distance is non-increasing for random unital channels") {
    for (int t = 0; t < 3; ++t) {
        Rng rng = make_rng(81, t);
        MixingOptions o;
        o.samples = 32;
        MixingReport r = trace_mixing_time(random_unital_qubit_channel(rng, 3, 0.2), 0.05, o);
        REQUIRE(r.time > 0);
        for (std::size_t n = 1; n < r.trace.size(); ++n) CHECK(r.trace[n] <= r.trace[n - 1] + 1e-9);
    }
}

TEST_CASE("amplified estimate dominates the plain one") {
    MixingOptions o;
    o.samples = 16;
    QuantumChannel ch = pauli_channel(0.1, 0.05, 0.2);
    MixingReport plain = trace_mixing_time(ch, 0.01, o);
    o.amplified = true;
    MixingReport amp = trace_mixing_time(ch, 0.01, o);
    CHECK(amp.time >= plain.time);
}

TEST_CASE("non-unital channels are rejected") {
    Matrix k0 = Matrix::Zero(2, 2), k1 = Matrix::Zero(2, 2);
    k0(0, 0) = 1;
    k0(1, 1) = std::sqrt(0.5);
    k1(0, 1) = std::sqrt(0.5);
    CHECK_THROWS_AS(trace_mixing_time(QuantumChannel({k0, k1}), 0.01), DomainError);
}

TEST_CASE("return time from the Choi order") {
    // q = (1-p)^n: lower order needs q <= eps, upper order needs 3q <= eps.
    for (double p : {0.3, 0.5, 0.8}) {
        const double eps = 0.01;
        const int expect = static_cast<int>(std::ceil(std::log(eps / 3) / std::log(1 - p) - 1e-12));
        CHECK(return_time(depolarizing(2, p), pauli_ce(), eps).time == expect);
    }
    CHECK(return_time(depolarizing(2, 0.5), pauli_ce(), 0.01).time == 9);
    CHECK_THROWS_AS(return_time(depolarizing(2, 0.5), conditional_expectation({pauli(3)}), 0.01),
                    DomainError);
}

TEST_CASE("cost mixing time of depolarizing") {
    AscentOptions a{16, 200, 0.1, 0, true};
    for (double p : {0.3, 0.5}) {
        CostMixingReport r = cost_mixing_time(depolarizing(2, p), pauli_spec(), 0.01, 1000, a);
        const int expect = static_cast<int>(std::ceil(std::log(0.01) / std::log(1 - p)));
        CHECK(r.mixing.time == expect);
        CHECK(r.kappa == doctest::Approx(std::sqrt(6.0) / 4).epsilon(1e-6));
    }
}

TEST_CASE("lip-cost bridge") {
    AscentOptions a{16, 200, 0.1, 0, true};
    BridgeReport id = lip_cost_bridge_check(identity_channel(2), pauli_spec(), a);
    CHECK(id.cost == doctest::Approx(0.0));
    CHECK(id.holds);
    BridgeReport dep = lip_cost_bridge_check(depolarizing(2, 0.4), pauli_spec(), a);
    CHECK(dep.slack == doctest::Approx(0.0).epsilon(1e-6));
    CHECK(dep.holds);
    Rng rng = make_rng(82);
    BridgeReport rnd = lip_cost_bridge_check(random_unital_qubit_channel(rng), pauli_spec(), a);
    CHECK(rnd.holds);
    CHECK(rnd.rhs == doctest::Approx((1 - rnd.lip) * rnd.kappa));
}
