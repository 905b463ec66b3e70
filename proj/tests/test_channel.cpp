#include <doctest.h>

#include <cmath>

#include "qot/channel.hpp"
#include "qot/errors.hpp"

using namespace qot;

namespace {

Matrix e_ij(int d, int i, int j) {
    Matrix m = Matrix::Zero(d, d);
    m(i, j) = 1;
    return m;
}

}  // namespace

TEST_CASE("picture duality on random pairs") {
    for (int t = 0; t < 500; ++t) {
        Rng rng = make_rng(21, t);
        QuantumChannel ch = random_unital_qubit_channel(rng);
        DensityMatrix rho = haar_pure_state(rng, 2);
        Matrix x = random_hermitian(rng, 2).matrix();
        Complex lhs = (rho.matrix() * ch.heisenberg(x)).trace();
        Complex rhs = (ch.schrodinger(rho.matrix()) * x).trace();
        REQUIRE(std::abs(lhs - rhs) < 1e-10);
    }
}

TEST_CASE("unital channels contract the operator norm") {
    for (int t = 0; t < 100; ++t) {
        Rng rng = make_rng(22, t);
        QuantumChannel ch = random_unital_qubit_channel(rng, 4, 0.2);
        Matrix x = random_hermitian(rng, 2).matrix();
        REQUIRE(op_norm(ch.heisenberg(x)) <= op_norm(x) + 1e-12);
    }
}

TEST_CASE("depolarizing action") {
    for (int d : {2, 3}) {
        Rng rng = make_rng(23, d);
        QuantumChannel ch = depolarizing(d, 0.3);
        CHECK(ch.trace_preserving());
        CHECK(ch.unital());
        DensityMatrix rho = haar_pure_state(rng, d);
        Matrix expect = 0.7 * rho.matrix() + 0.3 * identity(d) / static_cast<double>(d);
        CHECK((ch.schrodinger(rho.matrix()) - expect).norm() < 1e-12);
    }
    CHECK_THROWS_AS(depolarizing(2, 1.5), DomainError);
}

TEST_CASE("kraus sets that are neither unital nor trace preserving are rejected") {
    CHECK_THROWS_AS(QuantumChannel({2.0 * identity(2)}), DomainError);
}

TEST_CASE("superoperator algebra") {
    Rng rng = make_rng(24);
    QuantumChannel a = random_unital_qubit_channel(rng), b = random_unital_qubit_channel(rng);
    Matrix x = random_hermitian(rng, 2).matrix();
    Superoperator sa = a.heisenberg_superop(), sb = b.heisenberg_superop();
    CHECK((sa.after(sb).apply(x) - a.heisenberg(b.heisenberg(x))).norm() < 1e-12);
    CHECK((compose(a, b).heisenberg(x) - b.heisenberg(a.heisenberg(x))).norm() < 1e-12);
    CHECK((sa.power(3).apply(x) - sa.apply(sa.apply(sa.apply(x)))).norm() < 1e-12);
    Matrix y = random_hermitian(rng, 4).matrix();
    CHECK((tensor(sa, sb).apply(y) - tensor_channel(a, b).heisenberg(y)).norm() < 1e-12);
    CHECK((sa.apply_amplified(y, 2) - amplify(a, 2).heisenberg(y)).norm() < 1e-12);
    Matrix r = random_hermitian(rng, 2).matrix();
    CHECK(std::abs(hs_inner(r, sa.apply(x)) - hs_inner(sa.adjoint().apply(r), x)) < 1e-12);
}

TEST_CASE("commutants of Pauli subsets") {
    CHECK(commutant({pauli(1), pauli(2), pauli(3)}).size() == 1);
    CHECK(commutant({pauli(3)}).size() == 2);
    CHECK(commutant({identity(3)}).size() == 9);
}

TEST_CASE("conditional expectation properties") {
    std::vector<Matrix> s = {tensor(pauli(1), identity(2)), tensor(pauli(3), identity(2))};
    ConditionalExpectation e = conditional_expectation(s);
    for (int t = 0; t < 20; ++t) {
        Rng rng = make_rng(25, t);
        Matrix x = random_hermitian(rng, 4).matrix();
        Matrix ex = e.apply(x);
        for (const auto& si : s) CHECK((si * ex - ex * si).norm() < 1e-9);
        CHECK((e.apply(ex) - ex).norm() < 1e-12);
        DensityMatrix rho = haar_pure_state(rng, 4);
        CHECK(std::abs(e.apply(rho.matrix()).trace() - 1.0) < 1e-12);
    }
}

TEST_CASE("index closed forms") {
    for (int d : {2, 3}) {
        IndexReport r = index(trace_expectation(d), std::vector<Block>{{1, d}}, 500, 1);
        CHECK(*r.index == d);
        CHECK(*r.cb_index == d * d);
        CHECK(r.sampled_lower <= d + 1e-8);
        CHECK(r.sampled_lower > d - 0.01);
    }
    IndexReport id = index(ConditionalExpectation(hermitian_basis(2, true)), std::vector<Block>{{2, 1}}, 200, 1);
    CHECK(*id.index == 1);
    CHECK(id.sampled_lower <= 1 + 1e-8);
    IndexReport diag = index(ConditionalExpectation({e_ij(2, 0, 0), e_ij(2, 1, 1)}),
                             std::vector<Block>{{1, 1}, {1, 1}}, 500, 1);
    CHECK(*diag.index == 2);
    CHECK(diag.sampled_lower <= 2 + 1e-8);
    CHECK_THROWS_AS(index(trace_expectation(2), std::vector<Block>{{1, 3}}, 10, 0), DimensionError);
    IndexReport none = index(trace_expectation(2), std::nullopt, 10, 0);
    CHECK(!none.index);
}

TEST_CASE("cp order") {
    QuantumChannel ch = depolarizing(2, 0.4);
    Superoperator zero = ch.schrodinger_superop() * 0.0;
    CHECK(is_cp_order(zero, ch.schrodinger_superop()));
    Superoperator id = Superoperator::identity(2);
    CHECK(is_cp_order(id, id * 1.25));
    CHECK(!is_cp_order(id * 1.25, id));
}

TEST_CASE("return-time Choi oracle for depolarizing") {
    // Phi^n = q id + (1 - q) E; the lower order needs q <= eps and the upper q (d^2 - 1) <= eps.
    const double eps = 0.05;
    Superoperator e = trace_expectation(2).superop();
    for (double p : {0.2, 0.5}) {
        Superoperator s = depolarizing(2, p).schrodinger_superop();
        for (int n = 1; n <= 15; ++n) {
            const double q = std::pow(1 - p, n);
            Superoperator pn = s.power(n);
            CHECK(is_cp_order(e * (1 - eps), pn) == (q <= eps));
            CHECK(is_cp_order(pn, e * (1 + eps)) == (3 * q <= eps));
        }
    }
}

TEST_CASE("channel specs and json") {
    QuantumChannel ch = parse_channel_spec("pauli:0.1:0.2:0.3");
    QuantumChannel back = channel_from_json(channel_to_json(ch));
    CHECK((back.schrodinger_superop().matrix() - ch.schrodinger_superop().matrix()).norm() < 1e-14);
    CHECK(parse_channel_spec("identity:3").dim() == 3);
    CHECK(parse_channel_spec("random:4").unital());
    CHECK_THROWS_AS(parse_channel_spec("depolarizing:2"), InputError);
    CHECK_THROWS_AS(parse_channel_spec("depolarizing:two:0.1"), InputError);
    CHECK_THROWS_AS(parse_channel_spec("warp:2"), InputError);
    CHECK_THROWS_AS(parse_channel_spec("/nonexistent/channel.json"), InputError);
}
