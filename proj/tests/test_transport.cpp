#include <doctest.h>

#include <cmath>

#include "qot/errors.hpp"
#include "qot/transport.hpp"

using namespace qot;

namespace {

const double kKappaPauli = std::sqrt(6.0) / 4;

SeminormSpec pauli_spec() { return {pauli_resources(), SeminormKind::Linf, 1}; }

CostOptions quick(std::uint64_t seed = 0) {
    CostOptions o;
    o.ascent = AscentOptions{40, 300, 0.1, seed, true};
    return o;
}

// sup over Bloch directions u of |u| / (2 max pairwise norm), on a polar grid.
double bloch_grid_kappa() {
    const double pi = std::acos(-1.0);
    double best = 0;
    for (int i = 1; i < 400; ++i)
        for (int j = 0; j < 800; ++j) {
            const double th = pi * i / 400, ph = 2 * pi * j / 800;
            const double x = std::sin(th) * std::cos(ph), y = std::sin(th) * std::sin(ph), z = std::cos(th);
            const double m = std::max({std::hypot(x, y), std::hypot(y, z), std::hypot(x, z)});
            best = std::max(best, 1 / (2 * m));
        }
    return best;
}

}  // namespace

TEST_CASE("bloch grid oracle and kappa of the Pauli set") {
    const double grid = bloch_grid_kappa();
    // The grid maximum approaches from below.
    CHECK(grid <= kKappaPauli + 1e-12);
    CHECK(grid == doctest::Approx(kKappaPauli).epsilon(5e-3));
    CostReport k = expected_length(pauli_spec(), quick());
    CHECK(k.lower == doctest::Approx(kKappaPauli).epsilon(1e-9));
    CHECK(k.lower <= k.upper);
}

TEST_CASE("identity has no cost") {
    CostReport r = cost(identity_channel(2), pauli_spec(), quick());
    CHECK(r.lower == 0);
}

TEST_CASE("depolarizing cost scales kappa by p") {
    for (double p : {0.25, 0.5, 1.0}) {
        CostReport r = cost(depolarizing(2, p), pauli_spec(), quick());
        CHECK(r.lower == doctest::Approx(p * kKappaPauli).epsilon(1e-8));
        CHECK(std::isfinite(r.upper));
        CHECK(r.upper >= r.lower);
        CHECK(seminorm(pauli_spec(), r.witness) == doctest::Approx(1.0).epsilon(1e-8));
        CHECK(cost_ratio(depolarizing(2, p).heisenberg_superop(), pauli_spec(), r.witness) ==
              doctest::Approx(r.lower).epsilon(1e-10));
    }
}

TEST_CASE("a channel that moves the commutant has infinite cost") {
    SeminormSpec z{single_resource(pauli(3), "sz"), SeminormKind::Linf, 1};
    Matrix h(2, 2);
    h << 1, 1, 1, -1;
    h /= std::sqrt(2.0);
    CostReport r = cost(unitary_channel(h), z, quick());
    CHECK(std::isinf(r.lower));
    CHECK(std::isinf(r.upper));
    REQUIRE(!r.notes.empty());
    CHECK(r.notes.front().rfind("commutant-not-fixed", 0) == 0);
}

TEST_CASE("resource set with trivial commutant complement has zero kappa") {
    SeminormSpec unit{single_resource(identity(2), "1"), SeminormKind::Linf, 1};
    CHECK(expected_length(unit, quick()).lower == 0);
}

TEST_CASE("cost via states agrees with the observable side") {
    StatesOptions so;
    so.n_states = 64;
    for (double p : {0.5, 1.0}) {
        CostReport s = cost_via_states(depolarizing(2, p), pauli_spec(), so);
        CHECK(s.lower == doctest::Approx(p * kKappaPauli).epsilon(0.02));
        CHECK(s.lower <= p * kKappaPauli * (1 + 1e-9));
    }
    CHECK(cost_via_states(identity_channel(2), pauli_spec(), so).lower == 0);
}

TEST_CASE("wasserstein distance between basis states") {
    Matrix z0 = Matrix::Zero(2, 2), z1 = Matrix::Zero(2, 2);
    z0(0, 0) = 1;
    z1(1, 1) = 1;
    DensityMatrix a(z0), b(z1);
    AscentOptions o{40, 300, 0.1, 0, true};
    CostReport ab = wasserstein(a, b, pauli_spec(), o);
    CHECK(ab.lower == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(wasserstein(b, a, pauli_spec(), o).lower == doctest::Approx(ab.lower).epsilon(1e-8));
    CHECK(wasserstein(a, a, pauli_spec(), o).lower == 0);
    CHECK_THROWS_AS(dual_seminorm(pauli_spec(), identity(2), o), DomainError);
}

TEST_CASE("larger resource sets give smaller costs") {
    QuantumChannel ch = depolarizing(2, 0.5);
    const double full = cost(ch, pauli_spec(), quick()).lower;
    const double xy = cost(ch, {pauli_xy_resources(), SeminormKind::Linf, 1}, quick()).lower;
    CHECK(full <= xy + 1e-6);
}

TEST_CASE("cost is homogeneous in the seminorm scale") {
    ResourceSet r = pauli_resources();
    for (auto& s : r.elements) s *= 2.5;
    QuantumChannel ch = depolarizing(2, 0.5);
    const double base = cost(ch, pauli_spec(), quick()).lower;
    const double scaled = cost(ch, {r, SeminormKind::Linf, 1}, quick()).lower;
    CHECK(scaled == doctest::Approx(base / 2.5).epsilon(1e-8));
}

TEST_CASE("tensor witness seminorm is the max of its parts") {
    const SeminormSpec joint{join(pauli_resources(), pauli_resources()), SeminormKind::Linf, 1};
    for (int t = 0; t < 20; ++t) {
        Rng rng = make_rng(41, t);
        Matrix f1 = random_hermitian(rng, 2).matrix(), f2 = random_hermitian(rng, 2).matrix();
        const double a = seminorm(pauli_spec(), f1), b = seminorm(pauli_spec(), f2);
        CHECK(std::abs(seminorm(joint, tensor_witness(f1, f2)) - std::max(a, b)) < 1e-10);
    }
    Matrix f = pauli(1);
    CHECK((tensor_witness(f, Matrix::Zero(2, 2)) - tensor(f, identity(2))).norm() == 0);
}

TEST_CASE("tensor witness certifies the local sum for depolarizing pairs") {
    const SeminormSpec joint{join(pauli_resources(), pauli_resources()), SeminormKind::Linf, 1};
    QuantumChannel a = depolarizing(2, 0.3), b = depolarizing(2, 0.6);
    Matrix fa = align_witness(a.heisenberg_superop(), cost(a, pauli_spec(), quick()).witness);
    Matrix fb = align_witness(b.heisenberg_superop(), cost(b, pauli_spec(), quick()).witness);
    const double joint_lower =
        cost_ratio(tensor_channel(a, b).heisenberg_superop(), joint, tensor_witness(fa, fb));
    CHECK(joint_lower >= 0.9 * kKappaPauli - 1e-6);
}

TEST_CASE("pointwise harness on random channels") {
    for (int t = 0; t < 5; ++t) {
        Rng rng = make_rng(42, t);
        QuantumChannel phi = random_unital_qubit_channel(rng), psi = random_unital_qubit_channel(rng);
        for (const auto& c : pointwise_harness(phi.heisenberg_superop(), psi.heisenberg_superop(),
                                               pauli_spec(), 40, t)) {
            INFO(c.name);
            CHECK(c.passed());
        }
    }
}

TEST_CASE("harness degenerates to equality with the identity") {
    Rng rng = make_rng(43);
    QuantumChannel phi = random_unital_qubit_channel(rng);
    auto checks = pointwise_harness(phi.heisenberg_superop(), Superoperator::identity(2), pauli_spec(), 20, 1);
    CHECK(checks.front().worst_slack > -1e-12);
}

TEST_CASE("reports serialize infinities as strings") {
    CostReport r;
    r.lower = 1.5;
    nlohmann::json j = report_to_json(r);
    CHECK(j["upper"]["value"] == "inf");
    CHECK(j["lower"]["value"] == 1.5);
    CHECK(j["lower"]["method"] == "ascent-lower");
}
