#include <doctest.h>

#include <cmath>

#include "qot/errors.hpp"
#include "qot/group_table.hpp"
#include "qot/seminorm.hpp"

using namespace qot;

namespace {

SeminormSpec pauli_spec(SeminormKind k = SeminormKind::Linf) { return {pauli_resources(), k, 1}; }

// 2 max over Pauli pairs of the Bloch-component norm.
double pauli_closed_form(const Matrix& x) {
    auto v = pauli_decompose(HermitianMatrix(x));
    return 2 * std::max({std::hypot(v.v1, v.v2), std::hypot(v.v2, v.v3), std::hypot(v.v1, v.v3)});
}

}  // namespace

TEST_CASE("pauli seminorm matches the Bloch closed form") {
    for (int t = 0; t < 200; ++t) {
        Rng rng = make_rng(31, t);
        Matrix x = random_hermitian(rng, 2).matrix();
        REQUIRE(std::abs(seminorm(pauli_spec(), x) - pauli_closed_form(x)) < 1e-12);
    }
}

TEST_CASE("seminorm vanishes on the unit and respects adjoints") {
    CHECK(seminorm(pauli_spec(), identity(2)) == 0);
    CHECK(seminorm(pauli_spec(SeminormKind::L2), identity(2)) == 0);
    Rng rng = make_rng(32);
    Matrix x = random_gaussian(rng, 2, 2);
    CHECK(seminorm(pauli_spec(), x) == doctest::Approx(seminorm(pauli_spec(), x.adjoint())));
}

TEST_CASE("l2 seminorm of sigma_z with the su(2) frame") {
    ResourceSet r;
    r.dim = 2;
    for (int k = 1; k <= 3; ++k) r.elements.push_back(Complex(0, 1) * pauli(k));
    SeminormSpec spec{r, SeminormKind::L2, 1};
    CHECK(seminorm(spec, pauli(3)) == doctest::Approx(2 * std::sqrt(2.0)));
}

TEST_CASE("gradients match finite differences") {
    for (auto kind : {SeminormKind::Linf, SeminormKind::L2}) {
        Rng rng = make_rng(33, static_cast<int>(kind));
        SeminormSpec spec{pauli_xy_resources(), kind, 1};
        Matrix x = random_hermitian(rng, 2).matrix();
        Matrix h = random_hermitian(rng, 2).matrix();
        Matrix g;
        seminorm(spec, x, &g);
        const double t = 1e-6;
        const double fd = (seminorm(spec, x + t * h) - seminorm(spec, x - t * h)) / (2 * t);
        CHECK(fd == doctest::Approx(hs_inner(g, h).real()).epsilon(1e-6));
    }
}

TEST_CASE("scaling the resources scales the seminorm") {
    ResourceSet r = pauli_resources();
    for (auto& s : r.elements) s *= 3.0;
    Rng rng = make_rng(34);
    Matrix x = random_hermitian(rng, 2).matrix();
    CHECK(seminorm({r, SeminormKind::Linf, 1}, x) == doctest::Approx(3 * seminorm(pauli_spec(), x)));
    CHECK(r.sup_norm() == doctest::Approx(3.0));
}

TEST_CASE("amplified seminorm of a product") {
    SeminormSpec amp{pauli_resources(), SeminormKind::Linf, 2};
    Rng rng = make_rng(35);
    Matrix x = random_hermitian(rng, 2).matrix();
    // 1 (x) s commutes through e_11 (x) x, leaving the local value.
    Matrix e11 = Matrix::Zero(2, 2);
    e11(0, 0) = 1;
    CHECK(seminorm(amp, tensor(e11, x)) == doctest::Approx(seminorm(pauli_spec(), x)));
    CHECK(amp.dim() == 4);
}

TEST_CASE("join places resources on separate factors") {
    ResourceSet j = join(pauli_resources(), pauli_xy_resources());
    CHECK(j.dim == 4);
    CHECK(j.elements.size() == 5);
    CHECK((j.elements[3] - tensor(identity(2), pauli(1))).norm() == 0);
}

TEST_CASE("resource validation") {
    ResourceSet bad;
    bad.dim = 2;
    bad.elements = {pauli(1), identity(3)};
    CHECK_THROWS_AS(bad.validate(), DimensionError);
    CHECK_THROWS_AS(parse_resource_spec("nonsense"), InputError);
    CHECK_THROWS_AS(parse_kind("l7"), InputError);
    CHECK(parse_kind("l2") == SeminormKind::L2);
    CHECK(kind_name(SeminormKind::Linf) == "linf");
}

TEST_CASE("group seminorm is the largest edge difference") {
    FiniteGroupTable z4 = cyclic_group(4);
    CHECK(group_seminorm(z4, {0, 1, 2, 1}) == 1);
    CHECK(group_seminorm(z4, {0, 0, 3, 0}) == 3);
    CHECK(group_seminorm(z4, {5, 5, 5, 5}) == 0);
}
