#include <doctest.h>

#include <cmath>

#include "qot/errors.hpp"
#include "qot/geometry.hpp"

using namespace qot;

TEST_CASE("distance to the identity") {
    CHECK(cc_distance_su2(SU2Element(identity(2))) == doctest::Approx(0.0));
    CHECK(cc_distance_su2(SU2Element(-identity(2))) == doctest::Approx(M_PI));
    for (double t : {0.1, 1.0, 2.5}) {
        CHECK(cc_distance_su2(su2_rotation(t, 0, 0, 1)) == doctest::Approx(t).epsilon(1e-12));
        CHECK(cc_distance_su2(su2_rotation(t, 0.6, 0, 0.8)) == doctest::Approx(t).epsilon(1e-12));
    }
}

TEST_CASE("non-SU(2) inputs are rejected") {
    Matrix flip = Matrix::Zero(2, 2);
    flip(0, 1) = 1;
    flip(1, 0) = 1;
    CHECK_THROWS(SU2Element(flip));
    CHECK_THROWS(SU2Element(2.0 * identity(2)));
}

TEST_CASE("bi-invariant metric properties") {
    Rng rng = make_rng(71);
    for (int t = 0; t < 200; ++t) {
        SU2Element g = haar_su2(rng), h = haar_su2(rng);
        const double dg = cc_distance_su2(g);
        CHECK(cc_distance_su2(SU2Element(g.matrix().adjoint())) == doctest::Approx(dg).epsilon(1e-9));
        CHECK(cc_distance_su2(SU2Element(h.matrix() * g.matrix() * h.matrix().adjoint())) ==
              doctest::Approx(dg).epsilon(1e-9));
        CHECK(cc_distance_su2(SU2Element(g.matrix() * h.matrix())) <= dg + cc_distance_su2(h) + 1e-9);
    }
}

TEST_CASE("representation seminorm is conjugation invariant") {
    SeminormSpec spec = su2_rep_seminorm();
    Rng rng = make_rng(72);
    for (int t = 0; t < 20; ++t) {
        Matrix x = random_hermitian(rng, 2).matrix();
        Matrix u = haar_su2(rng).matrix();
        CHECK(seminorm(spec, u * x * u.adjoint()) == doctest::Approx(seminorm(spec, x)).epsilon(1e-10));
    }
    CHECK(seminorm(spec, identity(2)) == doctest::Approx(0.0));
}

TEST_CASE("cost lower bound below the distance") {
    AscentOptions o{20, 200, 0.1, 0, true};
    CCSample small = verify_cc_bound(su2_rotation(1e-3, 1, 0, 0), o);
    CHECK(small.closed_form == doctest::Approx(std::sin(1e-3) / std::sqrt(2.0)));
    CHECK(small.cost_lower <= small.distance + 1e-6);
    CCSummary s = cc_verify(20, 73, o);
    CHECK(s.samples.size() == 20);
    CHECK(s.violations == 0);
    for (const auto& c : s.samples) CHECK(c.margin == doctest::Approx(c.distance - c.cost_lower));
}
