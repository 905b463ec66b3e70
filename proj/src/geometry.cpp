#include "qot/geometry.hpp"

#include <cmath>

#include "qot/channel.hpp"
#include "qot/errors.hpp"
#include "qot/transport.hpp"

namespace qot {

SU2Element::SU2Element(Matrix g, double tol) : g_(std::move(g)) {
    if (g_.rows() != 2 || g_.cols() != 2) throw DimensionError("SU(2) element must be 2x2");
    if (!is_unitary(g_, tol)) throw DomainError("SU(2) element is not unitary");
    if (std::abs(g_.determinant() - 1.0) > tol) throw DomainError("SU(2) element must have determinant 1");
}

SU2Element haar_su2(Rng& rng) {
    Matrix u = haar_unitary(rng, 2);
    u /= std::sqrt(u.determinant());
    return SU2Element(u);
}

SU2Element su2_rotation(double theta, double nx, double ny, double nz) {
    const double n = std::sqrt(nx * nx + ny * ny + nz * nz);
    if (!(n > 0)) throw DomainError("rotation axis must be non-zero");
    const Matrix h = (nx * pauli(1) + ny * pauli(2) + nz * pauli(3)) / n;
    return SU2Element(std::cos(theta) * identity(2) + Complex(0, std::sin(theta)) * h);
}

double cc_distance_su2(const SU2Element& g) {
    // g = cos(theta) 1 + i sin(theta) n.sigma
    const Matrix& m = g.matrix();
    const double a0 = 0.5 * m.trace().real();
    auto b = pauli_decompose(HermitianMatrix::from_rounded((m - m.adjoint()) / Complex(0, 2)));
    const double s = std::sqrt(b.v1 * b.v1 + b.v2 * b.v2 + b.v3 * b.v3);
    return std::atan2(s, a0);
}

SeminormSpec su2_rep_seminorm() {
    const Complex i(0, 1);
    ResourceSet r{2, {i * pauli(1), i * pauli(2), i * pauli(3)}, {"i sx", "i sy", "i sz"}};
    return {r, SeminormKind::L2, 1};
}

CCSample verify_cc_bound(const SU2Element& g, const AscentOptions& opts) {
    CCSample out;
    out.distance = cc_distance_su2(g);
    CostOptions co;
    co.ascent = opts;
    co.compute_upper = false;
    out.cost_lower = cost(unitary_channel(g.matrix()), su2_rep_seminorm(), co).lower;
    out.closed_form = std::sin(out.distance) / std::sqrt(2.0);
    out.margin = out.distance - out.cost_lower;
    return out;
}

CCSummary cc_verify(int samples, std::uint64_t seed, const AscentOptions& opts) {
    CCSummary out;
    for (int k = 0; k < samples; ++k) {
        Rng rng = make_rng(seed, static_cast<std::uint64_t>(k));
        AscentOptions o = opts;
        o.seed = seed * 7919ULL + static_cast<std::uint64_t>(k);
        out.samples.push_back(verify_cc_bound(haar_su2(rng), o));
        if (out.samples.back().cost_lower > out.samples.back().distance + 1e-6) ++out.violations;
    }
    return out;
}

}  // namespace qot
