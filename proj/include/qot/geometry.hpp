#pragma once

#include <cstdint>
#include <vector>

#include "qot/ascent.hpp"
#include "qot/seminorm.hpp"

namespace qot {

/// 2x2 unitary with determinant 1.
class SU2Element {
public:
    explicit SU2Element(Matrix g, double tol = 1e-10);
    const Matrix& matrix() const { return g_; }

private:
    Matrix g_;
};

SU2Element haar_su2(Rng& rng);
/// exp(i theta n.sigma) for a unit axis n.
SU2Element su2_rotation(double theta, double nx, double ny, double nz);

/// Bi-invariant distance to the identity, theta in [0, pi] from the eigenphases e^{+-i theta}.
double cc_distance_su2(const SU2Element& g);

/// L2 commutator seminorm with resources {i sx, i sy, i sz}.
SeminormSpec su2_rep_seminorm();

struct CCSample {
    double distance = 0;
    double cost_lower = 0;
    double closed_form = 0;  // sin(theta)/sqrt(2)
    double margin = 0;       // distance - cost_lower
};

/// Cost lower bound of the conjugation channel by g against its distance to the identity.
CCSample verify_cc_bound(const SU2Element& g, const AscentOptions& opts);

struct CCSummary {
    std::vector<CCSample> samples;
    int violations = 0;  // cost_lower > distance + 1e-6
};

CCSummary cc_verify(int samples, std::uint64_t seed, const AscentOptions& opts);

}  // namespace qot
