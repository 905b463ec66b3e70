#pragma once

#include <optional>
#include <vector>

#include "qot/ascent.hpp"
#include "qot/channel.hpp"
#include "qot/report.hpp"
#include "qot/seminorm.hpp"

namespace qot {

struct CostOptions {
    AscentOptions ascent;
    /// Assemble the theory upper bound kappa * 2 * ||Phi - id||; costs two extra ascents.
    bool compute_upper = true;
    /// Reuse a known kappa estimate for the upper bound.
    std::optional<double> kappa;
    /// Restrict observables to span(search_basis) (HS-orthonormal Hermitian), e.g. a subalgebra.
    std::optional<std::vector<Matrix>> search_basis;
    /// Extra ascent starting points.
    std::vector<Matrix> starts;
};

/// Commutant of the amplified resources, restricted to the search subspace when given.
std::vector<Matrix> fixed_algebra(const SeminormSpec& spec,
                                  const std::optional<std::vector<Matrix>>& search_basis = std::nullopt);
/// Observables modulo the fixed algebra: the space every ascent runs over.
ObservableSpace search_space(const SeminormSpec& spec,
                             const std::optional<std::vector<Matrix>>& search_basis = std::nullopt);

/// ||Phi(X) - X|| / |||X||| with Phi amplified to the seminorm's level.
double cost_ratio(const Superoperator& heisenberg, const SeminormSpec& spec, const Matrix& x);

/// sup over Hermitian X of ||Phi(X) - X|| / |||X|||, Phi in the Heisenberg picture (unital).
CostReport cost(const Superoperator& heisenberg, const SeminormSpec& spec, const CostOptions& opts = {});
CostReport cost(const QuantumChannel& channel, const SeminormSpec& spec, const CostOptions& opts = {});

/// kappa(S) = Cost(E_fix).
CostReport expected_length(const SeminormSpec& spec, const CostOptions& opts = {});

/// sup over Hermitian X of ||Phi(X) - X|| / ||X|| (unamplified), a lower estimate of ||Phi - id||.
double distance_to_identity(const Superoperator& heisenberg, const AscentOptions& opts);

/// sup |tr(f X)| / |||X||| for traceless Hermitian f.
CostReport dual_seminorm(const SeminormSpec& spec, const Matrix& f, const AscentOptions& opts = {});
CostReport wasserstein(const DensityMatrix& rho, const DensityMatrix& sigma, const SeminormSpec& spec,
                       const AscentOptions& opts = {});

struct StatesOptions {
    int n_states = 256;
    AscentOptions inner{3, 150, 0.1, 0, true};
    int refine_top = 4;
    int refine_steps = 8;
    std::uint64_t seed = 0;
};

/// max over sampled pure states of W(rho, Phi_*(rho)), refined by alternating between the
/// dual witness and the top eigenvector of Phi(X) - X. channel is in the Schrodinger picture.
CostReport cost_via_states(const QuantumChannel& channel, const SeminormSpec& spec,
                           const StatesOptions& opts = {});

/// f1 (x) 1 + 1 (x) f2
Matrix tensor_witness(const Matrix& f1, const Matrix& f2);

/// Sign-aligned local witness for the tensor lower bound: flips f so that the eigenvalue of
/// Phi(f) - f with the largest modulus is positive.
Matrix align_witness(const Superoperator& heisenberg, const Matrix& f);

struct HarnessCheck {
    std::string name;
    int instances = 0;
    double worst_slack = -kInf;  // max over instances of lhs - rhs; <= tolerance means pass
    double tolerance = 1e-10;
    bool passed() const { return worst_slack <= tolerance; }
};

/// Pointwise inequalities on random Hermitian x for two unital Heisenberg maps phi, psi that fix
/// the commutant: composition triangle, universal bound chain, Lip universal bound, convexity.
std::vector<HarnessCheck> pointwise_harness(const Superoperator& phi, const Superoperator& psi,
                                            const SeminormSpec& spec, int instances,
                                            std::uint64_t seed);

}  // namespace qot
