#pragma once

#include <optional>
#include <vector>

#include "qot/transport.hpp"

namespace qot {

struct LipOptions {
    AscentOptions ascent;
    bool compute_upper = true;
    std::optional<double> kappa_upper;
};

/// sup |||Psi(X)||| / |||X||| for a linear map Psi on observables (Heisenberg picture).
/// Maps acting as a scalar modulo the fixed algebra are certified in closed form.
CostReport lip(const Superoperator& map, const SeminormSpec& spec, const LipOptions& opts = {});

/// Ratio |||Psi(X)||| / |||X||| at one observable.
double lip_ratio(const Superoperator& map, const SeminormSpec& spec, const Matrix& x);

struct PairsOptions {
    int n_pairs = 128;
    AscentOptions inner{3, 150, 0.1, 0, true};
    int refine_top = 4;
    int refine_steps = 30;
    std::uint64_t seed = 0;
};

/// max over sampled pure-state pairs of W(Phi rho, Phi sigma) / W(rho, sigma), Schrodinger channel.
CostReport contraction_via_states(const QuantumChannel& channel, const SeminormSpec& spec,
                                  const PairsOptions& opts = {});

// BKM geometry --------------------------------------------------------------

/// Gamma_sigma(X): in the eigenbasis of sigma, multiplies X_ij by
/// (l_i - l_j) / (log l_i - log l_j), with l_i on the diagonal.
Matrix gamma(const DensityMatrix& sigma, const Matrix& x);
Matrix gamma_inverse(const DensityMatrix& sigma, const Matrix& x);

/// Unique full-rank fixed state of a channel; StructuralError when the fixed space is degenerate.
DensityMatrix fixed_state(const QuantumChannel& channel);

struct Lambda2Report {
    double lambda2 = 0;
    double lambda1 = 0;
    double symmetry_defect = 0;
    DensityMatrix sigma;
    std::vector<double> spectrum;  // descending
};

/// Second eigenvalue of Phi^* o Gamma^-1 o Phi o Gamma, symmetrized in the BKM inner product.
Lambda2Report bkm_lambda2(const QuantumChannel& channel);

/// Gamma^-1 o Phi o Gamma as a map on observables.
Superoperator bkm_dual(const QuantumChannel& channel, const DensityMatrix& sigma);

// Relative entropy ------------------------------------------------------------

struct RelativeEntropy {
    double value = 0;
    bool finite = true;
};

RelativeEntropy relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma);
/// tr(drho (log rho - log sigma)), rho and sigma full rank.
double entropy_derivative(const DensityMatrix& rho, const Matrix& drho, const DensityMatrix& sigma);
/// (1/2) <X, Gamma_sigma^-1 X>, the leading term of D(sigma + eps X || sigma) / eps^2.
double second_order_coefficient(const DensityMatrix& sigma, const Matrix& x);

struct EntropySample {
    double ratio = 0;
    DensityMatrix argmax;
    int samples = 0;
    int skipped = 0;  // states with D(rho||sigma) below 1e-14
    std::uint64_t seed = 0;
};

/// max over seeded full-rank states of D(Phi rho || sigma) / D(rho || sigma).
EntropySample entropy_contraction_sample(const QuantumChannel& channel, const DensityMatrix& sigma,
                                         int samples, std::uint64_t seed);
double entropy_ratio(const QuantumChannel& channel, const DensityMatrix& sigma, const DensityMatrix& rho);
/// Local hill-climb on the entropy ratio starting from rho; candidates with D(rho||sigma) < 1e-8 are skipped.
EntropySample refine_entropy_argmax(const QuantumChannel& channel, const DensityMatrix& sigma,
                                    const DensityMatrix& rho, int steps, std::uint64_t seed);

/// ||Phi^*(log Phi rho - log sigma) - eta (log rho - log sigma)||_op
double optimizer_residual(const QuantumChannel& channel, const DensityMatrix& sigma,
                          const DensityMatrix& rho, double eta);

/// max over seeded full-rank states of |||log Phi rho - log sigma||| / |||log rho - log sigma|||.
EntropySample loglip_sample(const QuantumChannel& channel, const DensityMatrix& sigma,
                            const SeminormSpec& spec, int samples, std::uint64_t seed);

/// |atanh(2(1-p)x)| / |atanh(2x)| for |x| < 1/2, with the limit 1 - p at x = 0.
double f_p(double p, double x);

struct EntropyUpperReport {
    double eta_lower = 0;          // sampled entropy contraction
    double lip_heisenberg = 0;     // Lip(Phi^*)
    double lip_bkm = 0;            // Lip(Phi^{*,BKM})
    double lip_composite = 0;      // Lip(Phi^* o Phi^{*,BKM})
    double loglip = 0;
    double rhs_factored = 0;       // Lip(Phi^*) max{Lip(Phi^{*,BKM}), LogLip}
    double rhs_composite = 0;      // max{Lip(Phi^* o Phi^{*,BKM}), Lip(Phi^*) LogLip}
    bool holds = false;            // eta_lower <= rhs_factored (1 + 1e-6)
};

EntropyUpperReport entropy_upper_check(const QuantumChannel& channel, const SeminormSpec& spec,
                                       int samples, std::uint64_t seed,
                                       const AscentOptions& ascent = {});

}  // namespace qot
