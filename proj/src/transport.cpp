#include "qot/transport.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qot/errors.hpp"
#include "qot/parallel.hpp"

namespace qot {

namespace {

constexpr double kFixTol = 1e-9;

void check_spec_dim(const SeminormSpec& spec, int map_dim, const char* what) {
    spec.resource.validate();
    if (map_dim != spec.resource.dim)
        throw DimensionError(std::string(what) + " acts on M_" + std::to_string(map_dim) +
                             " but the resource set has dim " + std::to_string(spec.resource.dim));
}

void check_unital(const Superoperator& heis) {
    const int d = heis.dim();
    const double err = (heis.apply(identity(d)) - identity(d)).cwiseAbs().maxCoeff();
    if (err > kFixTol)
        throw DomainError("Heisenberg map is not unital: ||Phi(1) - 1||_max = " + std::to_string(err));
}

// First fixed-algebra element moved by the map, if any.
std::optional<Matrix> moved_fixed_element(const Superoperator& heis, const SeminormSpec& spec,
                                          const std::vector<Matrix>& fixed) {
    for (const auto& c : fixed)
        if ((heis.apply_amplified(c, spec.amplification) - c).norm() > kFixTol) return c;
    return std::nullopt;
}

AscentOptions reduced(const AscentOptions& o) {
    AscentOptions r = o;
    r.restarts = std::max(4, o.restarts / 8);
    r.iterations = std::max(100, o.iterations / 2);
    return r;
}

}  // namespace

std::vector<Matrix> fixed_algebra(const SeminormSpec& spec,
                                  const std::optional<std::vector<Matrix>>& search_basis) {
    if (search_basis) return commutant_in_subspace(spec.effective_elements(), *search_basis);
    return commutant(spec.effective_elements());
}

ObservableSpace search_space(const SeminormSpec& spec,
                             const std::optional<std::vector<Matrix>>& search_basis) {
    auto fixed = fixed_algebra(spec, search_basis);
    return complement_space(spec.dim(), fixed, search_basis ? &*search_basis : nullptr);
}

double cost_ratio(const Superoperator& heis, const SeminormSpec& spec, const Matrix& x) {
    OpNormFunctional num(difference(superop_map(heis, spec.amplification), identity_map()));
    SeminormFunctional den(spec);
    return ratio_at(num, den, x);
}

CostReport cost(const Superoperator& heis, const SeminormSpec& spec, const CostOptions& opts) {
    check_spec_dim(spec, heis.dim(), "channel");
    check_unital(heis);
    CostReport rep;
    rep.seed = opts.ascent.seed;
    auto fixed = fixed_algebra(spec, opts.search_basis);
    if (auto c = moved_fixed_element(heis, spec, fixed)) {
        rep.lower = rep.upper = kInf;
        rep.lower_method = rep.upper_method = "exact";
        rep.witness = *c;
        rep.notes.push_back("commutant-not-fixed: a fixed-algebra element is moved, cost is infinite");
        return rep;
    }
    ObservableSpace space =
        complement_space(spec.dim(), fixed, opts.search_basis ? &*opts.search_basis : nullptr);
    OpNormFunctional num(difference(superop_map(heis, spec.amplification), identity_map()));
    SeminormFunctional den(spec);
    AscentResult res = maximize_ratio(space, num, den, opts.ascent, opts.starts);
    rep.lower = std::max(0.0, res.value);
    rep.gap = res.gap;
    rep.pool = std::move(res.endpoints);
    const double s = den.eval(res.witness, nullptr);
    rep.witness = s > 0 ? Matrix(res.witness / s) : res.witness;
    if (opts.compute_upper) {
        double kappa;
        if (opts.kappa) {
            kappa = *opts.kappa;
        } else {
            CostOptions k = opts;
            k.compute_upper = false;
            k.starts.clear();
            kappa = expected_length(spec, k).lower;
        }
        rep.upper = kappa * 2.0 * distance_to_identity(heis, reduced(opts.ascent));
        if (rep.upper < rep.lower) {
            rep.upper = rep.lower;
            rep.notes.push_back("upper clamped to lower: the kappa estimate is itself a lower bound");
        }
    } else {
        rep.upper_method = "none";
    }
    return rep;
}

CostReport cost(const QuantumChannel& channel, const SeminormSpec& spec, const CostOptions& opts) {
    return cost(channel.heisenberg_superop(), spec, opts);
}

CostReport expected_length(const SeminormSpec& spec, const CostOptions& opts) {
    spec.resource.validate();
    auto fixed_small = opts.search_basis ? std::vector<Matrix>{} : commutant(spec.resource.elements);
    Superoperator e;
    if (opts.search_basis) {
        // E_fix on the subalgebra: HS projection onto its fixed part (amplification 1 only).
        if (spec.amplification != 1)
            throw DomainError("expected_length with a search basis supports amplification 1 only");
        e = ConditionalExpectation(fixed_algebra(spec, opts.search_basis)).superop();
    } else {
        e = ConditionalExpectation(fixed_small).superop();
    }
    CostOptions inner = opts;
    inner.compute_upper = false;
    CostReport rep = cost(e, spec, inner);
    if (opts.compute_upper) {
        rep.upper = rep.lower * 2.0 * distance_to_identity(e, reduced(opts.ascent));
        rep.upper_method = "theory-upper";
        rep.notes.push_back("upper uses the kappa lower estimate as kappa");
    }
    return rep;
}

double distance_to_identity(const Superoperator& heis, const AscentOptions& opts) {
    const int d = heis.dim();
    ObservableSpace space{d, hermitian_basis(d, true)};
    OpNormFunctional num(difference(superop_map(heis), identity_map()));
    OpNormFunctional den(identity_map());
    return maximize_ratio(space, num, den, opts).value;
}

CostReport dual_seminorm(const SeminormSpec& spec, const Matrix& f, const AscentOptions& opts) {
    spec.resource.validate();
    const int n = spec.dim();
    if (f.rows() != n || f.cols() != n)
        throw DimensionError("functional is " + std::to_string(f.rows()) + "x" +
                             std::to_string(f.cols()) + ", seminorm acts on " + std::to_string(n));
    HermitianMatrix fh(f);
    if (std::abs(f.trace()) > 1e-10)
        throw DomainError("dual seminorm needs a traceless functional, tr f = " +
                          std::to_string(std::abs(f.trace())));
    CostReport rep;
    rep.seed = opts.seed;
    auto fixed = fixed_algebra(spec);
    for (const auto& c : fixed) {
        if (std::abs(hs_inner(c, fh.matrix())) > 1e-10 * std::max(1.0, f.norm())) {
            rep.lower = rep.upper = kInf;
            rep.lower_method = rep.upper_method = "exact";
            rep.witness = c;
            rep.notes.push_back("functional is not orthogonal to the fixed algebra");
            return rep;
        }
    }
    ObservableSpace space = complement_space(n, fixed);
    LinearFunctional num(fh.matrix());
    SeminormFunctional den(spec);
    AscentResult res = maximize_ratio(space, num, den, opts, {fh.matrix()});
    rep.lower = std::max(0.0, res.value);
    rep.gap = res.gap;
    const double s = den.eval(res.witness, nullptr);
    rep.witness = s > 0 ? Matrix(res.witness / s) : res.witness;
    rep.upper = rep.lower * (1.0 + rep.gap);
    rep.notes.push_back("upper is lower*(1+gap) from the restart stagnation heuristic");
    return rep;
}

CostReport wasserstein(const DensityMatrix& rho, const DensityMatrix& sigma, const SeminormSpec& spec,
                       const AscentOptions& opts) {
    if (rho.dim() != sigma.dim()) throw DimensionError("wasserstein: state dimensions differ");
    return dual_seminorm(spec, rho.matrix() - sigma.matrix(), opts);
}

CostReport cost_via_states(const QuantumChannel& channel, const SeminormSpec& spec,
                           const StatesOptions& opts) {
    check_spec_dim(spec, channel.dim(), "channel");
    const Superoperator heis = channel.heisenberg_superop();
    check_unital(heis);
    CostReport rep;
    rep.seed = opts.seed;
    rep.lower_method = "sample-max";
    rep.upper_method = "none";
    if (auto c = moved_fixed_element(heis, spec, fixed_algebra(spec))) {
        rep.lower = rep.upper = kInf;
        rep.lower_method = rep.upper_method = "exact";
        rep.witness = *c;
        rep.notes.push_back("commutant-not-fixed: a fixed-algebra element is moved, cost is infinite");
        return rep;
    }
    const int n = spec.dim();
    const int amp = spec.amplification;
    const Superoperator& schro = channel.schrodinger_superop();

    struct Sample {
        double value = 0;
        Matrix state;
        Matrix dual_witness;
    };
    auto evaluate = [&](const Matrix& rho, std::uint64_t stream) {
        AscentOptions inner = opts.inner;
        inner.seed = opts.seed * 1000003ULL + stream;
        Matrix f = hermitian_part(schro.apply_amplified(rho, amp) - rho);
        CostReport w = dual_seminorm(spec, f, inner);
        return Sample{w.lower, rho, w.witness};
    };

    std::vector<Sample> samples(opts.n_states);
    parallel_for(opts.n_states, [&](int i) {
        Rng rng = make_rng(opts.seed, static_cast<std::uint64_t>(i));
        Vector psi = haar_state_vector(rng, n);
        samples[i] = evaluate(hermitian_part(psi * psi.adjoint()), static_cast<std::uint64_t>(i));
    });

    std::vector<int> order(samples.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return samples[a].value > samples[b].value; });
    const int top = std::min<int>(opts.refine_top, static_cast<int>(order.size()));
    std::vector<Sample> refined(top);
    parallel_for(top, [&](int t) {
        Sample cur = samples[order[t]];
        for (int step = 0; step < opts.refine_steps; ++step) {
            // The pure state maximizing tr(rho (Phi(X) - X)) for the current dual witness.
            Matrix h = hermitian_part(heis.apply_amplified(cur.dual_witness, amp) - cur.dual_witness);
            auto e = eig_hermitian(HermitianMatrix(h));
            const int k = std::abs(e.values(0)) > std::abs(e.values(n - 1)) ? 0 : n - 1;
            Vector v = e.vectors.col(k);
            Sample next = evaluate(hermitian_part(v * v.adjoint()),
                                   static_cast<std::uint64_t>(opts.n_states + t * 97 + step));
            if (!(next.value > cur.value * (1 + 1e-12))) break;
            cur = std::move(next);
        }
        refined[t] = std::move(cur);
    });
    Sample best = samples[order.front()];
    for (const auto& r : refined)
        if (r.value > best.value) best = r;
    rep.lower = best.value;
    rep.witness = best.state;
    rep.upper = kInf;
    return rep;
}

Matrix tensor_witness(const Matrix& f1, const Matrix& f2) {
    return tensor(f1, identity(static_cast<int>(f2.rows()))) +
           tensor(identity(static_cast<int>(f1.rows())), f2);
}

Matrix align_witness(const Superoperator& heis, const Matrix& f) {
    Matrix h = hermitian_part(heis.apply(f) - f);
    auto e = eig_hermitian(HermitianMatrix(h));
    return std::abs(e.values(0)) > std::abs(e.values(e.values.size() - 1)) ? Matrix(-f) : f;
}

std::vector<HarnessCheck> pointwise_harness(const Superoperator& phi, const Superoperator& psi,
                                            const SeminormSpec& spec, int instances,
                                            std::uint64_t seed) {
    check_spec_dim(spec, phi.dim(), "channel");
    check_spec_dim(spec, psi.dim(), "channel");
    check_unital(phi);
    check_unital(psi);
    auto fixed = fixed_algebra(spec);
    if (moved_fixed_element(phi, spec, fixed) || moved_fixed_element(psi, spec, fixed))
        throw DomainError("pointwise harness needs channels that fix the commutant");
    ConditionalExpectation e(fixed);
    const int amp = spec.amplification;
    const int n = spec.dim();
    double lip_const = 2.0 * spec.resource.sup_norm();
    if (spec.kind == SeminormKind::L2)
        lip_const *= std::sqrt(static_cast<double>(spec.resource.elements.size()));

    std::vector<HarnessCheck> checks = {
        {"composition triangle", 0},       {"bound chain equality", 0},
        {"bound chain contraction", 0},    {"lip universal bound", 0},
        {"convexity", 0},
    };
    for (int i = 0; i < instances; ++i) {
        Rng rng = make_rng(seed, static_cast<std::uint64_t>(i));
        Matrix x = random_hermitian(rng, n).matrix();
        x /= op_norm(x);
        const double t = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
        const Matrix px = phi.apply_amplified(x, amp), qx = psi.apply_amplified(x, amp);
        const Matrix ex = e.apply(x);
        const double dphi = op_norm(px - x), dpsi = op_norm(qx - x);
        auto record = [&](int k, double slack) {
            checks[k].instances++;
            checks[k].worst_slack = std::max(checks[k].worst_slack, slack);
        };
        record(0, op_norm(phi.apply_amplified(qx, amp) - x) - (dphi + dpsi));
        const Matrix y = ex - x;
        const double chain = op_norm(phi.apply_amplified(y, amp) - y);
        record(1, std::abs(dphi - chain));
        record(2, chain - 2.0 * op_norm(y));
        record(3, seminorm(spec, px) - lip_const * op_norm(x - ex));
        record(4, op_norm(t * px + (1 - t) * qx - x) - (t * dphi + (1 - t) * dpsi));
    }
    return checks;
}

}  // namespace qot
