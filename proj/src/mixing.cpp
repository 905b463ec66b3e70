#include "qot/mixing.hpp"

#include <algorithm>
#include <cmath>

#include "qot/contraction.hpp"
#include "qot/errors.hpp"
#include "qot/parallel.hpp"
#include "qot/transport.hpp"

namespace qot {

namespace {

constexpr double kCrossTol = 1e-9;

double max_over_pool(const Superoperator& heis, const SeminormSpec& spec,
                     const std::vector<Matrix>& pool, std::size_t* arg = nullptr) {
    double best = 0;
    for (std::size_t i = 0; i < pool.size(); ++i) {
        const double r = cost_ratio(heis, spec, pool[i]);
        if (std::isfinite(r) && r > best) {
            best = r;
            if (arg) *arg = i;
        }
    }
    return best;
}

Superoperator fixed_expectation(const SeminormSpec& spec) {
    return ConditionalExpectation(commutant(spec.resource.elements)).superop();
}

}  // namespace

MixingReport trace_mixing_time(const QuantumChannel& channel, double eps, const MixingOptions& opts) {
    if (!(eps > 0)) throw DomainError("eps must be positive");
    if (!channel.trace_preserving() || !channel.unital())
        throw DomainError("trace mixing time needs a unital trace-preserving channel");
    const int d = channel.dim();
    const Matrix sigma = identity(d) / static_cast<double>(d);
    const int amp = opts.amplified ? d : 1;
    const int n = amp * d;
    // Candidate pure inputs; amplified runs include the maximally entangled state.
    std::vector<Vector> cands;
    for (int i = 0; i < opts.samples; ++i) {
        Rng rng = make_rng(opts.seed, static_cast<std::uint64_t>(i));
        cands.push_back(haar_state_vector(rng, n));
    }
    for (int i = 0; i < n; ++i) cands.push_back(Vector::Unit(n, i));
    if (amp > 1) {
        Vector omega = Vector::Zero(n);
        for (int i = 0; i < d; ++i) omega(i * d + i) = 1.0 / std::sqrt(static_cast<double>(d));
        cands.push_back(omega);
    }

    MixingReport rep;
    rep.method = opts.amplified ? "sample-max (amplified, cb estimate)" : "sample-max";
    const Superoperator& s = channel.schrodinger_superop();
    Superoperator pn = s;
    auto distance = [&](const Superoperator& p, const Vector& v) {
        Matrix rho = v * v.adjoint();
        Matrix out = p.apply_amplified(rho, amp);
        Matrix target = amp > 1 ? tensor(partial_trace(rho, amp, d, Side::B), sigma) : sigma;
        return trace_norm(hermitian_part(out - target));
    };
    for (int step = 1; step <= opts.cap; ++step) {
        std::vector<double> dist(cands.size());
        parallel_for(static_cast<int>(cands.size()),
                     [&](int i) { dist[i] = distance(pn, cands[i]); });
        std::size_t arg = std::max_element(dist.begin(), dist.end()) - dist.begin();
        double best = dist[arg];
        // Alternation: sign of the deviation, then the best pure input for that sign.
        Vector v = cands[arg];
        const Superoperator adj = pn.adjoint();
        for (int r = 0; r < opts.refine_steps; ++r) {
            Matrix rho = v * v.adjoint();
            Matrix target = amp > 1 ? tensor(partial_trace(rho, amp, d, Side::B), sigma) : sigma;
            auto e = eig_hermitian(HermitianMatrix::from_rounded(pn.apply_amplified(rho, amp) - target));
            Matrix sign = e.vectors * e.values.unaryExpr([](double x) { return x >= 0 ? 1.0 : -1.0; })
                                          .cast<Complex>()
                                          .asDiagonal() *
                          e.vectors.adjoint();
            auto top = eig_hermitian(HermitianMatrix::from_rounded(adj.apply_amplified(sign, amp)));
            Vector w = top.vectors.col(n - 1);
            const double dw = distance(pn, w);
            if (!(dw > best * (1 + 1e-12))) break;
            best = dw;
            v = w;
        }
        rep.trace.push_back(best);
        if (best <= eps * (1 + kCrossTol)) {
            rep.time = step;
            return rep;
        }
        Superoperator next = s.after(pn);
        if ((next.matrix() - pn.matrix()).cwiseAbs().maxCoeff() == 0.0) {
            rep.stationary = true;
            rep.cap_exceeded = true;
            return rep;
        }
        pn = std::move(next);
    }
    rep.cap_exceeded = true;
    return rep;
}

MixingReport return_time(const QuantumChannel& channel, const ConditionalExpectation& e, double eps,
                         int cap) {
    if (!(eps > 0)) throw DomainError("eps must be positive");
    if (channel.dim() != e.dim()) throw DimensionError("channel and conditional expectation dims differ");
    const Superoperator es = e.superop();
    const Superoperator& s = channel.schrodinger_superop();
    if ((s.after(es).matrix() - es.matrix()).cwiseAbs().maxCoeff() > 1e-9)
        throw DomainError("channel does not fix the range of the conditional expectation");
    MixingReport rep;
    rep.method = "exact";
    Superoperator pn = s;
    for (int step = 1; step <= cap; ++step) {
        const double lo = min_choi_eigenvalue(pn - es * (1 - eps));
        const double hi = min_choi_eigenvalue(es * (1 + eps) - pn);
        rep.trace.push_back(std::min(lo, hi));
        if (lo >= -1e-9 && hi >= -1e-9) {
            rep.time = step;
            return rep;
        }
        Superoperator next = s.after(pn);
        if ((next.matrix() - pn.matrix()).cwiseAbs().maxCoeff() == 0.0) {
            rep.stationary = true;
            rep.cap_exceeded = true;
            return rep;
        }
        pn = std::move(next);
    }
    rep.cap_exceeded = true;
    return rep;
}

CostMixingReport cost_mixing_time(const QuantumChannel& channel, const SeminormSpec& spec, double eps,
                                  int cap, const AscentOptions& opts) {
    if (!(eps > 0 && eps < 1)) throw DomainError("eps must lie in (0, 1)");
    CostMixingReport out;
    out.mixing.method = "ascent-lower (shared witness pool)";
    CostOptions co;
    co.ascent = opts;
    co.compute_upper = false;
    const Superoperator e = fixed_expectation(spec);
    CostReport k = expected_length(spec, co);
    std::vector<Matrix> pool = k.pool;
    double kappa = k.lower;
    const Superoperator heis = channel.heisenberg_superop();
    Superoperator pn = heis;
    for (int step = 1; step <= cap; ++step) {
        CostReport c = cost(pn, spec, co);
        if (!std::isfinite(c.lower)) throw DomainError("channel does not fix the commutant");
        for (const auto& x : c.pool) pool.push_back(x);
        kappa = std::max(kappa, max_over_pool(e, spec, c.pool));
        const double value = std::max(c.lower, max_over_pool(pn, spec, pool));
        out.mixing.trace.push_back(value);
        if (value >= (1 - eps) * kappa * (1 - kCrossTol)) {
            out.mixing.time = step;
            out.kappa = kappa;
            return out;
        }
        Superoperator next = pn.after(heis);
        if ((next.matrix() - pn.matrix()).cwiseAbs().maxCoeff() == 0.0) {
            out.mixing.stationary = true;
            break;
        }
        pn = std::move(next);
    }
    out.mixing.cap_exceeded = true;
    out.kappa = kappa;
    return out;
}

BridgeReport lip_cost_bridge_check(const QuantumChannel& channel, const SeminormSpec& spec,
                                   const AscentOptions& opts) {
    const Superoperator heis = channel.heisenberg_superop();
    const Superoperator e = fixed_expectation(spec);
    if ((heis.after(e).matrix() - e.matrix()).cwiseAbs().maxCoeff() > 1e-9 ||
        (e.after(heis).matrix() - e.matrix()).cwiseAbs().maxCoeff() > 1e-9)
        throw DomainError("bridge assumption fails: Phi^* E = E Phi^* = E does not hold");
    CostOptions co;
    co.ascent = opts;
    co.compute_upper = false;
    CostReport k = expected_length(spec, co);
    CostReport c = cost(heis, spec, co);
    BridgeReport rep;
    // Matched estimators: both sides see the union of witnesses.
    rep.kappa = std::max(k.lower, max_over_pool(e, spec, c.pool));
    rep.cost = std::max(c.lower, max_over_pool(heis, spec, k.pool));
    LipOptions lo;
    lo.ascent = opts;
    lo.compute_upper = false;
    CostReport l = lip(heis, spec, lo);
    rep.lip = l.lower;
    rep.lip_method = l.lower_method;
    rep.rhs = (1 - rep.lip) * rep.kappa;
    rep.slack = rep.cost - rep.rhs;
    rep.holds = rep.cost >= rep.rhs - 0.02 * rep.kappa;
    return rep;
}

}  // namespace qot
