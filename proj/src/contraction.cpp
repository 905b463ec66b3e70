#include "qot/contraction.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qot/errors.hpp"
#include "qot/parallel.hpp"

namespace qot {

namespace {

constexpr double kFixTol = 1e-9;
constexpr double kPrimitiveGap = 1e-8;

double log_mean(double a, double b) {
    if (std::abs(a - b) <= 1e-10 * std::max(a, b)) return 0.5 * (a + b);
    return (a - b) / (std::log(a) - std::log(b));
}

struct Eigenbasis {
    RealVector values;
    Matrix vectors;
};

Eigenbasis full_rank_eig(const DensityMatrix& sigma) {
    auto e = eig_hermitian(sigma.hermitian());
    if (e.values(0) <= 1e-12)
        throw DomainError("state must be full rank; smallest eigenvalue is " +
                          std::to_string(e.values(0)));
    return {e.values, e.vectors};
}

Matrix gamma_apply(const DensityMatrix& sigma, const Matrix& x, bool inverse) {
    if (x.rows() != sigma.dim() || x.cols() != sigma.dim())
        throw DimensionError("Gamma_sigma applied to a matrix of the wrong size");
    Eigenbasis e = full_rank_eig(sigma);
    Matrix y = e.vectors.adjoint() * x * e.vectors;
    const int d = sigma.dim();
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            const double k = log_mean(e.values(i), e.values(j));
            y(i, j) = inverse ? y(i, j) / k : y(i, j) * k;
        }
    return e.vectors * y * e.vectors.adjoint();
}

void check_fixed(const QuantumChannel& channel, const DensityMatrix& sigma) {
    if (channel.dim() != sigma.dim()) throw DimensionError("state and channel dimensions differ");
    const double err = (channel.schrodinger(sigma.matrix()) - sigma.matrix()).cwiseAbs().maxCoeff();
    if (err > kFixTol)
        throw DomainError("sigma is not a fixed state of the channel: ||Phi(sigma) - sigma||_max = " +
                          std::to_string(err));
}

Matrix log_difference(const DensityMatrix& rho, const DensityMatrix& sigma) {
    return mat_log(rho.hermitian()).matrix() - mat_log(sigma.hermitian()).matrix();
}

DensityMatrix as_state(const Matrix& m) {
    Matrix h = hermitian_part(m);
    return DensityMatrix(h / h.trace().real());
}

}  // namespace

// Lipschitz constant --------------------------------------------------------------

double lip_ratio(const Superoperator& map, const SeminormSpec& spec, const Matrix& x) {
    SeminormFunctional num(spec, superop_map(map, spec.amplification));
    SeminormFunctional den(spec);
    return ratio_at(num, den, x);
}

CostReport lip(const Superoperator& map, const SeminormSpec& spec, const LipOptions& opts) {
    spec.resource.validate();
    if (map.dim() != spec.resource.dim)
        throw DimensionError("map acts on M_" + std::to_string(map.dim()) +
                             " but the resource set has dim " + std::to_string(spec.resource.dim));
    const int amp = spec.amplification;
    CostReport rep;
    rep.seed = opts.ascent.seed;
    auto fixed = fixed_algebra(spec);
    bool fixes = true;
    for (const auto& c : fixed) {
        Matrix pc = map.apply_amplified(c, amp);
        if (seminorm(spec, pc) > kFixTol) {
            rep.lower = rep.upper = kInf;
            rep.lower_method = rep.upper_method = "exact";
            rep.witness = c;
            rep.notes.push_back("map moves the fixed algebra out of the seminorm kernel");
            return rep;
        }
        if ((pc - c).norm() > kFixTol) fixes = false;
    }
    ObservableSpace space = complement_space(spec.dim(), fixed);
    if (space.size() == 0) {
        rep.lower = rep.upper = 0;
        rep.lower_method = rep.upper_method = "exact";
        return rep;
    }

    // Scalar action modulo the seminorm kernel gives the exact constant.
    const Matrix& b0 = space.basis.front();
    const double c = hs_inner(b0, map.apply_amplified(b0, amp)).real();
    bool scalar = true;
    for (const auto& b : space.basis) {
        const double defect = seminorm(spec, map.apply_amplified(b, amp) - c * b);
        if (defect > 1e-12 * std::max(1.0, seminorm(spec, b))) {
            scalar = false;
            break;
        }
    }
    if (scalar) {
        rep.lower = rep.upper = std::abs(c);
        rep.lower_method = rep.upper_method = "closed-form";
        rep.gap = 0;
        rep.witness = b0 / seminorm(spec, b0);
        rep.notes.push_back("map acts as a scalar modulo the fixed algebra");
        return rep;
    }

    SeminormFunctional num(spec, superop_map(map, amp));
    SeminormFunctional den(spec);
    AscentResult res = maximize_ratio(space, num, den, opts.ascent);
    rep.lower = std::max(0.0, res.value);
    rep.gap = res.gap;
    const double s = den.eval(res.witness, nullptr);
    rep.witness = s > 0 ? Matrix(res.witness / s) : res.witness;
    rep.pool = std::move(res.endpoints);
    if (opts.compute_upper && fixes) {
        double kappa_upper;
        if (opts.kappa_upper) {
            kappa_upper = *opts.kappa_upper;
        } else {
            CostOptions k;
            k.ascent = opts.ascent;
            kappa_upper = expected_length(spec, k).upper;
        }
        double factor = 2.0 * spec.resource.sup_norm();
        if (spec.kind == SeminormKind::L2)
            factor *= std::sqrt(static_cast<double>(spec.resource.elements.size()));
        rep.upper = std::max(rep.lower, factor * kappa_upper);
    } else {
        rep.upper = kInf;
        rep.upper_method = fixes ? "none" : "theory-upper";
    }
    return rep;
}

CostReport contraction_via_states(const QuantumChannel& channel, const SeminormSpec& spec,
                                  const PairsOptions& opts) {
    spec.resource.validate();
    if (channel.dim() != spec.resource.dim) throw DimensionError("channel and resource dims differ");
    const int n = spec.dim();
    const int amp = spec.amplification;
    const Superoperator& schro = channel.schrodinger_superop();
    auto fixed = fixed_algebra(spec);
    const Superoperator heis = channel.heisenberg_superop();
    for (const auto& c : fixed)
        if ((heis.apply_amplified(c, amp) - c).norm() > kFixTol)
            throw DomainError("contraction_via_states needs a channel that fixes the commutant");

    struct Pair {
        double value = 0;
        Vector a, b;
    };
    auto evaluate = [&](const Vector& a, const Vector& b, std::uint64_t stream) {
        AscentOptions inner = opts.inner;
        inner.seed = opts.seed * 1000003ULL + stream;
        Matrix f = hermitian_part(a * a.adjoint() - b * b.adjoint());
        const double w0 = dual_seminorm(spec, f, inner).lower;
        if (!(w0 > 1e-12)) return Pair{0, a, b};
        const double w1 = dual_seminorm(spec, hermitian_part(schro.apply_amplified(f, amp)), inner).lower;
        return Pair{w1 / w0, a, b};
    };

    std::vector<Pair> pairs(opts.n_pairs);
    parallel_for(opts.n_pairs, [&](int i) {
        Rng rng = make_rng(opts.seed, static_cast<std::uint64_t>(i));
        Vector a = haar_state_vector(rng, n), b = haar_state_vector(rng, n);
        pairs[i] = evaluate(a, b, static_cast<std::uint64_t>(i));
    });
    std::vector<int> order(pairs.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int x, int y) { return pairs[x].value > pairs[y].value; });
    const int top = std::min<int>(opts.refine_top, static_cast<int>(order.size()));
    std::vector<Pair> refined(top);
    parallel_for(top, [&](int t) {
        Rng rng = make_rng(opts.seed ^ 0x5bd1e995ULL, static_cast<std::uint64_t>(t));
        Pair cur = pairs[order[t]];
        double radius = 0.3;
        int misses = 0;
        for (int step = 0; step < opts.refine_steps; ++step) {
            Vector a = cur.a + radius * random_gaussian(rng, n, 1).col(0);
            Vector b = cur.b + radius * random_gaussian(rng, n, 1).col(0);
            Pair next = evaluate(a / a.norm(), b / b.norm(),
                                 static_cast<std::uint64_t>(opts.n_pairs + t * 997 + step));
            if (next.value > cur.value) {
                cur = std::move(next);
                misses = 0;
            } else if (++misses >= 3) {
                radius *= 0.5;
                misses = 0;
            }
        }
        refined[t] = std::move(cur);
    });
    Pair best = pairs[order.front()];
    for (const auto& r : refined)
        if (r.value > best.value) best = r;
    CostReport rep;
    rep.lower = best.value;
    rep.lower_method = "sample-max";
    rep.upper = kInf;
    rep.upper_method = "none";
    rep.seed = opts.seed;
    rep.witness = hermitian_part(best.a * best.a.adjoint() - best.b * best.b.adjoint());
    return rep;
}

// BKM geometry ----------------------------------------------------------------

Matrix gamma(const DensityMatrix& sigma, const Matrix& x) { return gamma_apply(sigma, x, false); }

Matrix gamma_inverse(const DensityMatrix& sigma, const Matrix& x) { return gamma_apply(sigma, x, true); }

DensityMatrix fixed_state(const QuantumChannel& channel) {
    if (!channel.trace_preserving()) throw DomainError("fixed_state needs a trace-preserving channel");
    const int d = channel.dim();
    const Matrix& s = channel.schrodinger_superop().matrix();
    Matrix k = s - Matrix::Identity(d * d, d * d);
    auto e = eig_hermitian(HermitianMatrix::from_rounded(k.adjoint() * k));
    int mult = 0;
    for (int i = 0; i < d * d; ++i)
        if (e.values(i) <= kPrimitiveGap) ++mult;
    if (mult != 1)
        throw StructuralError("channel is not primitive: eigenvalue-1 multiplicity is " +
                              std::to_string(mult));
    Vector v = e.vectors.col(0);
    Matrix sigma = Eigen::Map<const Matrix>(v.data(), d, d);
    sigma /= sigma.trace();
    DensityMatrix out(hermitian_part(sigma), 1e-8);
    if (eig_hermitian(out.hermitian()).values(0) <= 1e-12)
        throw DomainError("fixed state is not full rank");
    return out;
}

Superoperator bkm_dual(const QuantumChannel& channel, const DensityMatrix& sigma) {
    return Superoperator::from_function(channel.dim(), [&](const Matrix& x) {
        return gamma_inverse(sigma, channel.schrodinger(gamma(sigma, x)));
    });
}

Lambda2Report bkm_lambda2(const QuantumChannel& channel) {
    Lambda2Report rep;
    rep.sigma = fixed_state(channel);
    const int d = channel.dim();
    const auto basis = hermitian_basis(d, true);
    const int m = d * d;
    const Superoperator bkm = bkm_dual(channel, rep.sigma);
    RealMatrix mc(m, m), g(m, m);
    for (int l = 0; l < m; ++l) {
        const Matrix ml = channel.heisenberg(bkm.apply(basis[l]));
        const Matrix gl = gamma(rep.sigma, basis[l]);
        for (int k = 0; k < m; ++k) {
            mc(k, l) = hs_inner(basis[k], ml).real();
            g(k, l) = hs_inner(basis[k], gl).real();
        }
    }
    auto ge = eig_hermitian(HermitianMatrix::from_rounded(g.cast<Complex>()));
    RealMatrix v = ge.vectors.real();
    RealVector sq = ge.values.cwiseSqrt();
    RealMatrix half = v * sq.asDiagonal() * v.transpose();
    RealMatrix inv_half = v * sq.cwiseInverse().asDiagonal() * v.transpose();
    RealMatrix a = half * mc * inv_half;
    rep.symmetry_defect = (a - a.transpose()).cwiseAbs().maxCoeff();
    if (rep.symmetry_defect > 1e-9)
        throw NumericalError("BKM-symmetrized operator is not symmetric", rep.symmetry_defect);
    auto ae = eig_hermitian(HermitianMatrix::from_rounded(a.cast<Complex>()));
    for (int i = m - 1; i >= 0; --i) rep.spectrum.push_back(ae.values(i));
    rep.lambda1 = rep.spectrum[0];
    rep.lambda2 = m > 1 ? rep.spectrum[1] : 0.0;
    if (rep.lambda2 > 1 - kPrimitiveGap)
        throw StructuralError("channel has a non-trivial peripheral spectrum: lambda2 = " +
                              std::to_string(rep.lambda2));
    return rep;
}

// Relative entropy --------------------------------------------------------------

RelativeEntropy relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma) {
    if (rho.dim() != sigma.dim()) throw DimensionError("relative entropy: state dimensions differ");
    auto er = eig_hermitian(rho.hermitian());
    double ent = 0;
    for (int i = 0; i < rho.dim(); ++i)
        if (er.values(i) > 0) ent += er.values(i) * std::log(er.values(i));
    auto es = eig_hermitian(sigma.hermitian());
    double cross = 0, outside = 0;
    for (int k = 0; k < sigma.dim(); ++k) {
        const Vector vk = es.vectors.col(k);
        const double w = (vk.adjoint() * rho.matrix() * vk)(0).real();
        if (es.values(k) <= 1e-14) {
            outside += w;
        } else {
            cross += w * std::log(es.values(k));
        }
    }
    if (outside > 1e-10) return {kInf, false};
    return {ent - cross, true};
}

double entropy_derivative(const DensityMatrix& rho, const Matrix& drho, const DensityMatrix& sigma) {
    if (drho.rows() != rho.dim() || drho.cols() != rho.dim())
        throw DimensionError("entropy derivative: direction has the wrong size");
    return (drho * log_difference(rho, sigma)).trace().real();
}

double second_order_coefficient(const DensityMatrix& sigma, const Matrix& x) {
    return 0.5 * hs_inner(x, gamma_inverse(sigma, x)).real();
}

double entropy_ratio(const QuantumChannel& channel, const DensityMatrix& sigma, const DensityMatrix& rho) {
    const double d0 = relative_entropy(rho, sigma).value;
    if (!(d0 > 1e-14)) return 0.0;
    const double d1 = relative_entropy(as_state(channel.schrodinger(rho.matrix())), sigma).value;
    return d1 / d0;
}

EntropySample entropy_contraction_sample(const QuantumChannel& channel, const DensityMatrix& sigma,
                                         int samples, std::uint64_t seed) {
    check_fixed(channel, sigma);
    const int d = channel.dim();
    std::vector<double> ratios(samples, -1);
    std::vector<DensityMatrix> states(samples);
    parallel_for(samples, [&](int i) {
        Rng rng = make_rng(seed, static_cast<std::uint64_t>(i));
        states[i] = random_full_rank_state(rng, d);
        if (relative_entropy(states[i], sigma).value > 1e-14)
            ratios[i] = entropy_ratio(channel, sigma, states[i]);
    });
    EntropySample out;
    out.samples = samples;
    out.seed = seed;
    int arg = -1;
    for (int i = 0; i < samples; ++i) {
        if (ratios[i] < 0) {
            ++out.skipped;
            continue;
        }
        if (arg < 0 || ratios[i] > ratios[arg]) arg = i;
    }
    if (arg >= 0) {
        out.ratio = ratios[arg];
        out.argmax = states[arg];
    }
    return out;
}

EntropySample refine_entropy_argmax(const QuantumChannel& channel, const DensityMatrix& sigma,
                                    const DensityMatrix& rho, int steps, std::uint64_t seed) {
    check_fixed(channel, sigma);
    const int d = channel.dim();
    Rng rng = make_rng(seed, 0xe17);
    EntropySample out;
    out.seed = seed;
    out.argmax = rho;
    out.ratio = entropy_ratio(channel, sigma, rho);
    for (int s = 0; s < steps; ++s) {
        const Matrix delta = out.argmax.matrix() - sigma.matrix();
        const double scale = delta.norm();
        if (!(scale > 1e-7)) break;
        Matrix h = random_hermitian(rng, d).matrix();
        h -= h.trace() / static_cast<double>(d) * identity(d);
        h *= 0.3 * scale / h.norm();
        for (const Matrix& cand : {Matrix(sigma.matrix() + 0.5 * delta + 0.5 * h),
                                   Matrix(out.argmax.matrix() + h)}) {
            if (eig_hermitian(HermitianMatrix::from_rounded(cand)).values(0) <= 1e-12) continue;
            DensityMatrix c = as_state(cand);
            // Below this the ratio is dominated by cancellation in tr rho (log rho - log sigma).
            if (relative_entropy(c, sigma).value < 1e-8) continue;
            const double r = entropy_ratio(channel, sigma, c);
            if (r > out.ratio) {
                out.ratio = r;
                out.argmax = c;
                break;
            }
        }
        ++out.samples;
    }
    return out;
}

double optimizer_residual(const QuantumChannel& channel, const DensityMatrix& sigma,
                          const DensityMatrix& rho, double eta) {
    check_fixed(channel, sigma);
    const Matrix out = log_difference(as_state(channel.schrodinger(rho.matrix())), sigma);
    return op_norm(channel.heisenberg(out) - eta * log_difference(rho, sigma));
}

EntropySample loglip_sample(const QuantumChannel& channel, const DensityMatrix& sigma,
                            const SeminormSpec& spec, int samples, std::uint64_t seed) {
    check_fixed(channel, sigma);
    if (spec.dim() != channel.dim()) throw DimensionError("loglip: seminorm and channel dims differ");
    const int d = channel.dim();
    std::vector<double> ratios(samples, -1);
    std::vector<DensityMatrix> states(samples);
    parallel_for(samples, [&](int i) {
        Rng rng = make_rng(seed, static_cast<std::uint64_t>(i));
        states[i] = random_full_rank_state(rng, d);
        const double den = seminorm(spec, log_difference(states[i], sigma));
        if (den > 1e-12) {
            const double num = seminorm(spec, log_difference(as_state(channel.schrodinger(states[i].matrix())), sigma));
            ratios[i] = num / den;
        }
    });
    EntropySample out;
    out.samples = samples;
    out.seed = seed;
    int arg = -1;
    for (int i = 0; i < samples; ++i) {
        if (ratios[i] < 0) {
            ++out.skipped;
            continue;
        }
        if (arg < 0 || ratios[i] > ratios[arg]) arg = i;
    }
    if (arg >= 0) {
        out.ratio = ratios[arg];
        out.argmax = states[arg];
    }
    return out;
}

double f_p(double p, double x) {
    if (!(p >= 0 && p <= 1)) throw DomainError("f_p needs p in [0, 1]");
    if (!(std::abs(x) < 0.5)) throw DomainError("f_p needs |x| < 1/2");
    if (x == 0) return 1 - p;
    return std::abs(std::atanh(2 * (1 - p) * x)) / std::abs(std::atanh(2 * x));
}

EntropyUpperReport entropy_upper_check(const QuantumChannel& channel, const SeminormSpec& spec,
                                       int samples, std::uint64_t seed, const AscentOptions& ascent) {
    EntropyUpperReport rep;
    const DensityMatrix sigma = fixed_state(channel);
    rep.eta_lower = entropy_contraction_sample(channel, sigma, samples, seed).ratio;
    LipOptions lo;
    lo.ascent = ascent;
    lo.ascent.seed = seed;
    lo.compute_upper = false;
    const Superoperator heis = channel.heisenberg_superop();
    const Superoperator bkm = bkm_dual(channel, sigma);
    rep.lip_heisenberg = lip(heis, spec, lo).lower;
    rep.lip_bkm = lip(bkm, spec, lo).lower;
    rep.lip_composite = lip(heis.after(bkm), spec, lo).lower;
    rep.loglip = loglip_sample(channel, sigma, spec, samples, seed).ratio;
    rep.rhs_factored = rep.lip_heisenberg * std::max(rep.lip_bkm, rep.loglip);
    rep.rhs_composite = std::max(rep.lip_composite, rep.lip_heisenberg * rep.loglip);
    rep.holds = rep.eta_lower <= rep.rhs_factored * (1 + 1e-6) + 1e-12;
    return rep;
}

}  // namespace qot
