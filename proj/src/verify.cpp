#include "qot/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <functional>

#include "qot/contraction.hpp"
#include "qot/errors.hpp"
#include "qot/geometry.hpp"
#include "qot/groups.hpp"
#include "qot/mixing.hpp"
#include "qot/transport.hpp"

namespace qot {

namespace {

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

SeminormSpec pauli_linf() { return {pauli_resources(), SeminormKind::Linf, 1}; }

ResourceSet gell_mann(int d) {
    ResourceSet r;
    r.dim = d;
    r.elements = hermitian_basis(d, false);
    for (std::size_t i = 0; i < r.elements.size(); ++i) r.labels.push_back("g" + std::to_string(i + 1));
    return r;
}

const double kGrid[] = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};

struct Outcome {
    bool passed;
    std::string detail;
};

// Word-length theorem: exact rational agreement, quantum embedding within 2%.
Outcome group_word_length(std::uint64_t seed) {
    std::vector<std::pair<std::string, FiniteGroupTable>> groups;
    for (int n = 2; n <= 12; ++n) groups.emplace_back("Z" + std::to_string(n), cyclic_group(n));
    groups.emplace_back("D4", dihedral_group(4));
    groups.emplace_back("S3", symmetric_group(3));
    groups.emplace_back("S4", symmetric_group(4));
    AscentOptions opts{40, 300, 0.1, seed, true};
    int exact_fail = 0, embed_fail = 0, embedded = 0;
    double worst_rel = 0;
    std::string worst;
    for (const auto& [name, g] : groups) {
        GroupCostReport r = group_cost_efix(g);
        if (!(r.value == mean_word_length(g)) || std::abs(r.witness_ratio - r.value.value()) > 1e-12)
            ++exact_fail;
        if (g.order() > 8) continue;
        ++embedded;
        const double q = quantum_group_cost(g, opts).lower;
        const double rel = std::abs(q - r.value.value()) / r.value.value();
        if (rel > worst_rel) {
            worst_rel = rel;
            worst = name;
        }
        if (rel > 0.02) ++embed_fail;
    }
    return {exact_fail == 0 && embed_fail == 0,
            fmt("%zu groups exact (%d mismatches); %d embedded, worst rel err %.2e (%s)", groups.size(),
                exact_fail, embedded, worst_rel, worst.c_str())};
}

Outcome pauli_closed_form(std::uint64_t seed) {
    const SeminormSpec spec = pauli_linf();
    double worst = 0;
    for (int i = 0; i < 1000; ++i) {
        Rng rng = make_rng(seed, static_cast<std::uint64_t>(i));
        HermitianMatrix x = random_hermitian(rng, 2);
        auto v = pauli_decompose(x);
        const double closed = 2 * std::max({std::hypot(v.v1, v.v2), std::hypot(v.v2, v.v3),
                                            std::hypot(v.v1, v.v3)});
        worst = std::max(worst, std::abs(seminorm(spec, x.matrix()) - closed));
    }
    return {worst <= 1e-10, fmt("1000 samples, max |eig - closed| = %.2e", worst)};
}

Outcome depolarizing_exact(std::uint64_t seed) {
    double worst = 0;
    int lip_fail = 0;
    for (int d : {2, 3}) {
        const SeminormSpec spec{d == 2 ? pauli_resources() : gell_mann(d), SeminormKind::Linf, 1};
        for (double p : {0.0, 0.25, 0.5, 0.75, 1.0}) {
            QuantumChannel ch = depolarizing(d, p);
            for (int i = 0; i < 200; ++i) {
                Rng rng = make_rng(seed, static_cast<std::uint64_t>(1000 * d + i));
                Matrix x = random_hermitian(rng, d).matrix();
                x /= op_norm(x);
                const double lhs = seminorm(spec, ch.heisenberg(x));
                worst = std::max(worst, std::abs(lhs - (1 - p) * seminorm(spec, x)));
            }
            LipOptions lo;
            lo.ascent.seed = seed;
            CostReport l = lip(ch.heisenberg_superop(), spec, lo);
            if (std::abs(l.lower - (1 - p)) > 1e-12 || l.gap != 0 || l.upper != l.lower) ++lip_fail;
        }
    }
    return {worst <= 1e-10 && lip_fail == 0,
            fmt("max seminorm defect %.2e over 2000 X; lip mismatches %d/10", worst, lip_fail)};
}

Outcome lambda2_depolarizing(std::uint64_t) {
    double worst = 0;
    for (double p : kGrid) {
        Lambda2Report r = bkm_lambda2(depolarizing(2, p));
        worst = std::max(worst, std::abs(r.lambda2 - (1 - p) * (1 - p)));
    }
    return {worst <= 1e-8, fmt("max |lambda2 - (1-p)^2| = %.2e over 9 values", worst)};
}

Outcome entropy_contraction(std::uint64_t seed) {
    const DensityMatrix sigma(identity(2) / 2.0);
    double worst = -kInf;
    for (double p : {0.1, 0.25, 0.5, 0.75, 0.9}) {
        EntropySample s = entropy_contraction_sample(depolarizing(2, p), sigma, 10000, seed);
        worst = std::max(worst, s.ratio - (1 - p) * (1 - p));
    }
    return {worst <= 1e-8, fmt("5 x 10^4 states, max ratio - (1-p)^2 = %.3e", worst)};
}

Outcome f_p_suite(std::uint64_t) {
    double even = 0, limit = 0;
    int nonmono = 0;
    for (double p : {0.1, 0.25, 0.5, 0.75, 0.9}) {
        double prev = kInf;
        for (int i = 1; i <= 1000; ++i) {
            const double x = 0.5 * i / 1001.0;
            const double v = f_p(p, x);
            even = std::max(even, std::abs(v - f_p(p, -x)));
            if (v > prev) ++nonmono;
            prev = v;
        }
        limit = std::max(limit, std::abs(f_p(p, 1e-6) - (1 - p)));
    }
    return {even < 1e-12 && nonmono == 0 && limit <= 1e-5,
            fmt("evenness %.2e, monotonicity breaks %d, limit error %.2e", even, nonmono, limit)};
}

Outcome duality(std::uint64_t seed) {
    const SeminormSpec spec = pauli_linf();
    std::vector<std::pair<std::string, QuantumChannel>> chans;
    for (double p : {0.1, 0.25, 0.5, 0.75, 0.9}) chans.emplace_back(fmt("dep(%.2f)", p), depolarizing(2, p));
    for (int i = 0; i < 10; ++i) {
        Rng rng = make_rng(seed, 100 + static_cast<std::uint64_t>(i));
        chans.emplace_back(fmt("rand%d", i), random_unital_qubit_channel(rng));
    }
    CostOptions co;
    co.ascent = AscentOptions{60, 300, 0.1, seed, true};
    co.compute_upper = false;
    LipOptions lo;
    lo.ascent = co.ascent;
    lo.compute_upper = false;
    StatesOptions so;
    so.seed = seed;
    PairsOptions po;
    po.seed = seed;
    double worst_cost = 0, worst_lip = 0;
    std::string arg_cost, arg_lip;
    for (const auto& [name, ch] : chans) {
        const double a = cost(ch, spec, co).lower;
        const double b = cost_via_states(ch, spec, so).lower;
        const double rc = std::abs(a - b) / std::max(a, b);
        if (rc >= worst_cost) worst_cost = rc, arg_cost = name;
        const double la = lip(ch.heisenberg_superop(), spec, lo).lower;
        const double lb = contraction_via_states(ch, spec, po).lower;
        const double rl = std::abs(la - lb) / std::max(la, lb);
        if (rl >= worst_lip) worst_lip = rl, arg_lip = name;
    }
    return {worst_cost <= 0.02 && worst_lip <= 0.02,
            fmt("15 channels; worst cost rel %.2e (%s), worst lip rel %.2e (%s)", worst_cost,
                arg_cost.c_str(), worst_lip, arg_lip.c_str())};
}

Outcome pointwise(std::uint64_t seed) {
    struct Case {
        SeminormSpec spec;
        QuantumChannel phi, psi;
    };
    std::vector<Case> cases;
    for (int i = 0; i < 5; ++i) {
        Rng rng = make_rng(seed, 200 + static_cast<std::uint64_t>(i));
        SeminormSpec spec = i < 3 ? pauli_linf() : SeminormSpec{pauli_xy_resources(), SeminormKind::L2, 1};
        QuantumChannel phi = i == 0 ? depolarizing(2, 0.3) : random_unital_qubit_channel(rng);
        QuantumChannel psi = random_unital_qubit_channel(rng);
        cases.push_back({spec, phi, psi});
    }
    double worst = -kInf;
    int failed = 0, total = 0;
    for (std::size_t i = 0; i < cases.size(); ++i) {
        auto checks = pointwise_harness(cases[i].phi.heisenberg_superop(), cases[i].psi.heisenberg_superop(),
                                        cases[i].spec, 100, seed + i);
        for (const auto& c : checks) {
            worst = std::max(worst, c.worst_slack);
            if (!c.passed()) ++failed;
        }
        total += 100;
    }
    return {failed == 0, fmt("%d instances, worst slack %.2e, failed checks %d", total, worst, failed)};
}

// Additivity holds for complete costs. Maps into M_2 reach their cb norm at level 2, so the
// upper comparison uses local costs amplified by the other factor's dimension.
Outcome tensor_properties(std::uint64_t seed) {
    const SeminormSpec local = pauli_linf();
    const SeminormSpec local_cb{pauli_resources(), SeminormKind::Linf, 2};
    const SeminormSpec joint{join(pauli_resources(), pauli_resources()), SeminormKind::Linf, 1};
    CostOptions co;
    co.ascent = AscentOptions{40, 300, 0.1, seed, true};
    co.compute_upper = false;
    LipOptions lo;
    lo.ascent = co.ascent;
    lo.compute_upper = false;
    double worst_lower = kInf, worst_upper = -kInf, worst_lip = 0;
    for (auto [p1, p2] : {std::pair{0.5, 0.5}, std::pair{0.25, 0.75}, std::pair{0.1, 0.6}}) {
        QuantumChannel a = depolarizing(2, p1), b = depolarizing(2, p2);
        const Superoperator ha = a.heisenberg_superop(), hb = b.heisenberg_superop();
        CostReport ca = cost(a, local, co), cb = cost(b, local, co);
        Matrix fa = align_witness(ha, ca.witness), fb = align_witness(hb, cb.witness);
        fa /= seminorm(local, fa);
        fb /= seminorm(local, fb);
        const double sum = cost_ratio(ha, local, fa) + cost_ratio(hb, local, fb);
        const double sum_cb = cost(a, local_cb, co).lower + cost(b, local_cb, co).lower;
        QuantumChannel ab = tensor_channel(a, b);
        const Superoperator hab = ab.heisenberg_superop();
        const Matrix f = tensor_witness(fa, fb);
        worst_lower = std::min(worst_lower, cost_ratio(hab, joint, f) - sum);
        CostOptions jo = co;
        jo.starts = {f};
        worst_upper = std::max(worst_upper, cost(ab, joint, jo).lower - sum_cb * 1.02);
        const double lmax = std::max(lip(ha, local, lo).lower, lip(hb, local, lo).lower);
        worst_lip = std::max(worst_lip, std::abs(lip(hab, joint, lo).lower - lmax) / lmax);
    }
    return {worst_lower >= -1e-6 && worst_upper <= 0 && worst_lip <= 0.02,
            fmt("witness joint - sum >= %.2e; joint ascent - 1.02 sum(level-2 local) <= %.2e; "
                "lip rel err %.2e",
                worst_lower, worst_upper, worst_lip)};
}

Outcome cc_bound(std::uint64_t seed) {
    CCSummary s = cc_verify(100, seed, AscentOptions{30, 300, 0.1, seed, true});
    double worst = -kInf;
    for (const auto& x : s.samples) worst = std::max(worst, x.cost_lower - x.distance);
    return {s.violations == 0, fmt("100 samples, %d violations, max cost - distance %.3e", s.violations, worst)};
}

Outcome mixing_hierarchy(std::uint64_t seed) {
    const SeminormSpec spec = pauli_linf();
    const AscentOptions ao{16, 200, 0.1, seed, true};
    MixingOptions mo;
    mo.samples = 32;
    mo.seed = seed;
    int order_fail = 0, formula_fail = 0, prop_fail = 0, lower_fail = 0, bridge_fail = 0;
    double bridge_worst = 0;
    for (double p : kGrid) {
        QuantumChannel ch = depolarizing(2, p);
        BridgeReport br = lip_cost_bridge_check(ch, spec, ao);
        bridge_worst = std::max(bridge_worst, std::abs(br.slack));
        if (std::abs(br.slack) > 1e-6 || !br.holds) ++bridge_fail;
        LipOptions lo;
        lo.compute_upper = false;
        const double l = lip(ch.heisenberg_superop(), spec, lo).lower;
        for (double eps : {0.1, 0.01}) {
            const int tm = trace_mixing_time(ch, eps, mo).time;
            const int tr = return_time(ch, trace_expectation(2), eps).time;
            CostMixingReport cm = cost_mixing_time(ch, spec, eps, 10000, ao);
            const int ts = cm.mixing.time;
            if (tm < 0 || tr < 0 || ts < 0 || !(ts <= tm && tm <= tr)) ++order_fail;
            const int expected = static_cast<int>(std::ceil(std::log(1 / eps) / -std::log(1 - p)));
            if (std::abs(tm - expected) > 1) ++formula_fail;
            const double bound = std::ceil(std::log(1 / eps) / -std::log(l) * (1 - 1e-12));
            if (ts > bound) ++prop_fail;
            if (ts > 0 && cm.mixing.trace.front() < (1 - eps) * cm.kappa / ts - 1e-9) ++lower_fail;
        }
    }
    return {order_fail + formula_fail + prop_fail + lower_fail + bridge_fail == 0,
            fmt("18 grid points: order %d, formula %d, upper prop %d, lower prop %d, bridge %d failures; "
                "bridge max |slack| %.2e",
                order_fail, formula_fail, prop_fail, lower_fail, bridge_fail, bridge_worst)};
}

Outcome calculus(std::uint64_t seed) {
    double deriv = 0;
    for (int i = 0; i < 50; ++i) {
        Rng rng = make_rng(seed, 300 + static_cast<std::uint64_t>(i));
        const int d = 2 + i % 2;
        DensityMatrix rho = random_full_rank_state(rng, d, 0.05);
        DensityMatrix sigma = random_full_rank_state(rng, d, 0.05);
        Matrix h = random_hermitian(rng, d).matrix();
        h -= h.trace() / static_cast<double>(d) * identity(d);
        h /= trace_norm(h);
        const double t = 1e-4;
        const double fd = (relative_entropy(DensityMatrix(rho.matrix() + t * h), sigma).value -
                           relative_entropy(DensityMatrix(rho.matrix() - t * h), sigma).value) /
                          (2 * t);
        deriv = std::max(deriv, std::abs(fd - entropy_derivative(rho, h, sigma)));
    }
    double min_ratio = kInf;
    for (int i = 0; i < 20; ++i) {
        Rng rng = make_rng(seed, 400 + static_cast<std::uint64_t>(i));
        const int d = 2 + i % 2;
        DensityMatrix sigma = random_full_rank_state(rng, d, 0.05);
        Matrix x = random_hermitian(rng, d).matrix();
        x -= x.trace() / static_cast<double>(d) * identity(d);
        x /= trace_norm(x);
        const double c = second_order_coefficient(sigma, x);
        double prev = -1;
        for (double e : {1e-2, 5e-3, 2.5e-3}) {
            const double err =
                std::abs(relative_entropy(DensityMatrix(sigma.matrix() + e * x), sigma).value - e * e * c);
            if (prev > 0) min_ratio = std::min(min_ratio, prev / err);
            prev = err;
        }
    }
    int pinsker_fail = 0;
    for (int i = 0; i < 1000; ++i) {
        Rng rng = make_rng(seed, 1000 + static_cast<std::uint64_t>(i));
        const int d = 2 + i % 2;
        DensityMatrix rho = random_full_rank_state(rng, d);
        DensityMatrix sigma = random_full_rank_state(rng, d);
        const double dist = trace_norm(rho.matrix() - sigma.matrix());
        const double dv = relative_entropy(rho, sigma).value;
        const double upper = eig_hermitian(rho.hermitian()).values(d - 1) /
                             eig_hermitian(sigma.hermitian()).values(0) * dist;
        if (0.5 * dist * dist > dv + 1e-12 || dv > upper + 1e-12) ++pinsker_fail;
    }
    return {deriv <= 1e-5 && min_ratio >= 3.5 && pinsker_fail == 0,
            fmt("derivative err %.2e; min error ratio per halving %.2f; Pinsker failures %d/1000", deriv,
                min_ratio, pinsker_fail)};
}

Outcome index_formula(std::uint64_t seed) {
    int fail = 0;
    double worst = -kInf;
    auto check = [&](const ConditionalExpectation& e, const std::vector<Block>& blocks, double idx,
                     std::optional<double> cb) {
        IndexReport r = index(e, blocks, 2000, seed);
        if (!r.index || std::abs(*r.index - idx) > 1e-12) ++fail;
        if (cb && (!r.cb_index || std::abs(*r.cb_index - *cb) > 1e-12)) ++fail;
        worst = std::max(worst, r.sampled_lower - *r.index);
        if (r.sampled_lower > *r.index + 1e-8) ++fail;
    };
    for (int d : {2, 3, 4}) check(trace_expectation(d), {{1, d}}, d, static_cast<double>(d * d));
    Matrix e11 = Matrix::Zero(2, 2), e22 = Matrix::Zero(2, 2);
    e11(0, 0) = 1;
    e22(1, 1) = 1;
    check(ConditionalExpectation({e11, e22}), {{1, 1}, {1, 1}}, 2, 2.0);
    check(ConditionalExpectation(hermitian_basis(3, true)), {{3, 1}}, 1, 1.0);
    return {fail == 0, fmt("5 cases, %d mismatches; max sampled - formula %.2e", fail, worst)};
}

struct Entry {
    const char* name;
    Outcome (*run)(std::uint64_t);
    double budget;  // seconds; 0 means no runtime requirement
};

const Entry kCriteria[] = {
    {"word-length theorem", group_word_length, 10},
    {"pauli seminorm closed form", pauli_closed_form, 0},
    {"depolarizing exactness", depolarizing_exact, 0},
    {"bkm lambda2 depolarizing", lambda2_depolarizing, 0},
    {"entropy contraction bound", entropy_contraction, 30},
    {"f_p suite", f_p_suite, 0},
    {"duality consistency", duality, 0},
    {"pointwise inequalities", pointwise, 0},
    {"tensor additivity and maximality", tensor_properties, 0},
    {"cc distance bound", cc_bound, 0},
    {"mixing hierarchy and bridge", mixing_hierarchy, 60},
    {"analytic calculus", calculus, 0},
    {"index closed form", index_formula, 0},
};

}  // namespace

std::vector<int> suite_criteria(const std::string& suite) {
    if (suite == "all") return {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13};
    if (suite == "group") return {1};
    if (suite == "cost") return {2, 7, 8, 9, 13};
    if (suite == "lip") return {3};
    if (suite == "entropy") return {4, 5, 6, 12};
    if (suite == "geometry") return {10};
    if (suite == "mixing") return {11};
    if (suite.empty()) throw InputError("suite name is empty; expected all|cost|lip|entropy|group|geometry|mixing");
    throw InputError("unknown suite '" + suite + "'; expected all|cost|lip|entropy|group|geometry|mixing");
}

CriterionResult run_criterion(int id, std::uint64_t seed) {
    if (id < 1 || id > static_cast<int>(std::size(kCriteria)))
        throw InputError("criterion id out of range: " + std::to_string(id));
    const Entry& e = kCriteria[id - 1];
    CriterionResult r;
    r.id = id;
    r.name = e.name;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        Outcome o = e.run(seed);
        r.passed = o.passed;
        r.detail = o.detail;
    } catch (const std::exception& ex) {
        r.passed = false;
        r.detail = std::string("exception: ") + ex.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (e.budget > 0) {
        // Kept out of the detail otherwise so reports stay byte-identical across runs.
        if (r.seconds >= e.budget) {
            r.passed = false;
            r.detail += fmt("; runtime %.1fs exceeds %.0fs", r.seconds, e.budget);
        }
    }
    return r;
}

std::vector<CriterionResult> run_suite(const std::string& suite, std::uint64_t seed) {
    std::vector<CriterionResult> out;
    for (int id : suite_criteria(suite)) out.push_back(run_criterion(id, seed));
    return out;
}

}  // namespace qot
