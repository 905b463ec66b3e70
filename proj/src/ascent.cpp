#include "qot/ascent.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qot/errors.hpp"
#include "qot/parallel.hpp"

namespace qot {

Matrix ObservableSpace::compose(const RealVector& x) const {
    Matrix out = Matrix::Zero(dim, dim);
    for (int k = 0; k < size(); ++k) out += x(k) * basis[k];
    return out;
}

RealVector ObservableSpace::coords(const Matrix& h) const {
    RealVector out(size());
    for (int k = 0; k < size(); ++k) out(k) = hs_inner(basis[k], h).real();
    return out;
}

ObservableSpace complement_space(int dim, const std::vector<Matrix>& remove,
                                 const std::vector<Matrix>* within) {
    std::vector<Matrix> candidates = within ? *within : hermitian_basis(dim, true);
    std::vector<Matrix> kept = remove;
    ObservableSpace out{dim, {}};
    for (auto x : candidates) {
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& b : kept) x -= hs_inner(b, x).real() * b;
        const double n = x.norm();
        if (n > 1e-8) {
            x = hermitian_part(x / n);
            kept.push_back(x);
            out.basis.push_back(x);
        }
    }
    return out;
}

LinearMap identity_map() {
    auto id = [](const Matrix& x) { return x; };
    return {id, id};
}

LinearMap superop_map(const Superoperator& s, int amplification) {
    Superoperator adj = s.adjoint();
    return {[s, amplification](const Matrix& x) { return s.apply_amplified(x, amplification); },
            [adj, amplification](const Matrix& y) { return adj.apply_amplified(y, amplification); }};
}

LinearMap difference(const LinearMap& a, const LinearMap& b) {
    return {[a, b](const Matrix& x) -> Matrix { return a.forward(x) - b.forward(x); },
            [a, b](const Matrix& y) -> Matrix { return a.adjoint(y) - b.adjoint(y); }};
}

double OpNormFunctional::eval(const Matrix& x, Matrix* grad) const {
    Matrix m = l_.forward(x);
    if (!grad) return op_norm(m);
    TopSingular t = top_singular(m);
    *grad = hermitian_part(l_.adjoint(t.left * t.right.adjoint()));
    return t.value;
}

double SeminormFunctional::eval(const Matrix& x, Matrix* grad) const {
    Matrix y = l_.forward(x);
    if (!grad) return seminorm(spec_, y, nullptr);
    Matrix g;
    double v = seminorm(spec_, y, &g);
    *grad = hermitian_part(l_.adjoint(g));
    return v;
}

double LinearFunctional::eval(const Matrix& x, Matrix* grad) const {
    if (grad) *grad = f_;
    return (f_ * x).trace().real();
}

double ratio_at(const Functional& num, const Functional& den, const Matrix& x) {
    const double n = num.eval(x, nullptr);
    const double d = den.eval(x, nullptr);
    const double scale = std::max(1.0, x.norm());
    if (d <= 1e-13 * scale) return n <= 1e-13 * scale ? 0.0 : std::numeric_limits<double>::infinity();
    return n / d;
}

double stagnation_gap(const std::vector<double>& values) {
    double best = -std::numeric_limits<double>::infinity();
    int streak = 0, longest = 0;
    for (double v : values) {
        if (std::isfinite(best) && v <= best + 1e-6 * std::abs(best)) {
            ++streak;
        } else {
            streak = 0;
        }
        longest = std::max(longest, streak);
        best = std::max(best, v);
    }
    return longest >= 50 ? 1e-4 : 1e-2;
}

namespace {

struct Evaluator {
    const ObservableSpace& space;
    const Functional& num;
    const Functional& den;

    double value(const RealVector& x) const {
        Matrix m = space.compose(x);
        const double d = den.eval(m, nullptr);
        if (!(d > 1e-13)) return 0.0;
        return num.eval(m, nullptr) / d;
    }

    // Ratio and its tangent gradient on the unit sphere.
    double value_grad(const RealVector& x, RealVector& g) const {
        Matrix m = space.compose(x);
        Matrix gn, gd;
        const double d = den.eval(m, &gd);
        const double n = num.eval(m, &gn);
        if (!(d > 1e-13)) {
            g.setZero(x.size());
            return 0.0;
        }
        g = space.coords((gn * d - gd * n) / (d * d));
        g -= g.dot(x) * x;
        return n / d;
    }
};

RealVector random_unit(Rng& rng, int m) {
    std::normal_distribution<double> n(0.0, 1.0);
    RealVector x(m);
    for (int k = 0; k < m; ++k) x(k) = n(rng);
    const double nx = x.norm();
    return nx > 0 ? RealVector(x / nx) : RealVector(RealVector::Unit(m, 0));
}

void polish(const Evaluator& ev, RealVector& x, double& best, double radius, Rng& rng) {
    const int m = static_cast<int>(x.size());
    long budget = 60L * m + 400;
    while (radius > 1e-10 && budget > 0) {
        bool improved = false;
        std::vector<RealVector> dirs;
        RealVector g;
        ev.value_grad(x, g);
        if (g.norm() > 0) dirs.push_back(g / g.norm());
        for (int k = 0; k < m; ++k) {
            dirs.push_back(RealVector::Unit(m, k));
            dirs.push_back(-RealVector::Unit(m, k));
        }
        for (int k = 0; k < std::max(4, m); ++k) dirs.push_back(random_unit(rng, m));
        for (const auto& dvec : dirs) {
            if (budget-- <= 0) break;
            RealVector y = x + radius * dvec;
            y.normalize();
            const double v = ev.value(y);
            if (v > best) {
                best = v;
                x = y;
                improved = true;
                break;
            }
        }
        if (!improved) radius *= 0.5;
    }
}

}  // namespace

AscentResult maximize_ratio(const ObservableSpace& space, const Functional& num,
                            const Functional& den, const AscentOptions& opts,
                            const std::vector<Matrix>& starts) {
    const int m = space.size();
    AscentResult res;
    if (m == 0) {
        res.value = 0;
        res.witness = Matrix::Zero(space.dim, space.dim);
        res.gap = 0;
        return res;
    }
    const int restarts = std::max(1, opts.restarts);
    Evaluator ev{space, num, den};
    std::vector<double> values(restarts);
    std::vector<RealVector> bests(restarts);

    parallel_for(restarts, [&](int r) {
        Rng rng = make_rng(opts.seed, static_cast<std::uint64_t>(r));
        RealVector x;
        if (r < static_cast<int>(starts.size())) {
            x = space.coords(starts[r]);
            if (x.norm() < 1e-12) x = random_unit(rng, m);
            else x.normalize();
        } else {
            x = random_unit(rng, m);
        }
        RealVector best_x = x, g;
        double best = -1;
        for (int k = 1; k <= opts.iterations; ++k) {
            const double v = ev.value_grad(x, g);
            if (v > best) {
                best = v;
                best_x = x;
            }
            const double gn = g.norm();
            if (!(gn > 1e-15)) break;
            x += (opts.step / std::sqrt(static_cast<double>(k))) * g / gn;
            x.normalize();
        }
        if (opts.iterations <= 0) best = ev.value(x);
        if (opts.polish) {
            const double r0 = 2.0 * opts.step / std::sqrt(std::max(1, opts.iterations));
            polish(ev, best_x, best, r0, rng);
        }
        values[r] = best;
        bests[r] = best_x;
    });

    int arg = 0;
    for (int r = 1; r < restarts; ++r)
        if (values[r] > values[arg]) arg = r;
    res.value = values[arg];
    res.witness = space.compose(bests[arg]);
    res.restart_values = values;
    for (const auto& b : bests) res.endpoints.push_back(space.compose(b));
    res.gap = stagnation_gap(values);
    return res;
}

}  // namespace qot
