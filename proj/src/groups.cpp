#include "qot/groups.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>

#include "qot/errors.hpp"

namespace qot {

Rational Rational::make(std::int64_t n, std::int64_t d) {
    if (d == 0) throw DomainError("rational with zero denominator");
    if (d < 0) {
        n = -n;
        d = -d;
    }
    const std::int64_t g = std::gcd(n < 0 ? -n : n, d);
    return {n / g, d / g};
}

std::string Rational::str() const { return std::to_string(num) + "/" + std::to_string(den); }

std::vector<int> word_lengths(const FiniteGroupTable& g) {
    std::vector<int> len(g.order(), -1);
    std::queue<int> q;
    len[g.identity()] = 0;
    q.push(g.identity());
    while (!q.empty()) {
        const int x = q.front();
        q.pop();
        for (int s : g.generators()) {
            const int y = g.mul(s, x);
            if (len[y] < 0) {
                len[y] = len[x] + 1;
                q.push(y);
            }
        }
    }
    return len;
}

Rational mean_word_length(const FiniteGroupTable& g) {
    auto len = word_lengths(g);
    return Rational::make(std::accumulate(len.begin(), len.end(), std::int64_t{0}), g.order());
}

namespace {

// Cayley-graph distances d(x, .) from x, edges y -> s y.
std::vector<int> distances_from(const FiniteGroupTable& g, int x) {
    std::vector<int> dist(g.order(), -1);
    std::queue<int> q;
    dist[x] = 0;
    q.push(x);
    while (!q.empty()) {
        const int y = q.front();
        q.pop();
        for (int s : g.generators()) {
            const int z = g.mul(s, y);
            if (dist[z] < 0) {
                dist[z] = dist[y] + 1;
                q.push(z);
            }
        }
    }
    return dist;
}

}  // namespace

GroupCostReport group_cost_efix(const FiniteGroupTable& g) {
    // For 1-Lipschitz f, |f(x) - mean f| <= mean_y d(x, y), with equality at f = d(x, .).
    // The supremum is therefore max_x mean_y d(x, y), computed over every base point.
    GroupCostReport rep;
    const int n = g.order();
    std::int64_t best = -1;
    std::vector<int> arg;
    for (int x = 0; x < n; ++x) {
        auto dist = distances_from(g, x);
        const std::int64_t total = std::accumulate(dist.begin(), dist.end(), std::int64_t{0});
        if (total > best) {
            best = total;
            arg = std::move(dist);
        }
    }
    rep.value = Rational::make(best, n);
    const double mean = rep.value.value();
    for (int l : arg) rep.witness.push_back(l - mean);
    double sup = 0;
    for (double v : rep.witness) sup = std::max(sup, std::abs(v));
    rep.witness_ratio = sup / group_seminorm(g, rep.witness);
    return rep;
}

std::pair<int, int> translation_cost(const FiniteGroupTable& g, int element) {
    if (element < 0 || element >= g.order()) throw DomainError("group element out of range");
    const auto len = word_lengths(g);
    // Generators act on the left, so d(x, y) = l(y x^-1) and d(gh, h) = l(g^-1).
    int direct = 0;
    for (int h = 0; h < g.order(); ++h)
        direct = std::max(direct, len[g.mul(h, g.inverse(g.mul(element, h)))]);
    return {len[element], direct};
}

Matrix diagonal_of(const std::vector<double>& f) {
    Matrix m = Matrix::Zero(static_cast<Eigen::Index>(f.size()), static_cast<Eigen::Index>(f.size()));
    for (std::size_t i = 0; i < f.size(); ++i) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = f[i];
    return m;
}

EmbeddedGroup embed_commutative(const FiniteGroupTable& g) {
    const int n = g.order();
    if (n > 12) throw DomainError("embedding supports group order <= 12");
    EmbeddedGroup out;
    out.spec.resource.dim = n;
    for (int s : g.generators()) {
        Matrix p = Matrix::Zero(n, n);
        for (int h = 0; h < n; ++h) p(g.mul(s, h), h) = 1.0;  // lambda_s e_h = e_{sh}
        out.spec.resource.elements.push_back(p);
        out.spec.resource.labels.push_back("lambda_" + std::to_string(s));
    }
    for (int h = 0; h < n; ++h) {
        Matrix e = Matrix::Zero(n, n);
        e(h, h) = 1.0;
        out.diagonal_basis.push_back(e);
    }
    return out;
}

CostReport quantum_group_cost(const FiniteGroupTable& g, const AscentOptions& opts) {
    EmbeddedGroup emb = embed_commutative(g);
    CostOptions co;
    co.ascent = opts;
    co.compute_upper = false;
    co.search_basis = emb.diagonal_basis;
    return expected_length(emb.spec, co);
}

}  // namespace qot
