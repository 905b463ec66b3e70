#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "qot/channel.hpp"
#include "qot/linalg.hpp"
#include "qot/seminorm.hpp"

namespace qot {

/// Real subspace of Hermitian matrices with an HS-orthonormal basis.
struct ObservableSpace {
    int dim = 0;
    std::vector<Matrix> basis;

    int size() const { return static_cast<int>(basis.size()); }
    Matrix compose(const RealVector& x) const;
    RealVector coords(const Matrix& h) const;
};

/// Orthonormal basis of span(within) minus span(remove). within defaults to all Hermitian d x d.
ObservableSpace complement_space(int dim, const std::vector<Matrix>& remove,
                                 const std::vector<Matrix>* within = nullptr);

/// Linear map together with its HS adjoint.
struct LinearMap {
    std::function<Matrix(const Matrix&)> forward;
    std::function<Matrix(const Matrix&)> adjoint;
};

LinearMap identity_map();
/// id_n (x) S
LinearMap superop_map(const Superoperator& s, int amplification = 1);
/// a - b
LinearMap difference(const LinearMap& a, const LinearMap& b);

/// Convex, positively homogeneous function of a Hermitian matrix with a subgradient.
class Functional {
public:
    virtual ~Functional() = default;
    /// Writes H with dF = tr(H dX) when grad is non-null.
    virtual double eval(const Matrix& x, Matrix* grad) const = 0;
};

/// ||L(X)||_op
class OpNormFunctional : public Functional {
public:
    explicit OpNormFunctional(LinearMap l) : l_(std::move(l)) {}
    double eval(const Matrix& x, Matrix* grad) const override;

private:
    LinearMap l_;
};

/// |||L(X)||| for a commutator seminorm.
class SeminormFunctional : public Functional {
public:
    explicit SeminormFunctional(SeminormSpec spec, LinearMap l = identity_map())
        : spec_(std::move(spec)), l_(std::move(l)) {}
    double eval(const Matrix& x, Matrix* grad) const override;

private:
    SeminormSpec spec_;
    LinearMap l_;
};

/// tr(f X), f Hermitian.
class LinearFunctional : public Functional {
public:
    explicit LinearFunctional(Matrix f) : f_(std::move(f)) {}
    double eval(const Matrix& x, Matrix* grad) const override;

private:
    Matrix f_;
};

struct AscentOptions {
    int restarts = 200;
    int iterations = 500;
    double step = 0.1;
    std::uint64_t seed = 0;
    bool polish = true;
};

struct AscentResult {
    double value = 0;
    Matrix witness;                   // HS-unit-norm maximizer
    std::vector<double> restart_values;
    std::vector<Matrix> endpoints;    // best point of every restart
    double gap = 1e-2;                // stagnation heuristic, relative
};

/// Maximizes num(X)/den(X) over unit X in the space by projected subgradient ascent with
/// step `step`/sqrt(k), random restarts, and a pattern-search polish of every restart.
/// Extra starts are used first, then random Gaussian directions.
AscentResult maximize_ratio(const ObservableSpace& space, const Functional& num,
                            const Functional& den, const AscentOptions& opts,
                            const std::vector<Matrix>& starts = {});

/// Ratio at a single matrix; 0 when both vanish, +inf when only the denominator does.
double ratio_at(const Functional& num, const Functional& den, const Matrix& x);

/// Stagnation rule: 1e-4 if 50 consecutive restarts improved the running best by < 1e-6
/// relative, else 1e-2.
double stagnation_gap(const std::vector<double>& restart_values);

}  // namespace qot
