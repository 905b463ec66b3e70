#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qot/group_table.hpp"
#include "qot/report.hpp"
#include "qot/seminorm.hpp"
#include "qot/transport.hpp"

namespace qot {

/// Exact non-negative-denominator fraction in lowest terms.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    static Rational make(std::int64_t n, std::int64_t d);
    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    std::string str() const;  // "n/d"
    bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
};

/// Cayley-graph distance from the identity (BFS over left multiplication by generators).
std::vector<int> word_lengths(const FiniteGroupTable& g);
Rational mean_word_length(const FiniteGroupTable& g);

struct GroupCostReport {
    Rational value;
    std::vector<double> witness;  // l - mean
    double witness_ratio = 0;   // ||f - E f||_inf / Lip(f) at the witness
};

/// Transport cost of the averaging map on L_inf(G), exact: max over base points x of the mean
/// distance from x. The witness is d(x, .) minus its mean.
GroupCostReport group_cost_efix(const FiniteGroupTable& g);

/// Cost of the translation f -> f(g .) equals l(g); the second value is max_h d(gh, h)
/// computed directly from the metric.
std::pair<int, int> translation_cost(const FiniteGroupTable& g, int element);

/// L_inf(G) embedded as diagonal matrices in M_|G| with resources the left-regular permutations.
struct EmbeddedGroup {
    SeminormSpec spec;                 // lambda_s, Linf
    std::vector<Matrix> diagonal_basis;  // HS-orthonormal basis of real diagonals
};

EmbeddedGroup embed_commutative(const FiniteGroupTable& g);
Matrix diagonal_of(const std::vector<double>& f);

/// Quantum ascent estimate of Cost(E_fix) on the embedded diagonal algebra.
CostReport quantum_group_cost(const FiniteGroupTable& g, const AscentOptions& opts);

}  // namespace qot
