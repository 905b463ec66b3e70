#include <doctest.h>

#include <numeric>
#include <set>

#include "qot/errors.hpp"
#include "qot/groups.hpp"

using namespace qot;

namespace {

// Word lengths by enumerating products of k generators, independent of the BFS queue.
std::vector<int> lengths_by_words(const FiniteGroupTable& g) {
    std::vector<int> len(g.order(), -1);
    std::set<int> frontier = {g.identity()};
    len[g.identity()] = 0;
    for (int k = 1; k <= g.order(); ++k) {
        std::set<int> next;
        for (int x : frontier)
            for (int s : g.generators()) next.insert(g.mul(s, x));
        for (int y : next)
            if (len[y] < 0) len[y] = k;
        frontier = std::move(next);
    }
    return len;
}

}  // namespace

TEST_CASE("word lengths of small groups") {
    CHECK(word_lengths(cyclic_group(4)) == std::vector<int>{0, 1, 2, 1});
    CHECK(word_lengths(symmetric_group(3)) == std::vector<int>{0, 1, 1, 2, 2, 3});
    for (const auto& g : {cyclic_group(7), dihedral_group(5), symmetric_group(4)})
        CHECK(word_lengths(g) == lengths_by_words(g));
}

TEST_CASE("rational arithmetic") {
    CHECK(Rational::make(6, 4) == Rational{3, 2});
    CHECK(Rational::make(-2, -4).str() == "1/2");
    CHECK(Rational::make(0, 5).str() == "0/1");
    CHECK_THROWS_AS(Rational::make(1, 0), DomainError);
}

TEST_CASE("cost of the averaging map equals the mean word length") {
    CHECK(mean_word_length(cyclic_group(4)).str() == "1/1");
    CHECK(mean_word_length(cyclic_group(5)).str() == "6/5");
    CHECK(mean_word_length(dihedral_group(4)).str() == "3/2");
    for (const auto& g : {cyclic_group(2), cyclic_group(9), cyclic_group(12), dihedral_group(4),
                          symmetric_group(3), symmetric_group(4)}) {
        GroupCostReport r = group_cost_efix(g);
        CHECK(r.value == mean_word_length(g));
        CHECK(r.witness_ratio == doctest::Approx(r.value.value()).epsilon(1e-12));
        CHECK(std::accumulate(r.witness.begin(), r.witness.end(), 0.0) == doctest::Approx(0.0));
    }
}

TEST_CASE("translation cost is the word length") {
    for (const auto& g : {dihedral_group(4), symmetric_group(3), cyclic_group(6)}) {
        auto len = word_lengths(g);
        for (int x = 0; x < g.order(); ++x) {
            auto [cost, direct] = translation_cost(g, x);
            CHECK(cost == len[x]);
            CHECK(direct == len[x]);
        }
    }
    CHECK(translation_cost(symmetric_group(3), 0).first == 0);
    CHECK_THROWS_AS(translation_cost(cyclic_group(3), 3), DomainError);
}

TEST_CASE("quantum embedding reproduces the mean") {
    AscentOptions o{40, 300, 0.1, 0, true};
    for (const auto& g : {cyclic_group(3), cyclic_group(4), symmetric_group(3)}) {
        const double q = quantum_group_cost(g, o).lower;
        CHECK(q == doctest::Approx(mean_word_length(g).value()).epsilon(0.02));
    }
    EmbeddedGroup e = embed_commutative(cyclic_group(4));
    CHECK(e.spec.resource.elements.size() == 2);
    CHECK((diagonal_of({0, 1, 2, 1}) - e.diagonal_basis[1] - 2 * e.diagonal_basis[2] - e.diagonal_basis[3]).norm() == 0);
}

TEST_CASE("group table validation") {
    CHECK_THROWS_AS(FiniteGroupTable({{0, 1}, {1, 1}}, 0, {1}), StructuralError);
    CHECK_THROWS_AS(FiniteGroupTable({{0, 1}, {1, 0}}, 0, {}), StructuralError);
    CHECK_THROWS_AS(FiniteGroupTable({{0, 1}, {1, 0}}, 0, {0}), StructuralError);
    // Z4 generated by 1 alone is not symmetric.
    CHECK_THROWS_AS(FiniteGroupTable({{0, 1, 2, 3}, {1, 2, 3, 0}, {2, 3, 0, 1}, {3, 0, 1, 2}}, 0, {1}),
                    StructuralError);
    CHECK(parse_group_spec("dn:4").order() == 8);
    CHECK(parse_group_spec("s4").order() == 24);
    CHECK_THROWS_AS(parse_group_spec("zn:x"), InputError);
    CHECK_THROWS_AS(parse_group_spec("zn:1"), DomainError);
    FiniteGroupTable z5 = cyclic_group(5);
    FiniteGroupTable back = group_from_json(group_to_json(z5));
    CHECK(word_lengths(back) == word_lengths(z5));
}
