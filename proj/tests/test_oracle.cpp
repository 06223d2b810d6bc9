#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "tautchern/bernoulli.hpp"
#include "tautchern/chern.hpp"
#include "test_util.hpp"

using namespace tautchern;
using testutil::random_divisor;
using testutil::space_of;

TEST_CASE("oracle degree zero is d + 1 - g") {
    std::mt19937 rng(23);
    for (auto [g, n] : std::vector<std::pair<int, int>>{{1, 1}, {1, 2}, {2, 1}, {2, 2}}) {
        auto space = space_of(g, n);
        for (int trial = 0; trial < 10; ++trial) {
            DivisorSpec d = random_divisor(space, rng);
            GradedChernData ch = chern_char_oracle(d, 0);
            TautClass expect = fundamental_class(space) * Rational(d.total_degree() + 1 - g);
            CHECK(ch.component(0) == expect);
        }
    }
}

TEST_CASE("oracle degree one at the trivial divisor on the smallest space") {
    auto space = space_of(1, 1);
    DivisorSpec d = DivisorSpec::make(space, 0, {}, {});
    GradedChernData ch = chern_char_oracle(d, 1);

    TautClass expect = kappa_class(space, 1) * Rational(1, 12);
    expect += attach_leg_psi(fundamental_class(space), "1", 1) * Rational(-1, 12);
    expect += irreducible_boundary(space) * Rational(1, 12);
    CHECK(ch.component(1) == expect);
}

TEST_CASE("oracle: no multi-edge generators when the boundary part vanishes") {
    auto space = space_of(2, 2);
    DivisorSpec d = DivisorSpec::make(space, 2, {{"1", 1}, {"2", -2}}, {});
    GradedChernData ch = chern_char_oracle(d, space.dimension());
    for (const auto& [s, cls] : ch.ch)
        for (const auto& [key, term] : cls.terms()) CHECK(term.graph.edges.size() <= 1);
}

TEST_CASE("oracle truncation safety: lower degrees are stable under deeper expansion") {
    std::mt19937 rng(31);
    auto space = space_of(2, 2);
    for (int trial = 0; trial < 5; ++trial) {
        DivisorSpec d = random_divisor(space, rng, -2, 2);
        GradedChernData shallow = chern_char_oracle(d, 2);
        GradedChernData deep = chern_char_oracle(d, space.dimension());
        for (int s = 0; s <= 2; ++s) CHECK(shallow.component(s) == deep.component(s));
    }
}

TEST_CASE("oracle rejects out-of-range smax") {
    auto space = space_of(1, 1);
    DivisorSpec d = DivisorSpec::make(space, 0, {}, {});
    CHECK_THROWS_AS(chern_char_oracle(d, space.dimension() + 1), std::invalid_argument);
    CHECK_THROWS_AS(chern_char_oracle(d, -1), std::invalid_argument);
}

TEST_CASE("oracle worker count never changes the outcome") {
    std::mt19937 rng(37);
    auto space = space_of(2, 2);
    DivisorSpec d = random_divisor(space, rng);
    GradedChernData one = chern_char_oracle(d, 3, 1);
    GradedChernData four = chern_char_oracle(d, 3, 4);
    for (int s = 0; s <= 3; ++s) CHECK(one.component(s) == four.component(s));
}
