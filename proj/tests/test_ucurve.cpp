#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "test_util.hpp"

using namespace tautchern;
using testutil::space_of;

namespace {

MonomialSum unit_sum() {
    MonomialSum out;
    add_monomial(out, UMonomial{}, Rational(1));
    return out;
}

MonomialSum apply_all(const MarkedSpace& space, const std::vector<Factor>& factors) {
    MonomialSum cur = unit_sum();
    for (const auto& f : factors) cur = mul_sum(space, cur, f);
    return cur;
}

TautClass push_sum(const MarkedSpace& space, const MonomialSum& sum) {
    TautClass out(space);
    for (const auto& [key, entry] : sum) {
        TautClass part = push_forward(space, entry.first);
        part *= entry.second;
        out += part;
    }
    return out;
}

bool sums_equal(const MonomialSum& a, const MonomialSum& b) {
    if (a.size() != b.size()) return false;
    for (const auto& [key, entry] : a) {
        auto it = b.find(key);
        if (it == b.end() || !(it->second.second == entry.second)) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("divisor spec") {
    auto space = space_of(2, 2);
    auto d = DivisorSpec::make(space, 2, {{"1", 3}, {"2", -1}}, {});
    CHECK(d.total_degree() == 2 * 2 + 3 - 1);
    CHECK(d.d_of("2") == -1);
    CHECK(d.a_of(Bipartition{1, {"1"}}) == 0);
    CHECK_THROWS_AS(DivisorSpec::make(space, 0, {{"9", 1}}, {}), std::invalid_argument);
    CHECK_THROWS_AS(DivisorSpec::make(space, 0, {}, {{Bipartition{0, {"1"}}, 1}}),
                    std::invalid_argument);
}

TEST_CASE("boundary products: incomparable kill, equal pair excesses") {
    auto space = space_of(2, 2);
    Bipartition lo{0, {"1", "2"}}, mid{1, {"1"}};

    auto dead = apply_all(space, {Factor::boundary(lo), Factor::boundary(mid)});
    CHECK(dead.empty());

    auto square = apply_all(space, {Factor::boundary(mid), Factor::boundary(mid)});
    REQUIRE(square.size() == 2);
    for (const auto& [key, entry] : square) {
        CHECK(entry.second == Rational(-1));
        CHECK(entry.first.chain.size() == 1);
        CHECK(entry.first.chain[0].psi_in + entry.first.chain[0].psi_out == 1);
    }
}

TEST_CASE("section and K relations") {
    auto space = space_of(2, 2);
    int p1 = space.marking_index("1"), p2 = space.marking_index("2");

    CHECK(apply_all(space, {Factor::sigma(p1), Factor::sigma(p2)}).empty());
    CHECK(apply_all(space, {Factor::k(), Factor::sigma(p1)}).empty());
    CHECK(apply_all(space, {Factor::sigma(p1), Factor::k()}).empty());

    auto sq = apply_all(space, {Factor::sigma(p1), Factor::sigma(p1)});
    REQUIRE(sq.size() == 1);
    CHECK(sq.begin()->second.first.sigma_pow == 2);

    // A section dies on every boundary component containing its marking.
    Bipartition b{1, {"1"}};
    CHECK(apply_all(space, {Factor::sigma(p1), Factor::boundary(b)}).empty());
    CHECK(apply_all(space, {Factor::boundary(b), Factor::sigma(p1)}).empty());
    CHECK(apply_all(space, {Factor::boundary(b), Factor::sigma(p2)}).size() == 1);
}

TEST_CASE("monomial products commute across orderings") {
    auto space = space_of(3, 2);
    auto bips = stable_bipartitions(space);
    std::vector<Factor> pool{Factor::k(), Factor::sigma(0), Factor::sigma(1)};
    for (const auto& b : bips) pool.push_back(Factor::boundary(b));

    std::mt19937 rng(5);
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    for (int trial = 0; trial < 300; ++trial) {
        Factor f1 = pool[pick(rng)], f2 = pool[pick(rng)], f3 = pool[pick(rng)];
        auto abc = apply_all(space, {f1, f2, f3});
        auto acb = apply_all(space, {f1, f3, f2});
        auto cab = apply_all(space, {f3, f1, f2});
        CHECK(sums_equal(abc, acb));
        CHECK(sums_equal(abc, cab));
    }
}

TEST_CASE("push forward: sections") {
    auto space = space_of(2, 2);
    int p2 = space.marking_index("2");

    UMonomial sigma1;
    sigma1.sigma_marking = p2;
    sigma1.sigma_pow = 1;
    CHECK(push_forward(space, sigma1) == fundamental_class(space));

    UMonomial sigma3 = sigma1;
    sigma3.sigma_pow = 3;
    TautClass expect = attach_leg_psi(fundamental_class(space), "2", 2);
    CHECK(push_forward(space, sigma3) == expect);  // (-1)^{b-1} with b = 3

    UMonomial sigma2 = sigma1;
    sigma2.sigma_pow = 2;
    TautClass neg = attach_leg_psi(fundamental_class(space), "2", 1) * Rational(-1);
    CHECK(push_forward(space, sigma2) == neg);
}

TEST_CASE("push forward: K powers and the fundamental monomial") {
    auto space = space_of(2, 2);
    UMonomial k2;
    k2.k_exp = 2;
    CHECK(push_forward(space, k2) == kappa_class(space, 1));

    UMonomial k1;
    k1.k_exp = 1;
    CHECK(push_forward(space, k1) == fundamental_class(space) * Rational(2 * 2 - 2 + 2));

    CHECK(push_forward(space, UMonomial{}).is_zero());
}

TEST_CASE("push forward: bare chains shift the outer exponent") {
    auto space = space_of(2, 2);
    Bipartition b{1, {"1"}};
    UMonomial flat;
    flat.chain.push_back({b, 0, 0});
    CHECK(push_forward(space, flat).is_zero());

    UMonomial tall;
    tall.chain.push_back({b, 1, 2});
    TautClass expect(space);
    expect.add(chain_graph(space, {b}, {{1, 1}}), Rational(1));
    CHECK(push_forward(space, tall) == expect);
}

TEST_CASE("push forward drops codimension by one on random products") {
    auto space = space_of(3, 2);
    auto bips = stable_bipartitions(space);
    std::vector<Factor> pool{Factor::k(), Factor::sigma(0), Factor::sigma(1)};
    for (const auto& b : bips) pool.push_back(Factor::boundary(b));
    std::mt19937 rng(17);
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    std::uniform_int_distribution<int> len(1, 5);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<Factor> word;
        for (int i = 0, n = len(rng); i < n; ++i) word.push_back(pool[pick(rng)]);
        for (const auto& [key, entry] : apply_all(space, word)) {
            TautClass pushed = push_forward(space, entry.first);
            CHECK(pushed.pure_codim(entry.first.codim() - 1));
        }
    }
}

TEST_CASE("iterated boundary powers match the closed signed-binomial forms") {
    auto space = space_of(3, 2);
    for (const auto& b : stable_bipartitions(space)) {
        for (int k = 1; k <= 4; ++k) {
            std::vector<Factor> word(static_cast<std::size_t>(k), Factor::boundary(b));
            auto monomials = apply_all(space, word);

            // Pushforward of C^k alone.
            CHECK(push_sum(space, monomials) == bold_z(space, {b}, {k}, -1));

            // With one section off the support: the plain aggregate.
            int off = -1;
            for (int p = 0; p < space.marking_count(); ++p)
                if (!b.contains(space.markings[p])) off = p;
            if (off >= 0) {
                auto with_sigma = mul_sum(space, monomials, Factor::sigma(off));
                CHECK(push_sum(space, with_sigma) == bold_x(space, {b}, {k}));
            }

            // With one K: kappa_0 on the terminal vertex.
            auto with_k = mul_sum(space, monomials, Factor::k());
            CHECK(push_sum(space, with_k) == bold_z(space, {b}, {k}, 0));
        }
    }
}

TEST_CASE("node pushforward: the three separating cases and the loop") {
    auto space = space_of(2, 2);
    Bipartition lo{1, {"1"}}, hi{1, {"1", "2"}}, other{0, {"1", "2"}};

    // Empty chain: a separating node is the plain boundary class.
    CHECK(push_forward_node(space, NodeClass{false, lo, 0, 0}, UMonomial{}) ==
          boundary_class(space, lo));
    // Empty chain, loop node.
    CHECK(push_forward_node(space, NodeClass{true, {}, 0, 0}, UMonomial{}) ==
          irreducible_boundary(space));

    UMonomial chain;
    chain.chain.push_back({lo, 0, 0});

    // Strictly above: append.
    TautClass above = push_forward_node(space, NodeClass{false, hi, 1, 0}, chain);
    CHECK(above == bold_x_tilde(space, {lo}, hi, {1}, 1, 0));

    // Equal with exhausted outer exponent: merge with a sign.
    TautClass merged = push_forward_node(space, NodeClass{false, lo, 1, 0}, chain);
    TautClass expect(space);
    expect.add(chain_graph(space, {lo}, {{2, 0}}), Rational(-1));
    CHECK(merged == expect);

    // Equal but outer exponent left: dead.
    UMonomial raised = chain;
    raised.chain[0].psi_out = 1;
    CHECK(push_forward_node(space, NodeClass{false, lo, 0, 0}, raised).is_zero());

    // Below or incomparable: dead.
    CHECK(push_forward_node(space, NodeClass{false, other, 0, 0}, chain).is_zero());

    // Loop against a chain.
    TautClass y = push_forward_node(space, NodeClass{true, {}, 0, 1}, chain);
    CHECK(y == bold_y_tilde(space, {lo}, {1}, 0, 1));
}

TEST_CASE("node monomials refuse further multiplication and plain pushforward") {
    auto space = space_of(2, 2);
    UMonomial m;
    m.node = NodeClass{true, {}, 0, 0};
    CHECK_THROWS_AS(mul_umonomial(space, m, Factor::k()), std::invalid_argument);
    CHECK_THROWS_AS(push_forward(space, m), std::invalid_argument);
}
