#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "tautchern/tautprod.hpp"
#include "test_util.hpp"

using namespace tautchern;
using testutil::space_of;

namespace {

// Small pool of one-edge, loop, chain and decorated single-vertex
// generators.
std::vector<TautClass> generator_pool(const MarkedSpace& space) {
    std::vector<TautClass> pool;
    pool.push_back(kappa_class(space, 1));
    pool.push_back(attach_leg_psi(fundamental_class(space), "1", 1));
    pool.push_back(irreducible_boundary(space));
    for (const auto& b : stable_bipartitions(space)) {
        pool.push_back(boundary_class(space, b));
        pool.push_back(attach_leg_psi(boundary_class(space, b), "1", 1));
        TautClass dec(space);
        dec.add(chain_graph(space, {b}, {{1, 0}}), Rational(1));
        pool.push_back(dec);
    }
    for (const auto& chain : enumerate_chains(space, 2)) {
        TautClass two(space);
        two.add(chain_graph(space, chain, {{0, 0}, {0, 0}}), Rational(1));
        pool.push_back(two);
        if (pool.size() > 24) break;
    }
    return pool;
}

}  // namespace

TEST_CASE("stable graph catalogs: the expected one-edge strata") {
    auto space = space_of(2, 2);
    auto graphs = stable_graphs(space, 1);
    // Trivial graph, three separating types, one loop.
    CHECK(graphs.size() == 5);
    auto deeper = stable_graphs(space, 2);
    CHECK(deeper.size() > graphs.size());
    for (const auto& g : deeper) {
        auto t = canonicalize(space, g);
        CHECK(t.canon.key == canonicalize(space, t.canon.graph).canon.key);
    }
}

TEST_CASE("fundamental class is the unit") {
    auto space = space_of(2, 2);
    for (const auto& gen : generator_pool(space)) {
        CHECK(gp_product(fundamental_class(space), gen) == gen);
        CHECK(gp_product(gen, fundamental_class(space)) == gen);
    }
}

TEST_CASE("single-vertex decorations multiply by merging") {
    auto space = space_of(2, 2);
    TautClass k1 = kappa_class(space, 1);
    TautClass k1k1 = gp_product(k1, k1);
    REQUIRE(k1k1.size() == 1);
    CHECK(k1k1.terms().begin()->second.graph.vertices[0].kappa == std::vector<int>{1, 1});

    TautClass psi = attach_leg_psi(fundamental_class(space), "2", 1);
    TautClass both = gp_product(k1, psi);
    REQUIRE(both.size() == 1);
    CHECK(both.terms().begin()->second.graph.leg_psi[space.marking_index("2")] == 1);
    CHECK(both.pure_codim(2));
}

TEST_CASE("boundary square: pure excess when no symmetric degeneration exists") {
    auto space = space_of(2, 2);
    Bipartition b{0, {"1", "2"}};
    TautClass sq = gp_product(boundary_class(space, b), boundary_class(space, b));
    TautClass expect(space);
    expect.add(chain_graph(space, {b}, {{1, 0}}), Rational(-1));
    expect.add(chain_graph(space, {b}, {{0, 1}}), Rational(-1));
    CHECK(sq == expect);
}

TEST_CASE("boundary square with a symmetric two-node degeneration") {
    auto space = space_of(2, 1);
    Bipartition b{1, {"1"}};
    TautClass sq = gp_product(boundary_class(space, b), boundary_class(space, b));

    TautClass expect(space);
    expect.add(chain_graph(space, {b}, {{1, 0}}), Rational(-1));
    expect.add(chain_graph(space, {b}, {{0, 1}}), Rational(-1));
    // The chain (1,emptyset) - (0,{1}) - (1,emptyset) carries both nodes of
    // type (1,{1}); the two branch orderings contribute coefficient 2.
    DecoratedGraph sym;
    GraphVertex mid, end1, end2;
    mid.genus = 0;
    mid.legs = {0};
    end1.genus = 1;
    end2.genus = 1;
    sym.vertices = {mid, end1, end2};
    GraphEdge e1, e2;
    e1.end[0] = {0, 0};
    e1.end[1] = {1, 0};
    e2.end[0] = {0, 0};
    e2.end[1] = {2, 0};
    sym.edges = {e1, e2};
    sym.leg_psi = {0};
    expect.add(sym, Rational(2));
    CHECK(sq == expect);
}

TEST_CASE("comparable boundary product: both transverse two-node strata") {
    auto space = space_of(2, 2);
    Bipartition lo{1, {"1"}}, hi{1, {"1", "2"}};
    TautClass prod = gp_product(boundary_class(space, lo), boundary_class(space, hi));
    TautClass expect(space);
    // The chain with middle (0,{2}), and the star whose center (0,{1})
    // meets both divisors through its two nodes.
    expect.add(chain_graph(space, {lo, hi}, {{0, 0}, {0, 0}}), Rational(1));
    DecoratedGraph star;
    GraphVertex center, left, right;
    center.genus = 0;
    center.legs = {space.marking_index("1")};
    left.genus = 1;
    right.genus = 1;
    right.legs = {space.marking_index("2")};
    star.vertices = {center, left, right};
    GraphEdge e1, e2;
    e1.end[0] = {0, 0};
    e1.end[1] = {1, 0};
    e2.end[0] = {0, 0};
    e2.end[1] = {2, 0};
    star.edges = {e1, e2};
    star.leg_psi = {0, 0};
    expect.add(star, Rational(1));
    CHECK(prod == expect);
}

TEST_CASE("incomparable boundaries: empty or the three-component tree") {
    auto narrow = space_of(2, 2);
    CHECK(gp_product(boundary_class(narrow, {0, {"1", "2"}}), boundary_class(narrow, {1, {"1"}}))
              .is_zero());

    // Compatible incomparable pair on three markings: unique tree, no excess.
    auto wide = space_of(2, 3);
    Bipartition s1{1, {"1", "2"}}, s2{1, {"1", "3"}};
    TautClass prod = gp_product(boundary_class(wide, s1), boundary_class(wide, s2));
    REQUIRE(prod.size() == 1);
    const auto& term = prod.terms().begin()->second;
    CHECK(term.coeff == Rational(1));
    CHECK(term.graph.vertices.size() == 3);
    CHECK(term.graph.edges.size() == 2);
    CHECK(prod.pure_codim(2));
}

TEST_CASE("kappa decorations distribute over the vertices above") {
    auto space = space_of(2, 2);
    Bipartition b{1, {"1"}};
    TautClass prod = gp_product(kappa_class(space, 1), boundary_class(space, b));
    TautClass expect(space);
    DecoratedGraph left = chain_graph(space, {b}, {{0, 0}});
    left.vertices[0].kappa.push_back(1);
    expect.add(left, Rational(1));
    DecoratedGraph right = chain_graph(space, {b}, {{0, 0}});
    right.vertices[1].kappa.push_back(1);
    expect.add(right, Rational(1));
    CHECK(prod == expect);
}

TEST_CASE("loop against boundary lands the loop on either side") {
    auto space = space_of(2, 2);
    Bipartition b{1, {"1"}};
    TautClass prod = gp_product(irreducible_boundary(space), boundary_class(space, b));
    CHECK(prod.size() == 2);
    for (const auto& [key, term] : prod.terms()) {
        CHECK(term.coeff == Rational(1));
        CHECK(term.graph.edges.size() == 2);
        CHECK(term.aut_order == 2);
    }
    CHECK(prod.pure_codim(2));
}

TEST_CASE("irreducible boundary square: excess plus both two-node degenerations") {
    auto space = space_of(2, 1);
    TautClass sq = gp_product(irreducible_boundary(space), irreducible_boundary(space));

    TautClass expect(space);
    // Excess: -(psi' + psi'') on the loop, both halves landing on the
    // sorted (0,1) decoration.
    expect.add(chain_graph(space, {}, {}, std::nullopt, std::make_pair(0, 1)), Rational(-2));
    // Two loops at a genus-0 vertex.
    DecoratedGraph two_loops;
    GraphVertex v0;
    v0.genus = 0;
    v0.legs = {0};
    two_loops.vertices = {v0};
    GraphEdge l1, l2;
    l1.end[0] = {0, 0};
    l1.end[1] = {0, 0};
    l2.end[0] = {0, 0};
    l2.end[1] = {0, 0};
    two_loops.edges = {l1, l2};
    two_loops.leg_psi = {0};
    expect.add(two_loops, Rational(2));
    // The banana: two vertices joined by a double edge.
    DecoratedGraph banana;
    GraphVertex b0, b1;
    b0.genus = 0;
    b0.legs = {0};
    b1.genus = 1;
    banana.vertices = {b0, b1};
    GraphEdge e1, e2;
    e1.end[0] = {0, 0};
    e1.end[1] = {1, 0};
    e2.end[0] = {0, 0};
    e2.end[1] = {1, 0};
    banana.edges = {e1, e2};
    banana.leg_psi = {0};
    expect.add(banana, Rational(2));
    CHECK(sq == expect);
}

TEST_CASE("projection formula: a leg psi multiplies onto the generator directly") {
    for (auto [g, n] : std::vector<std::pair<int, int>>{{2, 2}, {2, 3}}) {
        auto space = space_of(g, n);
        for (const auto& m : space.markings) {
            TautClass psi = attach_leg_psi(fundamental_class(space), m, 1);
            for (const auto& b : stable_bipartitions(space)) {
                CHECK(gp_product(psi, boundary_class(space, b)) ==
                      attach_leg_psi(boundary_class(space, b), m, 1));
            }
            CHECK(gp_product(psi, irreducible_boundary(space)) ==
                  attach_leg_psi(irreducible_boundary(space), m, 1));
            CHECK(gp_product(psi, psi) == attach_leg_psi(psi, m, 1));
        }
    }
}

TEST_CASE("commutativity on random generator pairs") {
    std::mt19937 rng(53);
    for (auto [g, n] : std::vector<std::pair<int, int>>{{2, 1}, {2, 2}, {3, 2}}) {
        auto space = space_of(g, n);
        auto pool = generator_pool(space);
        std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
        for (int trial = 0; trial < 40; ++trial) {
            const TautClass& x = pool[pick(rng)];
            const TautClass& y = pool[pick(rng)];
            CHECK(gp_product(x, y) == gp_product(y, x));
        }
    }
}

TEST_CASE("associativity on random triples of one-edge and loop generators") {
    std::mt19937 rng(59);
    for (auto [g, n] : std::vector<std::pair<int, int>>{{2, 1}, {2, 2}, {3, 1}}) {
        auto space = space_of(g, n);
        auto pool = generator_pool(space);
        std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
        for (int trial = 0; trial < 12; ++trial) {
            const TautClass& x = pool[pick(rng)];
            const TautClass& y = pool[pick(rng)];
            const TautClass& z = pool[pick(rng)];
            CHECK(gp_product(gp_product(x, y), z) == gp_product(x, gp_product(y, z)));
        }
    }
}

TEST_CASE("codimension adds on every term") {
    std::mt19937 rng(61);
    auto space = space_of(3, 2);
    auto pool = generator_pool(space);
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    for (int trial = 0; trial < 30; ++trial) {
        const TautClass& x = pool[pick(rng)];
        const TautClass& y = pool[pick(rng)];
        if (x.is_zero() || y.is_zero()) continue;
        int cx = x.terms().begin()->second.graph.codim();
        int cy = y.terms().begin()->second.graph.codim();
        TautClass prod = gp_product(x, y);
        CHECK(prod.pure_codim(cx + cy));
    }
}

TEST_CASE("base products transported to the universal curve match the monomial algebra") {
    // The moduli of the universal curve is the moduli with one extra
    // marking; the boundary components with the moving point on the far
    // side multiply exactly like the monomial chains.
    auto ucurve_space = MarkedSpace::make(2, {"1", "x"});
    Bipartition b{1, {"1"}};
    TautClass csq = gp_product(boundary_class(ucurve_space, b), boundary_class(ucurve_space, b));
    TautClass expect(ucurve_space);
    expect.add(chain_graph(ucurve_space, {b}, {{1, 0}}), Rational(-1));
    expect.add(chain_graph(ucurve_space, {b}, {{0, 1}}), Rational(-1));
    CHECK(csq == expect);  // the extra marking kills the symmetric shape

    // An incomparable pair dies just like the monomial chains do.
    Bipartition p{0, {"1", "x"}}, q{1, {"1"}};
    CHECK(bipartition_valid(ucurve_space, p));
    CHECK(gp_product(boundary_class(ucurve_space, p), boundary_class(ucurve_space, q)).is_zero());
}
