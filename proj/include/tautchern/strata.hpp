#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tautchern/combin.hpp"
#include "tautchern/rational.hpp"

namespace tautchern {

/*
 * Decorated boundary strata generators.
 *
 * A generator is a connected stable graph with vertex genera, marking legs,
 * per-vertex kappa decorations, psi exponents on edge half-ends and on legs.
 * A stored generator denotes the NORMALIZED class: the clutching pushforward
 * of its decoration monomial divided by the order of the automorphism group
 * of the underlying bare graph (genus and legs fixed, decorations ignored).
 * With the anchor convention the chain-shaped generators are rigid; the
 * division only matters for loop-bearing and otherwise symmetric graphs.
 */

struct GraphVertex {
    int genus = 0;
    std::vector<int> legs;   // marking indices, kept sorted
    std::vector<int> kappa;  // kappa indices >= 1 after canonicalization, sorted
};

struct GraphHalf {
    int vertex = 0;
    int psi = 0;
};

struct GraphEdge {
    GraphHalf end[2];
};

struct DecoratedGraph {
    std::vector<GraphVertex> vertices;
    std::vector<GraphEdge> edges;
    std::vector<int> leg_psi;  // indexed by marking index; 0 = undecorated

    int codim() const;
};

struct CanonicalGraph {
    DecoratedGraph graph;
    std::string key;          // canonical encoding; total order on generators
    std::uint64_t aut_order;  // |Aut| of the underlying bare graph
};

struct CanonicalTerm {
    bool zero = false;   // canonicalized away (dimension cutoff)
    Rational scale;      // scalar produced by kappa_0 elimination
    CanonicalGraph canon;
};

// Validates the graph (stability, connectedness, genus bookkeeping, leg
// partition; throws std::invalid_argument otherwise), eliminates kappa_0 and
// psi^0 decorations, applies the global and per-vertex dimension cutoffs,
// and relabels into the canonical form. Idempotent on its own output.
CanonicalTerm canonicalize(const MarkedSpace& space, DecoratedGraph g);

/*
 * A finite rational linear combination of canonical generators, graded by
 * codimension. Generators over the same space merge exactly; zero
 * coefficients are dropped.
 */
class TautClass {
  public:
    struct Term {
        DecoratedGraph graph;
        std::uint64_t aut_order = 1;
        Rational coeff;
    };

    explicit TautClass(const MarkedSpace& space) : space_(space) {}

    const MarkedSpace& space() const { return space_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    const std::map<std::string, Term>& terms() const { return terms_; }

    // Canonicalizes and merges; a graph past the dimension cutoff is dropped.
    void add(const DecoratedGraph& g, const Rational& coeff);
    void add_canonical(const CanonicalGraph& canon, const Rational& coeff);

    TautClass& operator+=(const TautClass& o);
    TautClass& operator*=(const Rational& s);
    friend TautClass operator+(TautClass a, const TautClass& b) { return a += b; }
    friend TautClass operator*(TautClass a, const Rational& s) { return a *= s; }

    bool operator==(const TautClass& o) const;

    // Component of pure codimension s.
    TautClass component(int s) const;
    // True when every stored generator has codimension s.
    bool pure_codim(int s) const;

  private:
    MarkedSpace space_;
    std::map<std::string, Term> terms_;
};

// The fundamental class (single vertex, no decorations).
TautClass fundamental_class(const MarkedSpace& space);

// kappa_b on the single-vertex graph; b = 0 collapses to the scalar
// (2g - 2 + n) and b = -1 is zero.
TautClass kappa_class(const MarkedSpace& space, int b);

// One-edge boundary generator delta_{h,S}.
TautClass boundary_class(const MarkedSpace& space, const Bipartition& b);

// The irreducible boundary generator delta_irr (loop at a genus g-1 vertex).
TautClass irreducible_boundary(const MarkedSpace& space);

// The chain-shaped graph for a strictly increasing chain, with half-end psi
// exponents expos[m] = (toward anchor, away from anchor) on edge m. Optional
// kappa index on the last vertex, optional loop (with exponents) on the last
// vertex replacing genus g-h_r by g-h_r-1.
DecoratedGraph chain_graph(const MarkedSpace& space, const Chain& chain,
                           const std::vector<std::pair<int, int>>& expos,
                           std::optional<int> last_kappa = std::nullopt,
                           std::optional<std::pair<int, int>> loop = std::nullopt);

/*
 * Signed-binomial aggregates over a chain with a positive composition k:
 * each edge m contributes exponents (i_m, k_m-1-i_m) weighted by
 * (-1)^{k_m-1} C(k_m-1, i_m). These are the closed forms the main formula
 * is stated in.
 */
TautClass bold_x(const MarkedSpace& space, const Chain& chain, const std::vector<int>& k);

// b >= 0 places kappa_b on the last vertex; b = -1 shifts the last edge's
// outer exponent down instead (empty sum when k_r = 1; zero for r = 0).
TautClass bold_z(const MarkedSpace& space, const Chain& chain, const std::vector<int>& k, int b);

// Chain plus terminal loop with exponents (i, j).
TautClass bold_y_tilde(const MarkedSpace& space, const Chain& chain, const std::vector<int>& k,
                       int i, int j);

// Chain extended by one further bipartition whose edge carries (i, j);
// extra == nullopt encodes the length -1 convention and yields zero.
TautClass bold_x_tilde(const MarkedSpace& space, const Chain& chain,
                       const std::optional<Bipartition>& extra, const std::vector<int>& k,
                       int i, int j);

// Adds psi^e at the leg of marking p on every generator.
TautClass attach_leg_psi(const TautClass& c, const std::string& marking, int e);

// Deterministic text form of a generator (bracket notation for chain/loop
// shapes, explicit vertex/edge listing otherwise).
std::string render_generator(const MarkedSpace& space, const DecoratedGraph& g);

}  // namespace tautchern
