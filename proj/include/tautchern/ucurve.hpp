#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tautchern/strata.hpp"

namespace tautchern {

/*
 * Divisor data on the universal curve: an integral multiple of the twisted
 * relative canonical class, integral multiples of the section classes, and
 * finitely many integral multiples of boundary components indexed by stable
 * bipartitions.
 */
struct DivisorSpec {
    MarkedSpace space;
    long long ell = 0;
    std::map<std::string, long long> d;  // marking label -> coefficient
    std::map<Bipartition, long long> a;  // finitely supported

    static DivisorSpec make(MarkedSpace space, long long ell,
                            std::map<std::string, long long> d,
                            std::map<Bipartition, long long> a);

    long long d_of(const std::string& marking) const;
    long long a_of(const Bipartition& b) const;
    // ell(2g-2) + sum_p d_p; the boundary multiples are invisible on the
    // generic fiber.
    long long total_degree() const;
};

/*
 * The two codimension-two node classes of the double Todd correction: a
 * separating node over a bipartition (l,T), or the non-separating node,
 * each carrying a pair of psi exponents.
 */
struct NodeClass {
    bool non_separating = false;
    Bipartition part;  // meaningful only when separating
    int psi_in = 0;
    int psi_out = 0;
};

/*
 * Canonical monomial of divisor classes on the universal curve: a power of
 * the marked relative canonical class K, an optional section self-power, an
 * ordered chain of boundary components with per-edge psi exponents, and an
 * optional node class. The vanishing relations K*sigma = 0,
 * sigma_p*sigma_q = 0 (p != q), sigma_p*C_{h,S} = 0 (p in S), and
 * incomparable C*C = 0 are enforced on construction, so a stored monomial is
 * never syntactically zero.
 */
struct ChainFactor {
    Bipartition part;
    int psi_in = 0;   // anchor-side half of the edge
    int psi_out = 0;  // moving-point side
};

struct UMonomial {
    int k_exp = 0;
    int sigma_marking = -1;  // marking index; -1 = absent
    int sigma_pow = 0;
    std::vector<ChainFactor> chain;
    std::optional<NodeClass> node;

    int codim() const;
    std::string key() const;
    std::string str(const MarkedSpace& space) const;
};

struct Factor {
    enum class Kind { K, Sigma, Boundary } kind;
    int marking = -1;   // Sigma
    Bipartition part;   // Boundary
    static Factor k();
    static Factor sigma(int marking_index);
    static Factor boundary(Bipartition b);
};

// Formal sum of monomials with exact coefficients.
using MonomialSum = std::map<std::string, std::pair<UMonomial, Rational>>;

void add_monomial(MonomialSum& sum, const UMonomial& m, const Rational& coeff);

// Product of a monomial with one elementary divisor factor, as a formal sum
// (0, 1 or 2 terms). Throws on a node-bearing monomial.
MonomialSum mul_umonomial(const MarkedSpace& space, const UMonomial& m, const Factor& f);

// Product of a whole sum with one factor.
MonomialSum mul_sum(const MarkedSpace& space, const MonomialSum& sum, const Factor& f);

// Pushforward along the universal curve of a node-free monomial; drops
// codimension by exactly one. Section powers land on leg psi classes with
// alternating sign, K powers land on a terminal kappa, bare chains shift
// the terminal exponent, and the fundamental monomial vanishes.
TautClass push_forward(const MarkedSpace& space, const UMonomial& m);

// Pushforward of a node class times a pure chain monomial: a separating
// node appends an edge above the chain, merges into the last edge with a
// sign when it matches the last entry and the outer exponent is exhausted,
// and dies otherwise; the non-separating node appends a loop.
TautClass push_forward_node(const MarkedSpace& space, const NodeClass& node, const UMonomial& m);

}  // namespace tautchern
