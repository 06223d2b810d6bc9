#pragma once

#include <map>

#include "tautchern/ucurve.hpp"

namespace tautchern {

/*
 * Graded Chern character data: one pure-codimension class per degree
 * 0..smax. The `negated` flag records whether the components describe the
 * derived pushforward itself or its K-theoretic negative.
 */
struct GradedChernData {
    MarkedSpace space;
    int smax = 0;
    bool negated = false;
    std::map<int, TautClass> ch;  // every degree 0..smax present (possibly zero)

    const TautClass& component(int s) const;
};

// Closed-form evaluation of the Chern character of the derived pushforward
// of O(D): the kappa-weighted and section-weighted chain sums plus the
// node-class correction, assembled degree by degree with exact Bernoulli
// weights. Enumeration is deterministic; `workers` only shards it.
GradedChernData chern_char_theorem(const DivisorSpec& divisor, int smax, int workers = 1);

// Term-by-term Grothendieck-Riemann-Roch evaluation of the same character:
// expands the boundary exponential by iterated pairwise monomial products
// and pushes every monomial forward separately. Shares only the monomial
// algebra with the closed form, so the two routes cross-check each other.
GradedChernData chern_char_oracle(const DivisorSpec& divisor, int smax, int workers = 1);

// Chern classes from the character: degree-t part of
// exp(sum_s (-1)^{s-1} (s-1)! ch_s), with componentwise negation first when
// `negate` is set (the classes of the K-theoretic negative). Degrees >= 2
// multiply generators via the strata product engine.
std::map<int, TautClass> invert_to_chern(const GradedChernData& ch, int tmax, bool negate);

/*
 * A Brill-Noether pullback request: the expected-codimension determinantal
 * class of the divisor's derived pushforward, for r sections in degree
 * d = ell(2g-2) + sum d_p. Requires r >= 0 and d < g + r; rho is the usual
 * count g - (r+1)(g-d+r). The divisor is expected to be already stabilized
 * (see the jacobian module).
 */
struct BNRequest {
    int r = 0;
    DivisorSpec divisor;

    static BNRequest make(int r, DivisorSpec divisor);  // validates the bounds
    long long degree() const { return divisor.total_degree(); }
    long long rho() const;
};

class SymPoly;

// The (r+1) x (r+1) determinant |c_{q+j-i}| with q = g-d+r as a formal
// polynomial in symbols c_1, c_2, ...
SymPoly bn_pullback_symbolic(const BNRequest& req);

// The same determinant evaluated in the tautological ring: Chern character
// of the divisor, componentwise negation, exponential inversion, then the
// determinant under the strata product. smax must cover g - rho.
TautClass bn_pullback_expanded(const BNRequest& req, int smax, int workers = 1);

}  // namespace tautchern
