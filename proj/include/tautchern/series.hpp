#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>
#include <vector>

#include "tautchern/rational.hpp"

namespace tautchern {

/*
 * Graded-ring series helpers, generic over the coefficient ring. A Ring
 * supplies value-semantic elements plus zero/one/add/mul/scale; the three
 * instantiations used here are exact rationals, formal polynomials, and
 * tautological classes under the strata product.
 */

template <typename Ring>
using GradedSeries = std::map<int, typename Ring::Elem>;  // degree -> element

template <typename Ring>
GradedSeries<Ring> graded_mul(const Ring& ring, const GradedSeries<Ring>& a,
                              const GradedSeries<Ring>& b, int tmax) {
    GradedSeries<Ring> out;
    for (const auto& [da, ea] : a)
        for (const auto& [db, eb] : b) {
            if (da + db > tmax) continue;
            auto prod = ring.mul(ea, eb);
            auto it = out.find(da + db);
            if (it == out.end())
                out.emplace(da + db, std::move(prod));
            else
                it->second = ring.add(it->second, prod);
        }
    return out;
}

// exp of a series with no degree-0 part, truncated at tmax.
template <typename Ring>
GradedSeries<Ring> graded_exp(const Ring& ring, const GradedSeries<Ring>& u, int tmax) {
    GradedSeries<Ring> out{{0, ring.one()}};
    GradedSeries<Ring> power{{0, ring.one()}};
    for (int m = 1; m <= tmax; ++m) {
        power = graded_mul(ring, power, u, tmax);
        if (power.empty()) break;
        for (auto& [deg, elem] : power) elem = ring.scale(elem, Rational(1, m));
        for (const auto& [deg, elem] : power) {
            auto it = out.find(deg);
            if (it == out.end())
                out.emplace(deg, elem);
            else
                it->second = ring.add(it->second, elem);
        }
    }
    return out;
}

// The p x p determinant |c_{q+j-i}| of a series, by Leibniz expansion over
// permutations with exact signs. entry(k) must return the ring unit at
// k = 0 and zero for k < 0.
template <typename Ring>
typename Ring::Elem thom_porteous(const Ring& ring,
                                  const std::function<typename Ring::Elem(int)>& entry, int p,
                                  int q) {
    if (p < 1) throw std::invalid_argument("thom_porteous: p must be >= 1");
    std::vector<int> perm(static_cast<std::size_t>(p));
    for (int i = 0; i < p; ++i) perm[static_cast<std::size_t>(i)] = i;
    auto out = ring.zero();
    // Lexicographic permutation walk with explicit inversion-count signs.
    while (true) {
        int inversions = 0;
        for (int i = 0; i < p; ++i)
            for (int j = i + 1; j < p; ++j)
                if (perm[static_cast<std::size_t>(i)] > perm[static_cast<std::size_t>(j)]) ++inversions;
        auto term = ring.one();
        bool dead = false;
        for (int i = 0; i < p && !dead; ++i) {
            int k = q + perm[static_cast<std::size_t>(i)] - i;  // row i, column perm(i)
            if (k < 0) {
                dead = true;
                break;
            }
            term = ring.mul(term, entry(k));
        }
        if (!dead) {
            if (inversions % 2 == 1) term = ring.scale(term, Rational(-1));
            out = ring.add(out, term);
        }
        if (!std::next_permutation(perm.begin(), perm.end())) break;
    }
    return out;
}

struct RationalRing {
    using Elem = Rational;
    Elem zero() const { return Rational(0); }
    Elem one() const { return Rational(1); }
    Elem add(const Elem& a, const Elem& b) const { return a + b; }
    Elem mul(const Elem& a, const Elem& b) const { return a * b; }
    Elem scale(const Elem& a, const Rational& s) const { return a * s; }
};

}  // namespace tautchern
