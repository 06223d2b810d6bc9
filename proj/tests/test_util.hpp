#pragma once

#include <random>
#include <string>
#include <vector>

#include "tautchern/ucurve.hpp"

namespace tautchern::testutil {

inline MarkedSpace space_of(int g, int nmarks) {
    std::vector<std::string> labels;
    for (int i = 1; i <= nmarks; ++i) labels.push_back(std::to_string(i));
    return MarkedSpace::make(g, labels);
}

// Uniform random divisor with all coefficients in [lo, hi].
inline DivisorSpec random_divisor(const MarkedSpace& space, std::mt19937& rng, int lo = -3,
                                  int hi = 3) {
    std::uniform_int_distribution<int> coeff(lo, hi);
    std::map<std::string, long long> d;
    for (const auto& m : space.markings) {
        long long v = coeff(rng);
        if (v != 0) d[m] = v;
    }
    std::map<Bipartition, long long> a;
    for (const auto& b : stable_bipartitions(space)) {
        long long v = coeff(rng);
        if (v != 0) a[b] = v;
    }
    return DivisorSpec::make(space, coeff(rng), std::move(d), std::move(a));
}

}  // namespace tautchern::testutil
