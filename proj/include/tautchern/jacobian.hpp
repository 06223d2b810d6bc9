#pragma once

#include <map>
#include <string>
#include <vector>

#include "tautchern/ucurve.hpp"

namespace tautchern {

/*
 * One-node stability data: the value of the polarisation on the anchor-side
 * component of the general one-node curve of each type, with the complement
 * carrying d minus that value. Nondegeneracy means no value sits on a half
 * integer, so every type selects a unique stable twist.
 */
struct OneNodePolarisation {
    MarkedSpace space;
    long long total_degree = 0;
    std::map<Bipartition, Rational> phi;  // one entry per stable bipartition

    static OneNodePolarisation zero(const MarkedSpace& space, long long total_degree = 0);
};

struct PhiDiagnostics {
    bool ok = true;
    std::vector<std::pair<Bipartition, std::string>> failures;
};

// Checks completeness (throws std::invalid_argument on a missing entry) and
// nondegeneracy: each value must admit exactly one integer within distance
// 1/2 and none at exactly 1/2. Failures are reported per bipartition.
PhiDiagnostics validate_phi(const OneNodePolarisation& phi);

// Replaces each boundary coefficient by the unique integer making the
// divisor stable on the general one-node curve of its type:
//   | ell(2h-1) + sum_{p in S} d_p + a - phi_S | < 1/2.
// Throws if phi is degenerate or its degree disagrees with the divisor's.
DivisorSpec modify_divisor(const DivisorSpec& divisor, const OneNodePolarisation& phi);

// The degree-zero marked-difference divisor sigma_i - sigma_j, stabilized
// against the zero polarisation; i = j gives the zero divisor.
DivisorSpec drc_divisor(const MarkedSpace& space, const std::string& i, const std::string& j);

}  // namespace tautchern
