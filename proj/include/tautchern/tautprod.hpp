#pragma once

#include <vector>

#include "tautchern/strata.hpp"

namespace tautchern {

// All isomorphism classes of connected stable undecorated graphs of the
// space with at most max_edges edges, canonical labels, deterministic
// order. Results are cached per space.
std::vector<DecoratedGraph> stable_graphs(const MarkedSpace& space, int max_edges);

/*
 * Product of decorated strata classes. For each pair of generators and each
 * stable graph admitting a pair of degeneration structures onto the two
 * factors that jointly cover its edges, the factor decorations pull back
 * (leg psi stays on its leg, half-end psi follows the matched half-end,
 * kappa distributes as a sum over the vertices above), every jointly used
 * edge contributes the excess factor (-psi' - psi''), and the structure sum
 * is weighted by 1/(|Aut A| |Aut B|) against the normalized generator
 * semantics.
 */
TautClass gp_product(const TautClass& x, const TautClass& y);

}  // namespace tautchern
