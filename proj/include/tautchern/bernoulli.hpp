#pragma once

#include "tautchern/rational.hpp"

namespace tautchern {

/*
 * Bernoulli numbers and polynomials at integer arguments, from the
 * generating identity
 *
 *     sum_t B_t(l)/t! x^t  =  e^{l x} * x/(e^x - 1),
 *
 * computed by exact truncated power-series division. B_t = B_t(0).
 * Values are memoized per thread; concurrent recomputation is harmless.
 */
Rational bernoulli_number(unsigned t);
Rational bernoulli_poly(unsigned t, long long ell);

}  // namespace tautchern
