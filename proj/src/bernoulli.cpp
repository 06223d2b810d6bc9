#include "tautchern/bernoulli.hpp"

#include <map>
#include <vector>

namespace tautchern {

namespace {

// Coefficients c_k of x/(e^x - 1) up to order n, by dividing x by the series
// e^x - 1 = sum_{m>=1} x^m/m!. From (sum c_k x^k)(sum_{m>=1} x^m/m!) = x:
//   c_0 = 1,  c_n = -sum_{k<n} c_k / (n-k+1)!   for n >= 1.
const std::vector<Rational>& series_coeffs(unsigned order) {
    thread_local std::vector<Rational> coeffs{Rational(1)};
    while (coeffs.size() <= order) {
        unsigned n = static_cast<unsigned>(coeffs.size());
        Rational acc;
        for (unsigned k = 0; k < n; ++k)
            acc += coeffs[k] / Rational::factorial(n - k + 1);
        coeffs.push_back(-acc);
    }
    return coeffs;
}

}  // namespace

Rational bernoulli_number(unsigned t) {
    return series_coeffs(t)[t] * Rational::factorial(t);
}

Rational bernoulli_poly(unsigned t, long long ell) {
    if (ell == 0) return bernoulli_number(t);
    thread_local std::map<std::pair<unsigned, long long>, Rational> memo;
    auto it = memo.find({t, ell});
    if (it != memo.end()) return it->second;
    // Convolve with e^{l x}: B_t(l)/t! = sum_{m+k=t} l^m/m! * c_k.
    const auto& c = series_coeffs(t);
    Rational acc;
    for (unsigned m = 0; m <= t; ++m)
        acc += Rational(BigInt::pow(BigInt(ell), m)) / Rational::factorial(m) * c[t - m];
    Rational out = acc * Rational::factorial(t);
    memo.emplace(std::make_pair(t, ell), out);
    return out;
}

}  // namespace tautchern
