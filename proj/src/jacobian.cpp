#include "tautchern/jacobian.hpp"

#include <stdexcept>

namespace tautchern {

OneNodePolarisation OneNodePolarisation::zero(const MarkedSpace& space, long long total_degree) {
    OneNodePolarisation out;
    out.space = space;
    out.total_degree = total_degree;
    for (const auto& b : stable_bipartitions(space)) out.phi.emplace(b, Rational(0));
    return out;
}

PhiDiagnostics validate_phi(const OneNodePolarisation& phi) {
    PhiDiagnostics out;
    for (const auto& b : stable_bipartitions(phi.space)) {
        auto it = phi.phi.find(b);
        if (it == phi.phi.end())
            throw std::invalid_argument("validate_phi: missing value for " + b.str());
        // Degenerate exactly when the value is a half integer: then two
        // integers tie at distance 1/2 and none wins strictly.
        Rational shifted = it->second + Rational(1, 2);
        if (shifted.is_integer()) {
            out.ok = false;
            out.failures.emplace_back(b, "value " + it->second.str() +
                                             " lies on a half integer; no unique stable twist");
        }
    }
    return out;
}

DivisorSpec modify_divisor(const DivisorSpec& divisor, const OneNodePolarisation& phi) {
    if (!(divisor.space == phi.space))
        throw std::invalid_argument("modify_divisor: mismatched spaces");
    if (divisor.total_degree() != phi.total_degree)
        throw std::invalid_argument("modify_divisor: divisor degree " +
                                    std::to_string(divisor.total_degree()) +
                                    " does not match the polarisation degree " +
                                    std::to_string(phi.total_degree));
    PhiDiagnostics diag = validate_phi(phi);
    if (!diag.ok)
        throw std::invalid_argument("modify_divisor: degenerate polarisation at " +
                                    diag.failures.front().first.str());
    DivisorSpec out = divisor;
    out.a.clear();
    for (const auto& [part, value] : phi.phi) {
        // Fixed part of the degree on the anchor-side component: the twisted
        // canonical contributes 2h-1 and each section lands on its side.
        long long fixed = divisor.ell * (2 * part.h - 1);
        for (const auto& label : part.side) fixed += divisor.d_of(label);
        Rational target = value - Rational(fixed);
        long long a = target.round_nearest().to_ll();
        if (a != 0) out.a[part] = a;
    }
    return out;
}

DivisorSpec drc_divisor(const MarkedSpace& space, const std::string& i, const std::string& j) {
    if (space.marking_index(i) < 0 || space.marking_index(j) < 0)
        throw std::invalid_argument("drc_divisor: unknown marking");
    std::map<std::string, long long> d;
    if (i != j) {
        d[i] += 1;
        d[j] -= 1;
    }
    DivisorSpec base = DivisorSpec::make(space, 0, std::move(d), {});
    return modify_divisor(base, OneNodePolarisation::zero(space, 0));
}

}  // namespace tautchern
