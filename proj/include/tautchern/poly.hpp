#pragma once

#include <map>
#include <string>
#include <vector>

#include "tautchern/rational.hpp"

namespace tautchern {

/*
 * Formal polynomials over the rationals in countably many variables
 * x_1, x_2, ...; the symbolic side of the Chern-class machinery (variables
 * standing for c_k or ch_s). Monomials are sparse exponent maps.
 */
class SymPoly {
  public:
    using Monomial = std::vector<std::pair<int, int>>;  // (variable, exponent), sorted

    SymPoly() = default;
    explicit SymPoly(Rational c);
    static SymPoly var(int index, int exponent = 1);

    bool is_zero() const { return terms_.empty(); }
    const std::map<Monomial, Rational>& terms() const { return terms_; }

    SymPoly operator-() const;
    SymPoly& operator+=(const SymPoly& o);
    SymPoly& operator-=(const SymPoly& o);
    SymPoly& operator*=(const SymPoly& o);
    SymPoly& operator*=(const Rational& s);
    friend SymPoly operator+(SymPoly a, const SymPoly& b) { return a += b; }
    friend SymPoly operator-(SymPoly a, const SymPoly& b) { return a -= b; }
    friend SymPoly operator*(SymPoly a, const SymPoly& b) { return a *= b; }
    friend SymPoly operator*(SymPoly a, const Rational& s) { return a *= s; }

    bool operator==(const SymPoly& o) const { return terms_ == o.terms_; }

    // Total degree where variable i has weight i (the natural grading when
    // x_i stands for a degree-i class); -1 for the zero polynomial.
    int weighted_degree() const;

    // Rendering with a variable namer, deterministic term order.
    std::string str(const std::string& stem = "c") const;

  private:
    std::map<Monomial, Rational> terms_;
};

struct SymPolyRing {
    using Elem = SymPoly;
    Elem zero() const { return SymPoly(); }
    Elem one() const { return SymPoly(Rational(1)); }
    Elem add(const Elem& a, const Elem& b) const { return a + b; }
    Elem mul(const Elem& a, const Elem& b) const { return a * b; }
    Elem scale(const Elem& a, const Rational& s) const { return a * s; }
};

}  // namespace tautchern
