#pragma once

#include <compare>
#include <string>

#include "tautchern/bigint.hpp"

namespace tautchern {

/*
 * Exact rational number. Always stored fully reduced with positive
 * denominator; zero is 0/1. Serializes as "num/den", with "/den" omitted
 * when the denominator is 1.
 */
class Rational {
  public:
    Rational() : num_(0), den_(1) {}
    Rational(long long v) : num_(v), den_(1) {}
    Rational(long long n, long long d) : Rational(BigInt(n), BigInt(d)) {}
    Rational(BigInt n, BigInt d);
    explicit Rational(BigInt n) : num_(std::move(n)), den_(1) {}

    static Rational from_string(const std::string& s);

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_integer() const { return den_ == BigInt(1); }
    bool is_negative() const { return num_.is_negative(); }

    Rational operator-() const;
    Rational& operator+=(const Rational& o);
    Rational& operator-=(const Rational& o);
    Rational& operator*=(const Rational& o);
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
    std::strong_ordering operator<=>(const Rational& o) const;

    Rational pow(unsigned e) const;

    // Largest integer <= value.
    BigInt floor() const;
    // Nearest integer; throws std::domain_error on an exact half.
    BigInt round_nearest() const;

    std::string str() const;

    static Rational factorial(unsigned n) { return Rational(BigInt::factorial(n)); }
    static Rational binomial(unsigned n, unsigned k) { return Rational(BigInt::binomial(n, k)); }
    static Rational int_pow(long long base, unsigned e) { return Rational(BigInt::pow(BigInt(base), e)); }

  private:
    BigInt num_;
    BigInt den_;

    void reduce();
};

}  // namespace tautchern
