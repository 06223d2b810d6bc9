#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace tautchern {

/*
 * Arbitrary-precision signed integer, sign/magnitude over base-10^9 limbs.
 *
 * Every coefficient in this project is exact, so the arithmetic here is the
 * foundation of everything else. Magnitudes stay small (products of
 * factorials, Bernoulli numerators and the like), so schoolbook algorithms
 * are used throughout.
 */
class BigInt {
  public:
    BigInt() = default;
    BigInt(long long v);

    static BigInt from_string(const std::string& s);

    bool is_zero() const { return sign_ == 0; }
    int sign() const { return sign_; }
    bool is_negative() const { return sign_ < 0; }
    BigInt abs() const;

    BigInt operator-() const;
    BigInt& operator+=(const BigInt& o);
    BigInt& operator-=(const BigInt& o);
    BigInt& operator*=(const BigInt& o);

    friend BigInt operator+(BigInt a, const BigInt& b) { return a += b; }
    friend BigInt operator-(BigInt a, const BigInt& b) { return a -= b; }
    friend BigInt operator*(BigInt a, const BigInt& b) { return a *= b; }

    // Truncated division: quotient rounds toward zero, remainder has the
    // sign of the dividend. Throws std::domain_error on division by zero.
    static void divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r);
    friend BigInt operator/(const BigInt& a, const BigInt& b);
    friend BigInt operator%(const BigInt& a, const BigInt& b);

    std::strong_ordering operator<=>(const BigInt& o) const;
    bool operator==(const BigInt& o) const;

    static BigInt gcd(BigInt a, BigInt b);
    static BigInt pow(const BigInt& base, unsigned exp);
    static BigInt factorial(unsigned n);
    static BigInt binomial(unsigned n, unsigned k);

    std::string str() const;

    // Throws std::overflow_error if the value does not fit.
    long long to_ll() const;

  private:
    static constexpr std::uint32_t kBase = 1000000000u;

    int sign_ = 0;
    std::vector<std::uint32_t> limbs_;  // little-endian, no leading zeros

    void trim();
    static int cmp_mag(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b);
    static std::vector<std::uint32_t> add_mag(const std::vector<std::uint32_t>& a,
                                              const std::vector<std::uint32_t>& b);
    // Requires |a| >= |b|.
    static std::vector<std::uint32_t> sub_mag(const std::vector<std::uint32_t>& a,
                                              const std::vector<std::uint32_t>& b);
    static std::vector<std::uint32_t> mul_mag(const std::vector<std::uint32_t>& a,
                                              const std::vector<std::uint32_t>& b);
    static std::vector<std::uint32_t> mul_small(const std::vector<std::uint32_t>& a,
                                                std::uint32_t d);
};

}  // namespace tautchern
