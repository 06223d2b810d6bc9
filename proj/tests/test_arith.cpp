#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <random>

#include "tautchern/bernoulli.hpp"
#include "tautchern/rational.hpp"

using namespace tautchern;

namespace {

// Independent route to the Bernoulli numbers: the defining recurrence
// sum_{j=0}^{t} C(t+1, j) B_j = 0, solved for B_t. Shares nothing with the
// series-division implementation.
Rational bernoulli_by_recurrence(unsigned t) {
    static std::vector<Rational> memo;
    while (memo.size() <= t) {
        unsigned n = static_cast<unsigned>(memo.size());
        if (n == 0) {
            memo.emplace_back(1);
            continue;
        }
        Rational acc;
        for (unsigned j = 0; j < n; ++j) acc += Rational::binomial(n + 1, j) * memo[j];
        memo.push_back(-(acc / Rational(static_cast<long long>(n) + 1)));
    }
    return memo[t];
}

Rational ll_pow(long long base, unsigned e) { return Rational::int_pow(base, e); }

}  // namespace

TEST_CASE("bigint basics") {
    CHECK(BigInt(0).str() == "0");
    CHECK(BigInt(-1234567891234567890ll).str() == "-1234567891234567890");
    CHECK(BigInt::from_string("-000123").str() == "-123");
    CHECK(BigInt::from_string("99999999999999999999") ==
          BigInt::from_string("100000000000000000000") - BigInt(1));
    CHECK((BigInt(1000000000) * BigInt(1000000000)).str() == "1000000000000000000");
    CHECK(BigInt::factorial(20).str() == "2432902008176640000");
    CHECK(BigInt::binomial(52, 5) == BigInt(2598960));
    CHECK(BigInt::gcd(BigInt(-48), BigInt(18)) == BigInt(6));
    CHECK(BigInt::pow(BigInt(-3), 5) == BigInt(-243));
    CHECK_THROWS_AS(BigInt::from_string("12x"), std::invalid_argument);
    CHECK_THROWS_AS(BigInt::factorial(30).to_ll(), std::overflow_error);
}

TEST_CASE("bigint divmod truncates toward zero") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<long long> dist(-1000000, 1000000);
    for (int i = 0; i < 500; ++i) {
        long long a = dist(rng), b = dist(rng);
        if (b == 0) continue;
        BigInt q, r;
        BigInt::divmod(BigInt(a), BigInt(b), q, r);
        CHECK(q == BigInt(a / b));
        CHECK(r == BigInt(a % b));
    }
    CHECK_THROWS_AS(BigInt(1) / BigInt(0), std::domain_error);
}

TEST_CASE("rational stays reduced with positive denominator") {
    Rational x(6, -4);
    CHECK(x.num() == BigInt(-3));
    CHECK(x.den() == BigInt(2));
    CHECK(x.str() == "-3/2");
    CHECK(Rational(10, 5).str() == "2");
    CHECK(Rational::from_string("-3/9") == Rational(-1, 3));
    CHECK(Rational::from_string("7") == Rational(7));
    CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
    CHECK_THROWS_AS(Rational(1, 2) / Rational(0), std::domain_error);
}

TEST_CASE("rational arithmetic agrees with pair arithmetic on random values") {
    std::mt19937 rng(11);
    std::uniform_int_distribution<long long> dist(-40, 40);
    for (int i = 0; i < 400; ++i) {
        long long an = dist(rng), ad = dist(rng), bn = dist(rng), bd = dist(rng);
        if (ad == 0 || bd == 0) continue;
        Rational a(an, ad), b(bn, bd);
        CHECK(a + b == Rational(an * bd + bn * ad, ad * bd));
        CHECK(a * b == Rational(an * bn, ad * bd));
        CHECK(a - b == Rational(an * bd - bn * ad, ad * bd));
        if (bn != 0) CHECK(a / b == Rational(an * bd, ad * bn));
    }
}

TEST_CASE("rational floor and nearest") {
    CHECK(Rational(7, 2).floor() == BigInt(3));
    CHECK(Rational(-7, 2).floor() == BigInt(-4));
    CHECK(Rational(1, 3).round_nearest() == BigInt(0));
    CHECK(Rational(2, 3).round_nearest() == BigInt(1));
    CHECK(Rational(-2, 3).round_nearest() == BigInt(-1));
    CHECK_THROWS_AS(Rational(3, 2).round_nearest(), std::domain_error);
}

TEST_CASE("bernoulli numbers: frozen values and the recurrence oracle") {
    CHECK(bernoulli_number(0) == Rational(1));
    CHECK(bernoulli_number(2) == Rational(1, 6));
    CHECK(bernoulli_number(3) == Rational(0));
    CHECK(bernoulli_number(1) == Rational(-1, 2));
    CHECK(bernoulli_number(12) == Rational(-691, 2730));
    for (unsigned t = 0; t <= 16; ++t) CHECK(bernoulli_number(t) == bernoulli_by_recurrence(t));
}

TEST_CASE("bernoulli polynomials at integers") {
    CHECK(bernoulli_poly(0, 5) == Rational(1));
    CHECK(bernoulli_poly(1, 0) == Rational(-1, 2));
    for (long long ell = -5; ell <= 5; ++ell) {
        CHECK(bernoulli_poly(2, ell) ==
              Rational(ell) * Rational(ell) - Rational(ell) + Rational(1, 6));
    }
}

TEST_CASE("bernoulli shift identity and reflection") {
    for (unsigned t = 0; t <= 12; ++t) {
        for (long long ell = -5; ell <= 5; ++ell) {
            Rational lhs = bernoulli_poly(t, ell + 1) - bernoulli_poly(t, ell);
            Rational rhs = t == 0 ? Rational(0) : Rational(t) * ll_pow(ell, t - 1);
            CHECK(lhs == rhs);
        }
        Rational sign = (t % 2 == 0) ? Rational(1) : Rational(-1);
        CHECK(bernoulli_poly(t, 1) == sign * bernoulli_number(t));
    }
    for (unsigned t = 3; t <= 13; t += 2) CHECK(bernoulli_number(t) == Rational(0));
}
