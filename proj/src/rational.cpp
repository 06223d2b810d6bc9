#include "tautchern/rational.hpp"

#include <stdexcept>
#include <utility>

namespace tautchern {

Rational::Rational(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) {
    if (den_.is_zero()) throw std::domain_error("Rational: zero denominator");
    reduce();
}

void Rational::reduce() {
    if (den_.is_negative()) {
        num_ = -num_;
        den_ = -den_;
    }
    if (num_.is_zero()) {
        den_ = BigInt(1);
        return;
    }
    BigInt g = BigInt::gcd(num_, den_);
    if (!(g == BigInt(1))) {
        num_ = num_ / g;
        den_ = den_ / g;
    }
}

Rational Rational::from_string(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(BigInt::from_string(s));
    return Rational(BigInt::from_string(s.substr(0, slash)), BigInt::from_string(s.substr(slash + 1)));
}

Rational Rational::operator-() const {
    Rational out = *this;
    out.num_ = -out.num_;
    return out;
}

Rational& Rational::operator+=(const Rational& o) {
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ = den_ * o.den_;
    reduce();
    return *this;
}

Rational& Rational::operator-=(const Rational& o) { return *this += -o; }

Rational& Rational::operator*=(const Rational& o) {
    num_ *= o.num_;
    den_ *= o.den_;
    reduce();
    return *this;
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("Rational: division by zero");
    num_ *= o.den_;
    den_ *= o.num_;
    reduce();
    return *this;
}

std::strong_ordering Rational::operator<=>(const Rational& o) const {
    return num_ * o.den_ <=> o.num_ * den_;
}

Rational Rational::pow(unsigned e) const {
    Rational out(1), cur = *this;
    while (e) {
        if (e & 1u) out *= cur;
        e >>= 1u;
        if (e) cur *= cur;
    }
    return out;
}

BigInt Rational::floor() const {
    BigInt q, r;
    BigInt::divmod(num_, den_, q, r);
    if (r.is_negative()) q -= BigInt(1);
    return q;
}

BigInt Rational::round_nearest() const {
    Rational shifted = *this + Rational(1, 2);
    if (shifted.is_integer()) throw std::domain_error("Rational: round_nearest on exact half " + str());
    return shifted.floor();
}

std::string Rational::str() const {
    if (is_integer()) return num_.str();
    return num_.str() + "/" + den_.str();
}

}  // namespace tautchern
