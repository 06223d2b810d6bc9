#include "tautchern/bigint.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace tautchern {

BigInt::BigInt(long long v) {
    if (v == 0) return;
    sign_ = v < 0 ? -1 : 1;
    unsigned long long m = v < 0 ? -static_cast<unsigned long long>(v) : static_cast<unsigned long long>(v);
    while (m != 0) {
        limbs_.push_back(static_cast<std::uint32_t>(m % kBase));
        m /= kBase;
    }
}

BigInt BigInt::from_string(const std::string& s) {
    std::size_t pos = 0;
    int sign = 1;
    if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
        if (s[pos] == '-') sign = -1;
        ++pos;
    }
    if (pos >= s.size()) throw std::invalid_argument("BigInt: empty numeral '" + s + "'");
    BigInt out;
    for (; pos < s.size(); ++pos) {
        if (s[pos] < '0' || s[pos] > '9')
            throw std::invalid_argument("BigInt: bad digit in '" + s + "'");
        out.limbs_ = mul_small(out.limbs_, 10u);
        std::uint32_t d = static_cast<std::uint32_t>(s[pos] - '0');
        if (d != 0) out.limbs_ = add_mag(out.limbs_, {d});
    }
    out.sign_ = out.limbs_.empty() ? 0 : sign;
    return out;
}

void BigInt::trim() {
    while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
    if (limbs_.empty()) sign_ = 0;
}

int BigInt::cmp_mag(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    for (std::size_t i = a.size(); i-- > 0;) {
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    }
    return 0;
}

std::vector<std::uint32_t> BigInt::add_mag(const std::vector<std::uint32_t>& a,
                                           const std::vector<std::uint32_t>& b) {
    std::vector<std::uint32_t> out;
    out.reserve(std::max(a.size(), b.size()) + 1);
    std::uint32_t carry = 0;
    for (std::size_t i = 0; i < a.size() || i < b.size() || carry; ++i) {
        std::uint64_t cur = carry;
        if (i < a.size()) cur += a[i];
        if (i < b.size()) cur += b[i];
        out.push_back(static_cast<std::uint32_t>(cur % kBase));
        carry = static_cast<std::uint32_t>(cur / kBase);
    }
    return out;
}

std::vector<std::uint32_t> BigInt::sub_mag(const std::vector<std::uint32_t>& a,
                                           const std::vector<std::uint32_t>& b) {
    std::vector<std::uint32_t> out = a;
    std::int64_t borrow = 0;
    for (std::size_t i = 0; i < out.size(); ++i) {
        std::int64_t cur = static_cast<std::int64_t>(out[i]) - borrow - (i < b.size() ? b[i] : 0);
        if (cur < 0) {
            cur += kBase;
            borrow = 1;
        } else {
            borrow = 0;
        }
        out[i] = static_cast<std::uint32_t>(cur);
    }
    while (!out.empty() && out.back() == 0) out.pop_back();
    return out;
}

std::vector<std::uint32_t> BigInt::mul_mag(const std::vector<std::uint32_t>& a,
                                           const std::vector<std::uint32_t>& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<std::uint64_t> acc(a.size() + b.size(), 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        std::uint64_t carry = 0;
        for (std::size_t j = 0; j < b.size(); ++j) {
            std::uint64_t cur = acc[i + j] + static_cast<std::uint64_t>(a[i]) * b[j] + carry;
            acc[i + j] = cur % kBase;
            carry = cur / kBase;
        }
        std::size_t k = i + b.size();
        while (carry) {
            std::uint64_t cur = acc[k] + carry;
            acc[k] = cur % kBase;
            carry = cur / kBase;
            ++k;
        }
    }
    std::vector<std::uint32_t> out(acc.size());
    for (std::size_t i = 0; i < acc.size(); ++i) out[i] = static_cast<std::uint32_t>(acc[i]);
    while (!out.empty() && out.back() == 0) out.pop_back();
    return out;
}

std::vector<std::uint32_t> BigInt::mul_small(const std::vector<std::uint32_t>& a, std::uint32_t d) {
    if (a.empty() || d == 0) return {};
    std::vector<std::uint32_t> out;
    out.reserve(a.size() + 1);
    std::uint64_t carry = 0;
    for (std::uint32_t limb : a) {
        std::uint64_t cur = static_cast<std::uint64_t>(limb) * d + carry;
        out.push_back(static_cast<std::uint32_t>(cur % kBase));
        carry = cur / kBase;
    }
    while (carry) {
        out.push_back(static_cast<std::uint32_t>(carry % kBase));
        carry /= kBase;
    }
    return out;
}

BigInt BigInt::abs() const {
    BigInt out = *this;
    if (out.sign_ < 0) out.sign_ = 1;
    return out;
}

BigInt BigInt::operator-() const {
    BigInt out = *this;
    out.sign_ = -out.sign_;
    return out;
}

BigInt& BigInt::operator+=(const BigInt& o) {
    if (o.sign_ == 0) return *this;
    if (sign_ == 0) return *this = o;
    if (sign_ == o.sign_) {
        limbs_ = add_mag(limbs_, o.limbs_);
        return *this;
    }
    int cmp = cmp_mag(limbs_, o.limbs_);
    if (cmp == 0) {
        sign_ = 0;
        limbs_.clear();
    } else if (cmp > 0) {
        limbs_ = sub_mag(limbs_, o.limbs_);
    } else {
        limbs_ = sub_mag(o.limbs_, limbs_);
        sign_ = o.sign_;
    }
    return *this;
}

BigInt& BigInt::operator-=(const BigInt& o) { return *this += -o; }

BigInt& BigInt::operator*=(const BigInt& o) {
    sign_ = sign_ * o.sign_;
    limbs_ = mul_mag(limbs_, o.limbs_);
    if (limbs_.empty()) sign_ = 0;
    return *this;
}

void BigInt::divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r) {
    if (b.sign_ == 0) throw std::domain_error("BigInt: division by zero");
    if (cmp_mag(a.limbs_, b.limbs_) < 0) {
        q = BigInt();
        r = a;
        return;
    }
    // Schoolbook long division limb by limb; each quotient limb is found by
    // binary search on d with |b|*d <= rem.
    std::vector<std::uint32_t> quot(a.limbs_.size(), 0);
    std::vector<std::uint32_t> rem;
    for (std::size_t i = a.limbs_.size(); i-- > 0;) {
        rem.insert(rem.begin(), a.limbs_[i]);
        while (!rem.empty() && rem.back() == 0) rem.pop_back();
        std::uint32_t lo = 0, hi = kBase - 1, digit = 0;
        while (lo <= hi) {
            std::uint32_t mid = lo + (hi - lo) / 2;
            if (cmp_mag(mul_small(b.limbs_, mid), rem) <= 0) {
                digit = mid;
                if (mid == kBase - 1) break;
                lo = mid + 1;
            } else {
                if (mid == 0) break;
                hi = mid - 1;
            }
        }
        quot[i] = digit;
        if (digit != 0) rem = sub_mag(rem, mul_small(b.limbs_, digit));
    }
    q.limbs_ = std::move(quot);
    q.sign_ = a.sign_ * b.sign_;
    q.trim();
    r.limbs_ = std::move(rem);
    r.sign_ = a.sign_;
    r.trim();
}

BigInt operator/(const BigInt& a, const BigInt& b) {
    BigInt q, r;
    BigInt::divmod(a, b, q, r);
    return q;
}

BigInt operator%(const BigInt& a, const BigInt& b) {
    BigInt q, r;
    BigInt::divmod(a, b, q, r);
    return r;
}

std::strong_ordering BigInt::operator<=>(const BigInt& o) const {
    if (sign_ != o.sign_) return sign_ <=> o.sign_;
    int cmp = cmp_mag(limbs_, o.limbs_);
    if (sign_ < 0) cmp = -cmp;
    return cmp <=> 0;
}

bool BigInt::operator==(const BigInt& o) const {
    return sign_ == o.sign_ && limbs_ == o.limbs_;
}

BigInt BigInt::gcd(BigInt a, BigInt b) {
    a.sign_ = a.limbs_.empty() ? 0 : 1;
    b.sign_ = b.limbs_.empty() ? 0 : 1;
    while (!b.is_zero()) {
        BigInt q, r;
        divmod(a, b, q, r);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

BigInt BigInt::pow(const BigInt& base, unsigned exp) {
    BigInt out(1), cur = base;
    while (exp) {
        if (exp & 1u) out *= cur;
        exp >>= 1u;
        if (exp) cur *= cur;
    }
    return out;
}

BigInt BigInt::factorial(unsigned n) {
    BigInt out(1);
    for (unsigned i = 2; i <= n; ++i) out *= BigInt(i);
    return out;
}

BigInt BigInt::binomial(unsigned n, unsigned k) {
    if (k > n) return BigInt(0);
    if (k > n - k) k = n - k;
    BigInt out(1);
    for (unsigned i = 1; i <= k; ++i) {
        out *= BigInt(n - k + i);
        out = out / BigInt(i);
    }
    return out;
}

std::string BigInt::str() const {
    if (is_zero()) return "0";
    std::string out = sign_ < 0 ? "-" : "";
    out += std::to_string(limbs_.back());
    for (std::size_t i = limbs_.size() - 1; i-- > 0;) {
        std::string part = std::to_string(limbs_[i]);
        out += std::string(9 - part.size(), '0') + part;
    }
    return out;
}

long long BigInt::to_ll() const {
    long long out = 0;
    for (std::size_t i = limbs_.size(); i-- > 0;) {
        if (out > (std::numeric_limits<long long>::max() - limbs_[i]) / static_cast<long long>(kBase))
            throw std::overflow_error("BigInt: value does not fit in long long");
        out = out * kBase + limbs_[i];
    }
    return sign_ < 0 ? -out : out;
}

}  // namespace tautchern
