#include "wlab/bigint.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wlab::diffpoly {

namespace {
constexpr std::uint64_t kBase = 1ull << 32;
}

BigInt::BigInt(long long v) {
    if (v < 0) {
        sign_ = -1;
        // avoid overflow on LLONG_MIN
        unsigned long long u = static_cast<unsigned long long>(-(v + 1)) + 1ull;
        while (u) {
            mag_.push_back(static_cast<std::uint32_t>(u & 0xffffffffu));
            u >>= 32;
        }
    } else {
        unsigned long long u = static_cast<unsigned long long>(v);
        while (u) {
            mag_.push_back(static_cast<std::uint32_t>(u & 0xffffffffu));
            u >>= 32;
        }
    }
}

void BigInt::trim() {
    while (!mag_.empty() && mag_.back() == 0) mag_.pop_back();
    if (mag_.empty()) sign_ = +1;
}

BigInt BigInt::negated() const {
    BigInt r = *this;
    if (!r.mag_.empty()) r.sign_ = -r.sign_;
    return r;
}

BigInt BigInt::abs() const {
    BigInt r = *this;
    r.sign_ = +1;
    return r;
}

int BigInt::cmp_mag(const BigInt& a, const BigInt& b) {
    if (a.mag_.size() != b.mag_.size()) return a.mag_.size() < b.mag_.size() ? -1 : 1;
    for (std::size_t i = a.mag_.size(); i-- > 0;) {
        if (a.mag_[i] != b.mag_[i]) return a.mag_[i] < b.mag_[i] ? -1 : 1;
    }
    return 0;
}

int BigInt::cmp(const BigInt& a, const BigInt& b) {
    if (a.sign() != b.sign()) return a.sign() < b.sign() ? -1 : 1;
    const int m = cmp_mag(a, b);
    return a.sign() >= 0 ? m : -m;
}

std::vector<std::uint32_t> BigInt::add_mag(const std::vector<std::uint32_t>& a,
                                           const std::vector<std::uint32_t>& b) {
    std::vector<std::uint32_t> r;
    r.reserve(std::max(a.size(), b.size()) + 1);
    std::uint64_t carry = 0;
    for (std::size_t i = 0; i < std::max(a.size(), b.size()) || carry; ++i) {
        std::uint64_t s = carry;
        if (i < a.size()) s += a[i];
        if (i < b.size()) s += b[i];
        r.push_back(static_cast<std::uint32_t>(s & 0xffffffffu));
        carry = s >> 32;
    }
    return r;
}

// requires |a| >= |b|
std::vector<std::uint32_t> BigInt::sub_mag(const std::vector<std::uint32_t>& a,
                                           const std::vector<std::uint32_t>& b) {
    std::vector<std::uint32_t> r = a;
    std::int64_t borrow = 0;
    for (std::size_t i = 0; i < r.size(); ++i) {
        std::int64_t cur = static_cast<std::int64_t>(r[i]) - borrow -
                           (i < b.size() ? static_cast<std::int64_t>(b[i]) : 0);
        borrow = 0;
        if (cur < 0) {
            cur += static_cast<std::int64_t>(kBase);
            borrow = 1;
        }
        r[i] = static_cast<std::uint32_t>(cur);
    }
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
}

BigInt operator+(const BigInt& a, const BigInt& b) {
    BigInt r;
    if (a.sign_ == b.sign_) {
        r.sign_ = a.sign_;
        r.mag_ = BigInt::add_mag(a.mag_, b.mag_);
    } else {
        const int m = BigInt::cmp_mag(a, b);
        if (m == 0) return BigInt();
        if (m > 0) {
            r.sign_ = a.sign_;
            r.mag_ = BigInt::sub_mag(a.mag_, b.mag_);
        } else {
            r.sign_ = b.sign_;
            r.mag_ = BigInt::sub_mag(b.mag_, a.mag_);
        }
    }
    r.trim();
    return r;
}

BigInt operator-(const BigInt& a, const BigInt& b) { return a + b.negated(); }

BigInt operator*(const BigInt& a, const BigInt& b) {
    if (a.is_zero() || b.is_zero()) return BigInt();
    BigInt r;
    r.sign_ = a.sign_ * b.sign_;
    r.mag_.assign(a.mag_.size() + b.mag_.size(), 0);
    for (std::size_t i = 0; i < a.mag_.size(); ++i) {
        std::uint64_t carry = 0;
        for (std::size_t j = 0; j < b.mag_.size() || carry; ++j) {
            std::uint64_t cur = r.mag_[i + j] + carry;
            if (j < b.mag_.size())
                cur += static_cast<std::uint64_t>(a.mag_[i]) * b.mag_[j];
            r.mag_[i + j] = static_cast<std::uint32_t>(cur & 0xffffffffu);
            carry = cur >> 32;
        }
    }
    r.trim();
    return r;
}

void BigInt::divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r) {
    if (b.is_zero()) throw std::domain_error("BigInt division by zero");
    q = BigInt();
    r = BigInt();
    if (cmp_mag(a, b) < 0) {
        r = a;
        return;
    }
    // schoolbook long division over bits
    const std::size_t nbits = a.mag_.size() * 32;
    BigInt rem;
    std::vector<std::uint32_t> qm(a.mag_.size(), 0);
    for (std::size_t i = nbits; i-- > 0;) {
        // rem <<= 1
        std::uint32_t carry = 0;
        for (std::size_t w = 0; w < rem.mag_.size(); ++w) {
            const std::uint32_t nv = (rem.mag_[w] << 1) | carry;
            carry = rem.mag_[w] >> 31;
            rem.mag_[w] = nv;
        }
        if (carry) rem.mag_.push_back(carry);
        const std::uint32_t bit = (a.mag_[i / 32] >> (i % 32)) & 1u;
        if (bit) {
            if (rem.mag_.empty()) rem.mag_.push_back(1u);
            else {
                std::uint64_t s = static_cast<std::uint64_t>(rem.mag_[0]) + 1ull;
                rem.mag_[0] = static_cast<std::uint32_t>(s & 0xffffffffu);
                std::size_t w = 1;
                std::uint64_t c = s >> 32;
                while (c) {
                    if (w == rem.mag_.size()) rem.mag_.push_back(0);
                    std::uint64_t t = rem.mag_[w] + c;
                    rem.mag_[w] = static_cast<std::uint32_t>(t & 0xffffffffu);
                    c = t >> 32;
                    ++w;
                }
            }
        }
        if (cmp_mag(rem, b) >= 0) {
            rem.mag_ = sub_mag(rem.mag_, b.mag_);
            qm[i / 32] |= (1u << (i % 32));
        }
    }
    q.mag_ = std::move(qm);
    q.sign_ = a.sign_ * b.sign_;
    q.trim();
    rem.sign_ = a.sign_;
    rem.trim();
    r = rem;
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

BigInt BigInt::gcd(BigInt a, BigInt b) {
    a = a.abs();
    b = b.abs();
    while (!b.is_zero()) {
        BigInt r = a % b;
        a = b;
        b = r;
    }
    return a.is_zero() ? BigInt(1) : a;
}

double BigInt::to_double() const {
    double v = 0.0;
    for (std::size_t i = mag_.size(); i-- > 0;) v = v * 4294967296.0 + mag_[i];
    return sign_ < 0 ? -v : v;
}

bool BigInt::fits_ll() const {
    if (mag_.size() > 2) return false;
    const double v = to_double();
    return std::abs(v) < 9.0e18;
}

long long BigInt::to_ll() const {
    unsigned long long u = 0;
    for (std::size_t i = mag_.size(); i-- > 0;) u = (u << 32) | mag_[i];
    return sign_ < 0 ? -static_cast<long long>(u) : static_cast<long long>(u);
}

std::string BigInt::to_string() const {
    if (is_zero()) return "0";
    BigInt t = abs();
    std::string digits;
    const BigInt ten(10);
    while (!t.is_zero()) {
        BigInt q, r;
        divmod(t, ten, q, r);
        const long long d = r.is_zero() ? 0 : r.to_ll();
        digits.push_back(static_cast<char>('0' + d));
        t = q;
    }
    if (sign_ < 0) digits.push_back('-');
    std::reverse(digits.begin(), digits.end());
    return digits;
}

Rat::Rat(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) { normalize(); }

void Rat::normalize() {
    if (den_.is_zero()) throw std::domain_error("rational with zero denominator");
    if (num_.is_zero()) {
        den_ = BigInt(1);
        return;
    }
    if (den_.sign() < 0) {
        num_ = num_.negated();
        den_ = den_.negated();
    }
    const BigInt g = BigInt::gcd(num_, den_);
    num_ = num_ / g;
    den_ = den_ / g;
}

Rat operator+(const Rat& a, const Rat& b) { return Rat(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_); }
Rat operator-(const Rat& a, const Rat& b) { return Rat(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_); }
Rat operator*(const Rat& a, const Rat& b) { return Rat(a.num_ * b.num_, a.den_ * b.den_); }
Rat operator/(const Rat& a, const Rat& b) {
    if (b.is_zero()) throw std::domain_error("rational division by zero");
    return Rat(a.num_ * b.den_, a.den_ * b.num_);
}
Rat Rat::operator-() const { return Rat(num_.negated(), den_); }

bool Rat::operator==(const Rat& o) const {
    return BigInt::cmp(num_, o.num_) == 0 && BigInt::cmp(den_, o.den_) == 0;
}

double Rat::to_double() const { return num_.to_double() / den_.to_double(); }

std::string Rat::to_string() const {
    if (den_ == BigInt(1)) return num_.to_string();
    return num_.to_string() + "/" + den_.to_string();
}

} // namespace wlab::diffpoly
