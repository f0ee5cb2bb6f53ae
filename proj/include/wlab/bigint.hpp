#ifndef WLAB_BIGINT_HPP
#define WLAB_BIGINT_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace wlab::diffpoly {

// Sign-magnitude arbitrary-precision integer, base 2^32. Only what the
// rational arithmetic below needs: add/sub/mul/divmod/gcd/compare.
class BigInt {
public:
    BigInt() = default;
    BigInt(long long v);

    bool is_zero() const { return mag_.empty(); }
    int sign() const { return mag_.empty() ? 0 : sign_; }
    BigInt negated() const;
    BigInt abs() const;

    static int cmp(const BigInt& a, const BigInt& b);         // signed compare
    static int cmp_mag(const BigInt& a, const BigInt& b);     // |a| vs |b|

    friend BigInt operator+(const BigInt& a, const BigInt& b);
    friend BigInt operator-(const BigInt& a, const BigInt& b);
    friend BigInt operator*(const BigInt& a, const BigInt& b);
    // truncated toward zero
    static void divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r);
    friend BigInt operator/(const BigInt& a, const BigInt& b);
    friend BigInt operator%(const BigInt& a, const BigInt& b);

    bool operator==(const BigInt& o) const { return cmp(*this, o) == 0; }
    bool operator!=(const BigInt& o) const { return cmp(*this, o) != 0; }
    bool operator<(const BigInt& o) const { return cmp(*this, o) < 0; }

    static BigInt gcd(BigInt a, BigInt b);

    double to_double() const;
    std::string to_string() const;
    bool fits_ll() const;
    long long to_ll() const; // caller checks fits_ll

private:
    int sign_ = +1;
    std::vector<std::uint32_t> mag_; // little endian limbs, no leading zeros

    void trim();
    static std::vector<std::uint32_t> add_mag(const std::vector<std::uint32_t>&,
                                              const std::vector<std::uint32_t>&);
    static std::vector<std::uint32_t> sub_mag(const std::vector<std::uint32_t>&,
                                              const std::vector<std::uint32_t>&);
};

// Exact rational with normalized sign and gcd-reduced terms.
class Rat {
public:
    Rat() : num_(0), den_(1) {}
    Rat(long long n) : num_(n), den_(1) {}
    Rat(BigInt n, BigInt d);
    static Rat of(long long n, long long d) { return Rat(BigInt(n), BigInt(d)); }

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }

    friend Rat operator+(const Rat& a, const Rat& b);
    friend Rat operator-(const Rat& a, const Rat& b);
    friend Rat operator*(const Rat& a, const Rat& b);
    friend Rat operator/(const Rat& a, const Rat& b);
    Rat operator-() const;

    bool operator==(const Rat& o) const;
    bool operator!=(const Rat& o) const { return !(*this == o); }

    double to_double() const;
    std::string to_string() const;

private:
    BigInt num_, den_; // den > 0
    void normalize();
};

} // namespace wlab::diffpoly

#endif
