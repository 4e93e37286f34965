#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace sgsolve {

/**
 * Exact rational arithmetic on 128-bit integers.
 *
 * Every operation normalizes (gcd-reduced, positive denominator) and checks
 * for overflow; an operation that would overflow throws std::overflow_error
 * instead of producing a wrong value. Desk-scale eliminations (games up to a
 * few dozen states with small input denominators) stay far below the 128-bit
 * limit.
 */
class Rational {
public:
    using Int = __int128;

    Rational() : num_(0), den_(1) {}
    Rational(std::int64_t value) : num_(value), den_(1) {}  // NOLINT: implicit by design
    Rational(std::int64_t num, std::int64_t den) : num_(num), den_(den) { normalize(); }

    static Rational from_int128(Int num, Int den) {
        Rational r;
        r.num_ = num;
        r.den_ = den;
        r.normalize();
        return r;
    }

    Int numerator() const { return num_; }
    Int denominator() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_negative() const { return num_ < 0; }

    Rational operator-() const { return from_int128(-num_, den_); }

    Rational operator+(const Rational& o) const {
        Int g = gcd_int(den_, o.den_);
        Int lhs = checked_mul(num_, o.den_ / g);
        Int rhs = checked_mul(o.num_, den_ / g);
        return from_int128(checked_add(lhs, rhs), checked_mul(den_, o.den_ / g));
    }

    Rational operator-(const Rational& o) const { return *this + (-o); }

    Rational operator*(const Rational& o) const {
        Int g1 = gcd_int(num_, o.den_);
        Int g2 = gcd_int(o.num_, den_);
        return from_int128(checked_mul(num_ / g1, o.num_ / g2),
                           checked_mul(den_ / g2, o.den_ / g1));
    }

    Rational operator/(const Rational& o) const {
        if (o.num_ == 0)
            throw std::domain_error("rational division by zero");
        return *this * from_int128(o.den_, o.num_);
    }

    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const Rational& o) const { return !(*this == o); }
    bool operator<(const Rational& o) const {
        return checked_mul(num_, o.den_) < checked_mul(o.num_, den_);
    }
    bool operator<=(const Rational& o) const { return !(o < *this); }
    bool operator>(const Rational& o) const { return o < *this; }
    bool operator>=(const Rational& o) const { return !(*this < o); }

    Rational abs() const { return num_ < 0 ? -*this : *this; }

    double to_double() const {
        return static_cast<double>(num_) / static_cast<double>(den_);
    }

    /// "p" when the denominator is 1, "p/q" otherwise.
    std::string to_string() const {
        std::string s = int128_to_string(num_);
        if (den_ != 1) {
            s += '/';
            s += int128_to_string(den_);
        }
        return s;
    }

    static std::string int128_to_string(Int v) {
        if (v == 0)
            return "0";
        bool neg = v < 0;
        unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v)
                                  : static_cast<unsigned __int128>(v);
        std::string digits;
        while (u != 0) {
            digits += static_cast<char>('0' + static_cast<int>(u % 10));
            u /= 10;
        }
        if (neg)
            digits += '-';
        return std::string(digits.rbegin(), digits.rend());
    }

private:
    void normalize() {
        if (den_ == 0)
            throw std::invalid_argument("rational with zero denominator");
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        Int g = gcd_int(num_, den_);
        num_ /= g;
        den_ /= g;
    }

    static Int gcd_int(Int a, Int b) {
        unsigned __int128 x = a < 0 ? -static_cast<unsigned __int128>(a)
                                    : static_cast<unsigned __int128>(a);
        unsigned __int128 y = b < 0 ? -static_cast<unsigned __int128>(b)
                                    : static_cast<unsigned __int128>(b);
        while (y != 0) {
            unsigned __int128 t = x % y;
            x = y;
            y = t;
        }
        return x == 0 ? 1 : static_cast<Int>(x);
    }

    static Int checked_mul(Int a, Int b) {
        Int r;
        if (__builtin_mul_overflow(a, b, &r))
            throw std::overflow_error("rational arithmetic overflow (mul)");
        return r;
    }

    static Int checked_add(Int a, Int b) {
        Int r;
        if (__builtin_add_overflow(a, b, &r))
            throw std::overflow_error("rational arithmetic overflow (add)");
        return r;
    }

    Int num_;
    Int den_;
};

}  // namespace sgsolve
