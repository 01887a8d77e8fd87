/* rational.hpp -- exact rational time arithmetic
 *
 * Every temporal quantity in this library (timestamps, guard membership
 * probes, output instants, tail offsets) is an exact rational. Equality is
 * structural: values are kept canonical (denominator > 0, gcd == 1), so no
 * comparison ever needs a tolerance.
 */
#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace tfsm {

class Rational {
public:
    constexpr Rational() = default;
    constexpr Rational(long long value) : num_(value), den_(1) {}

    Rational(long long num, long long den) {
        if (den == 0) throw std::domain_error("rational: zero denominator");
        *this = make(num, den);
    }

    long long numerator() const { return num_; }
    long long denominator() const { return den_; }
    bool is_integer() const { return den_ == 1; }
    bool is_negative() const { return num_ < 0; }
    bool is_zero() const { return num_ == 0; }

    // Largest integer <= *this.
    long long floor_value() const {
        long long q = num_ / den_;
        if (num_ % den_ != 0 && num_ < 0) --q;
        return q;
    }

    Rational fractional_part() const { return *this - Rational(floor_value()); }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return make(i128(a.num_) * b.den_ + i128(b.num_) * a.den_, i128(a.den_) * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return make(i128(a.num_) * b.den_ - i128(b.num_) * a.den_, i128(a.den_) * b.den_);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return make(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw std::domain_error("rational: division by zero");
        return make(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
    }
    Rational operator-() const {
        Rational r;
        r.num_ = -num_;
        r.den_ = den_;
        return r;
    }
    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }

    friend bool operator==(const Rational&, const Rational&) = default;
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        i128 lhs = i128(a.num_) * b.den_;
        i128 rhs = i128(b.num_) * a.den_;
        if (lhs < rhs) return std::strong_ordering::less;
        if (lhs > rhs) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    // Accepts "p/q", plain integers and exact decimals ("2.1" -> 21/10).
    static Rational parse(std::string_view text) {
        std::size_t pos = 0;
        bool negative = false;
        if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
            negative = text[pos] == '-';
            ++pos;
        }
        auto digits = [&](long long& out) {
            if (pos >= text.size() || !is_digit(text[pos]))
                throw std::invalid_argument("rational: expected digits in '" + std::string(text) + "'");
            out = 0;
            while (pos < text.size() && is_digit(text[pos])) {
                const long long d = text[pos] - '0';
                if (out > (std::numeric_limits<long long>::max() - d) / 10)
                    throw std::overflow_error("rational: literal too large");
                out = out * 10 + d;
                ++pos;
            }
        };
        long long whole = 0;
        digits(whole);
        Rational value(whole);
        if (pos < text.size() && text[pos] == '/') {
            ++pos;
            long long den = 0;
            digits(den);
            if (den == 0) throw std::domain_error("rational: zero denominator");
            value = Rational(whole, den);
        } else if (pos < text.size() && text[pos] == '.') {
            ++pos;
            long long frac = 0;
            std::size_t start = pos;
            digits(frac);
            long long scale = 1;
            for (std::size_t k = start; k < pos; ++k) {
                if (scale > std::numeric_limits<long long>::max() / 10)
                    throw std::overflow_error("rational: literal too precise");
                scale *= 10;
            }
            value = Rational(whole) + Rational(frac, scale);
        }
        if (pos != text.size())
            throw std::invalid_argument("rational: trailing characters in '" + std::string(text) + "'");
        return negative ? -value : value;
    }

    // Compact form: "2", "21/10".
    std::string str() const {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    // Always slash-separated: "2/1", "21/10". Used by the JSON layer.
    std::string str_fraction() const {
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

private:
    using i128 = __int128;

    static bool is_digit(char c) { return c >= '0' && c <= '9'; }

    static Rational make(i128 num, i128 den) {
        if (den < 0) {
            num = -num;
            den = -den;
        }
        i128 g = gcd128(num < 0 ? -num : num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
        constexpr i128 max64 = std::numeric_limits<long long>::max();
        if (num > max64 || num < -max64 || den > max64)
            throw std::overflow_error("rational: value out of 64-bit range");
        Rational r;
        r.num_ = static_cast<long long>(num);
        r.den_ = static_cast<long long>(den);
        return r;
    }

    static i128 gcd128(i128 a, i128 b) {
        while (b != 0) {
            i128 t = a % b;
            a = b;
            b = t;
        }
        return a == 0 ? 1 : a;
    }

    long long num_ = 0;
    long long den_ = 1;
};

} // namespace tfsm
