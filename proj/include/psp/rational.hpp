#pragma once

#include <gmpxx.h>

#include <compare>
#include <string>
#include <string_view>

namespace psp {

/// Exact rational with arbitrary-precision parts, always in lowest terms
/// with a positive denominator.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(long n) : num_(n), den_(1) {} // NOLINT(google-explicit-constructor)
    Rational(long num, long den) : Rational(mpz_class(num), mpz_class(den)) {}
    Rational(mpz_class num, mpz_class den);

    /// Parses "p", "-p", "p/q". Throws std::invalid_argument on malformed input.
    static Rational parse(std::string_view text);

    const mpz_class& numerator() const noexcept { return num_; }
    const mpz_class& denominator() const noexcept { return den_; }

    /// Always "p/q", including integers ("0/1", "1/1").
    std::string str() const;
    double to_double() const;
    int sign() const { return sgn(num_); }

    Rational operator-() const { return Rational(mpz_class(-num_), den_, Canonical{}); }
    friend Rational operator+(const Rational& a, const Rational& b);
    friend Rational operator-(const Rational& a, const Rational& b);
    friend Rational operator*(const Rational& a, const Rational& b);
    friend Rational operator/(const Rational& a, const Rational& b);
    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }

    friend bool operator==(const Rational& a, const Rational& b)
    {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

private:
    struct Canonical {};
    Rational(mpz_class num, mpz_class den, Canonical) : num_(std::move(num)), den_(std::move(den)) {}

    mpz_class num_;
    mpz_class den_;
};

inline const Rational& min(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline const Rational& max(const Rational& a, const Rational& b) { return a < b ? b : a; }

} // namespace psp
