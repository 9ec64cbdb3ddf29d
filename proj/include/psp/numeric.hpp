#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <limits>

namespace psp {

using Complex = std::complex<double>;

/// The Piatetski-Shapiro exponent c together with gamma = 1/c.
///
/// Every PS computation carries one of these. Construction validates
/// 1 < c < 2; gamma is the correctly rounded reciprocal. Exact membership
/// decisions never use the rounded gamma (see ceil_root).
class GammaExponent {
public:
    static GammaExponent from_c(double c);

    double c() const noexcept { return c_; }
    double gamma() const noexcept { return gamma_; }

private:
    GammaExponent(double c, double gamma) : c_(c), gamma_(gamma) {}
    double c_;
    double gamma_;
};

/// A real number known to lie in [value - radius, value + radius].
struct CertifiedReal {
    double value = 0.0;
    double radius = 0.0;

    double lower() const noexcept { return value - radius; }
    double upper() const noexcept { return value + radius; }
    bool contains(double t) const noexcept { return lower() <= t && t <= upper(); }
};

/// Enclosure of n^e from one hardware pow call.
CertifiedReal certified_pow(std::int64_t n, double e);

/// Exactly floor(n^e), for n >= 1 and 0 < e < 4.
///
/// The interval evaluation is escalated (double, long double, MPFR at
/// increasing precision) until the enclosure lies strictly inside one unit
/// interval. Exact integer values are detected through the dyadic form of e.
/// Throws PreconditionError on bad arguments or if the result overflows int64.
std::int64_t floor_pow(std::int64_t n, double e);

/// Exactly ceil(m^{1/c}), i.e. the least n >= 1 with n^c >= m.
std::int64_t ceil_root(std::int64_t m, double c);

/// Sawtooth {t} - 1/2, in [-1/2, 1/2).
inline double psi(double t) noexcept { return t - std::floor(t) - 0.5; }

/// e(t) = exp(2 pi i t); the argument is reduced mod 1 first.
Complex unit_exp(double t) noexcept;

/// Gamma function for s > 0 via the Lanczos approximation (g = 7, 9 terms).
double gamma_fn(double s);

/// Neumaier (improved Kahan-Babuska) summation with a running error bound.
class CompensatedSum {
public:
    void add(double x) noexcept
    {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
        abs_sum_ += std::abs(x);
        ++count_;
    }

    CompensatedSum& operator+=(double x) noexcept
    {
        add(x);
        return *this;
    }

    double value() const noexcept { return sum_ + comp_; }
    std::size_t count() const noexcept { return count_; }

    /// |value() - exact sum of the added doubles| is at most this.
    /// Neumaier: 2u|S| + 4 n u^2 sum|x_i|, u the unit roundoff.
    double error_bound() const noexcept
    {
        constexpr double u = std::numeric_limits<double>::epsilon() / 2;
        const double n = static_cast<double>(count_);
        return 2 * u * std::abs(value()) + 4 * n * u * u * abs_sum_;
    }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
    double abs_sum_ = 0.0;
    std::size_t count_ = 0;
};

class ComplexCompensatedSum {
public:
    void add(Complex z) noexcept
    {
        re_.add(z.real());
        im_.add(z.imag());
    }

    ComplexCompensatedSum& operator+=(Complex z) noexcept
    {
        add(z);
        return *this;
    }

    Complex value() const noexcept { return {re_.value(), im_.value()}; }
    std::size_t count() const noexcept { return re_.count(); }
    double error_bound() const noexcept { return std::hypot(re_.error_bound(), im_.error_bound()); }

private:
    CompensatedSum re_;
    CompensatedSum im_;
};

} // namespace psp
