#include "psp/vaaler.hpp"

#include "psp/error.hpp"

#include <numbers>

namespace psp {

namespace {

double vaaler_phi(double t)
{
    const double pt = std::numbers::pi * t;
    return pt * (1.0 - t) * std::cos(pt) / std::sin(pt) + t;
}

} // namespace

VaalerApprox::VaalerApprox(std::int64_t H) : h_(H)
{
    if (H < 1)
        throw PreconditionError("vaaler_coeffs: H must be >= 1");
    weight_.resize(static_cast<std::size_t>(H));
    for (std::int64_t h = 1; h <= H; ++h)
        weight_[static_cast<std::size_t>(h - 1)] = vaaler_phi(static_cast<double>(h) / static_cast<double>(H + 1));
}

Complex VaalerApprox::a(std::int64_t h) const
{
    if (h == 0 || h > h_ || h < -h_)
        return 0.0;
    const double w = weight_[static_cast<std::size_t>(std::abs(h) - 1)];
    // -phi / (2 pi i h) = i phi / (2 pi h)
    return {0.0, w / (2 * std::numbers::pi * static_cast<double>(h))};
}

double VaalerApprox::b(std::int64_t h) const
{
    if (h > h_ || h < -h_)
        return 0.0;
    const double hp1 = static_cast<double>(h_ + 1);
    return (1.0 - static_cast<double>(std::abs(h)) / hp1) / (2.0 * hp1);
}

double VaalerApprox::approximation(double t) const
{
    CompensatedSum acc;
    for (std::int64_t h = 1; h <= h_; ++h) {
        const double s = unit_exp(static_cast<double>(h) * t).imag();
        acc += -weight_[static_cast<std::size_t>(h - 1)] * s / (std::numbers::pi * static_cast<double>(h));
    }
    return acc.value();
}

double VaalerApprox::majorant(double t) const
{
    CompensatedSum acc;
    acc += b(0);
    for (std::int64_t h = 1; h <= h_; ++h)
        acc += 2.0 * b(h) * unit_exp(static_cast<double>(h) * t).real();
    return acc.value();
}

VaalerGridCheck vaaler_grid_check(const VaalerApprox& v, std::uint64_t points, Parallelism par)
{
    if (points < 1)
        throw PreconditionError("vaaler_grid_check: need at least one grid point");
    const auto H = static_cast<std::uint64_t>(v.order());
    const double inv = 1.0 / static_cast<double>(points);
    std::vector<double> excess(points);
    parallel_for(points, par, [&](std::size_t j) {
        CompensatedSum approx, major;
        major += v.b(0);
        std::uint64_t r = 0; // h j mod points
        for (std::uint64_t h = 1; h <= H; ++h) {
            r += j;
            if (r >= points)
                r %= points;
            const Complex e = unit_exp(static_cast<double>(r) * inv);
            const auto hh = static_cast<std::int64_t>(h);
            approx += 2.0 * (v.a(hh) * e).real();
            major += 2.0 * v.b(hh) * e.real();
        }
        const double t = static_cast<double>(j) * inv;
        excess[j] = std::abs(psi(t) - approx.value()) - major.value();
    });
    VaalerGridCheck out{points, excess[0], 0.0};
    for (std::size_t j = 1; j < points; ++j) {
        if (excess[j] > out.max_excess) {
            out.max_excess = excess[j];
            out.worst_t = static_cast<double>(j) * inv;
        }
    }
    return out;
}

} // namespace psp
