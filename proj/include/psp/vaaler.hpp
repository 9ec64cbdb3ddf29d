#pragma once

#include "psp/numeric.hpp"
#include "psp/parallel.hpp"

#include <cstdint>
#include <vector>

namespace psp {

/// Vaaler's trigonometric approximation of the sawtooth:
///   |psi(t) - sum_{0<|h|<=H} a_h e(ht)| <= sum_{|h|<=H} b_h e(ht)
/// with
///   a_h = -phi(h/(H+1)) / (2 pi i h),   phi(t) = pi t (1-|t|) cot(pi t) + |t|,
///   b_h = (1 - |h|/(H+1)) / (2H + 2).
/// The majorant is a scaled Fejer kernel, hence real and non-negative.
class VaalerApprox {
public:
    explicit VaalerApprox(std::int64_t H);

    std::int64_t order() const noexcept { return h_; }
    /// a_h for 0 < |h| <= H (zero otherwise).
    Complex a(std::int64_t h) const;
    /// b_h for |h| <= H (zero otherwise).
    double b(std::int64_t h) const;

    /// sum_{0<|h|<=H} a_h e(ht); real since a_{-h} = conj(a_h).
    double approximation(double t) const;
    /// sum_{|h|<=H} b_h e(ht).
    double majorant(double t) const;

private:
    std::int64_t h_;
    std::vector<double> weight_; // phi(h/(H+1)) for h = 1..H
};

inline VaalerApprox vaaler_coeffs(std::int64_t H) { return VaalerApprox(H); }

struct VaalerGridCheck {
    std::uint64_t points = 0;
    /// max over the grid of |psi(t) - approx(t)| - majorant(t).
    double max_excess = 0;
    double worst_t = 0;
};

/// Checks the pointwise inequality at t = j / points, j = 0..points-1.
/// Arguments h t are reduced mod 1 in exact integer arithmetic.
VaalerGridCheck vaaler_grid_check(const VaalerApprox& v, std::uint64_t points, Parallelism par = {});

} // namespace psp
