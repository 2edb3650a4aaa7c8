#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "fqsp/errors.hpp"

namespace fqsp {

using cplx = std::complex<double>;

// Truncated Fourier series g(x) = sum_{m=-M}^{M} c_m e^{imx} on [-pi, pi),
// M = half_order. Coefficients are stored in ascending m; c_m lives at index
// m + half_order.
struct FourierSeries {
    int half_order = 0;
    std::vector<cplx> coefficients;

    FourierSeries() : coefficients(1, cplx(0.0, 0.0)) {}
    explicit FourierSeries(int half_order_);

    cplx& c(int m) { return coefficients[static_cast<size_t>(m + half_order)]; }
    const cplx& c(int m) const {
        return coefficients[static_cast<size_t>(m + half_order)];
    }

    bool valid() const;
};

// Result of a dense-grid sup-norm comparison.
struct GridReport {
    int grid_points = 0;
    double interval_lo = 0.0;
    double interval_hi = 0.0;
    double max_abs_error = 0.0;
    double argmax_x = 0.0;
};

// Horner evaluation in z = e^{ix}; cost O(half_order).
cplx evaluate(const FourierSeries& s, double x);

// Coefficients of g by the trapezoid rule on the uniform periodic grid
// x_j = -pi + 2 pi j / N, j = 0..N-1. Exact (to rounding) whenever g is itself
// band-limited below the alias threshold. Requires quad_points >= 4*half_order+4.
FourierSeries coefficients_by_quadrature(const std::function<cplx(double)>& g,
                                         int half_order, int quad_points);

// max_i |s(x_i) - reference(x_i)| over the inclusive uniform grid
// x_i = lo + (hi-lo) i/(points-1). Requires [lo, hi] inside [-pi, pi],
// lo < hi, points >= 2.
GridReport sup_error_on_grid(const FourierSeries& s,
                             const std::function<cplx(double)>& reference,
                             double lo, double hi, int points);

// sum_m |c_m|; upper-bounds sup_x |g(x)|.
double l1_norm(const FourierSeries& s);

// max_i |s(x_i)| over a uniform inclusive grid on [-pi, pi].
double grid_max_abs(const FourierSeries& s, int points);

FourierSeries scaled(const FourierSeries& s, cplx factor);

}  // namespace fqsp
