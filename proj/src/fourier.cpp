#include "fqsp/fourier.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace fqsp {

namespace {
constexpr double kPi = std::numbers::pi;
}

FourierSeries::FourierSeries(int half_order_) : half_order(half_order_) {
    if (half_order_ < 0)
        throw std::invalid_argument("FourierSeries: half_order must be >= 0");
    coefficients.assign(static_cast<size_t>(2 * half_order_ + 1), cplx(0.0, 0.0));
}

bool FourierSeries::valid() const {
    if (half_order < 0) return false;
    if (coefficients.size() != static_cast<size_t>(2 * half_order + 1)) return false;
    for (const cplx& c : coefficients)
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
    return true;
}

cplx evaluate(const FourierSeries& s, double x) {
    // Horner in z = e^{ix} over ascending m, then shift by z^{-M}.
    const cplx z = std::polar(1.0, x);
    cplx acc(0.0, 0.0);
    for (size_t k = s.coefficients.size(); k-- > 0;)
        acc = acc * z + s.coefficients[k];
    return acc * std::polar(1.0, -static_cast<double>(s.half_order) * x);
}

FourierSeries coefficients_by_quadrature(const std::function<cplx(double)>& g,
                                         int half_order, int quad_points) {
    if (half_order < 0)
        throw std::invalid_argument("coefficients_by_quadrature: half_order must be >= 0");
    if (quad_points < 4 * half_order + 4)
        throw std::invalid_argument(
            "coefficients_by_quadrature: quad_points must be >= 4*half_order + 4 "
            "(got " + std::to_string(quad_points) + ")");

    const int N = quad_points;
    const int M = half_order;
    FourierSeries out(M);
    for (int j = 0; j < N; ++j) {
        const double xj = -kPi + 2.0 * kPi * j / N;
        const cplx gj = g(xj) / static_cast<double>(N);
        // phase recurrence over m; drift O(M eps) is far below quadrature error
        const cplx w = std::polar(1.0, xj);  // e^{+i x_j}; c_m picks e^{-i m x_j}
        cplx p = std::polar(1.0, static_cast<double>(M) * xj);  // m = -M term
        for (int i = 0; i < 2 * M + 1; ++i) {
            out.coefficients[static_cast<size_t>(i)] += gj * p;
            p *= std::conj(w);
        }
    }
    return out;
}

GridReport sup_error_on_grid(const FourierSeries& s,
                             const std::function<cplx(double)>& reference,
                             double lo, double hi, int points) {
    if (!(lo < hi))
        throw std::invalid_argument("sup_error_on_grid: need lo < hi");
    if (lo < -kPi - 1e-12 || hi > kPi + 1e-12)
        throw std::invalid_argument("sup_error_on_grid: interval must lie in [-pi, pi]");
    if (points < 2)
        throw std::invalid_argument("sup_error_on_grid: need at least 2 points");

    GridReport rep;
    rep.grid_points = points;
    rep.interval_lo = lo;
    rep.interval_hi = hi;
    for (int i = 0; i < points; ++i) {
        const double x = lo + (hi - lo) * i / (points - 1);
        const double err = std::abs(evaluate(s, x) - reference(x));
        if (err > rep.max_abs_error) {
            rep.max_abs_error = err;
            rep.argmax_x = x;
        }
    }
    return rep;
}

double l1_norm(const FourierSeries& s) {
    double sum = 0.0;
    for (const cplx& c : s.coefficients) sum += std::abs(c);
    return sum;
}

double grid_max_abs(const FourierSeries& s, int points) {
    if (points < 2)
        throw std::invalid_argument("grid_max_abs: need at least 2 points");
    double mx = 0.0;
    for (int i = 0; i < points; ++i) {
        const double x = -kPi + 2.0 * kPi * i / (points - 1);
        mx = std::max(mx, std::abs(evaluate(s, x)));
    }
    return mx;
}

FourierSeries scaled(const FourierSeries& s, cplx factor) {
    FourierSeries out = s;
    for (cplx& c : out.coefficients) c *= factor;
    return out;
}

}  // namespace fqsp
