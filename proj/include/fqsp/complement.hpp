#pragma once

#include <vector>

#include "fqsp/fourier.hpp"

namespace fqsp {

// Hermitian Laurent polynomial P(z) = sum_{k=-q}^{q} a_k z^k with
// a_{-k} = conj(a_k); real-valued on the unit circle. Coefficients ascending,
// a_k at index k + order.
struct LaurentPolynomial {
    int order = 0;
    std::vector<cplx> coefficients;

    LaurentPolynomial() : coefficients(1, cplx(0.0, 0.0)) {}
    explicit LaurentPolynomial(int order_);

    cplx& a(int k) { return coefficients[static_cast<size_t>(k + order)]; }
    const cplx& a(int k) const {
        return coefficients[static_cast<size_t>(k + order)];
    }
};

cplx evaluate(const LaurentPolynomial& p, cplx z);

// G(z) = 1 - g(z) conj(g)(1/conj(z)): a_0 = 1 - sum_l |c_l|^2 and
// a_k = -sum_l c_l conj(c_{l-k}) for k != 0; order = 2 * g.half_order.
// On |z| = 1, G(e^{ix}) = 1 - |g(x)|^2.
LaurentPolynomial build_G(const FourierSeries& g);

// All roots of the polynomial sum_i coeffs[i] z^i (ascending, degree >= 1
// after trimming negligible leading coefficients). Companion-matrix
// eigenvalues polished by Newton steps; relative residual checked against
// tol. Deterministic order: sorted by (modulus, phase).
std::vector<cplx> poly_roots(const std::vector<cplx>& coeffs, double tol);

// Complementary series h with |g'(x)|^2 + |h(x)|^2 = 1 on the unit circle,
// where g' = g / (1 + margin). Returned h has g.half_order. The identity is
// verified on a 1001-point grid to 1e-8; failure raises NumericalError
// (retry with a larger margin).
FourierSeries complementary_series(const FourierSeries& g, double margin = 1e-6);

}  // namespace fqsp
