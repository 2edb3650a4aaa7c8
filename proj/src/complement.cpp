#include "fqsp/complement.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace fqsp {

namespace {

constexpr double kPi = std::numbers::pi;

// autocorrelation corr(d)_k = sum_j d_j conj(d_{j-k}) for k = -q..q, d on
// index range [-M, M] (stored at j + M)
std::vector<cplx> autocorrelation(const std::vector<cplx>& d, int M, int q) {
    std::vector<cplx> corr(static_cast<size_t>(2 * q + 1), cplx(0.0, 0.0));
    for (int k = -q; k <= q; ++k) {
        cplx s(0.0, 0.0);
        const int jlo = std::max(-M, k - M);
        const int jhi = std::min(M, k + M);
        for (int j = jlo; j <= jhi; ++j)
            s += d[static_cast<size_t>(j + M)] * std::conj(d[static_cast<size_t>(j - k + M)]);
        corr[static_cast<size_t>(k + q)] = s;
    }
    return corr;
}

// Gauss-Newton passes pulling corr(d) onto the target a; repairs the
// accuracy lost to root clustering at high degree. d is modified in place.
void refine_against_autocorrelation(std::vector<cplx>& d, int M,
                                    const std::vector<cplx>& a, int q) {
    const int n = 2 * M + 1;
    const int rows = 2 * (2 * q + 1);
    auto at = [&](const std::vector<cplx>& v, int idx, int off) -> cplx {
        const int i = idx + off;
        if (i < 0 || i >= static_cast<int>(v.size())) return cplx(0.0, 0.0);
        return v[static_cast<size_t>(i)];
    };
    for (int pass = 0; pass < 3; ++pass) {
        const std::vector<cplx> corr = autocorrelation(d, M, q);
        Eigen::VectorXd r(rows);
        double rinf = 0.0;
        for (int k = -q; k <= q; ++k) {
            const cplx e = corr[static_cast<size_t>(k + q)] - a[static_cast<size_t>(k + q)];
            r[2 * (k + q)] = e.real();
            r[2 * (k + q) + 1] = e.imag();
            rinf = std::max(rinf, std::abs(e));
        }
        if (rinf < 1e-13) return;
        Eigen::MatrixXd J = Eigen::MatrixXd::Zero(rows, 2 * n);
        for (int k = -q; k <= q; ++k) {
            for (int p = -M; p <= M; ++p) {
                // d_p = u_p + i v_p; d/du corr_k = conj(d_{p-k}) + d_{p+k},
                // d/dv corr_k = i (conj(d_{p-k}) - d_{p+k})
                const cplx du = std::conj(at(d, p - k, M)) + at(d, p + k, M);
                const cplx dv = cplx(0.0, 1.0) * (std::conj(at(d, p - k, M)) - at(d, p + k, M));
                J(2 * (k + q), 2 * (p + M)) = du.real();
                J(2 * (k + q) + 1, 2 * (p + M)) = du.imag();
                J(2 * (k + q), 2 * (p + M) + 1) = dv.real();
                J(2 * (k + q) + 1, 2 * (p + M) + 1) = dv.imag();
            }
        }
        const Eigen::VectorXd step = J.colPivHouseholderQr().solve(-r);
        for (int p = 0; p < n; ++p)
            d[static_cast<size_t>(p)] += cplx(step[2 * p], step[2 * p + 1]);
    }
}

}  // namespace

LaurentPolynomial::LaurentPolynomial(int order_) : order(order_) {
    if (order_ < 0)
        throw std::invalid_argument("LaurentPolynomial: order must be >= 0");
    coefficients.assign(static_cast<size_t>(2 * order_ + 1), cplx(0.0, 0.0));
}

cplx evaluate(const LaurentPolynomial& p, cplx z) {
    // Horner over ascending powers, then shift by z^{-order}
    cplx acc(0.0, 0.0);
    for (size_t k = p.coefficients.size(); k-- > 0;) acc = acc * z + p.coefficients[k];
    return acc * std::pow(z, -p.order);
}

LaurentPolynomial build_G(const FourierSeries& g) {
    if (!g.valid()) throw std::invalid_argument("build_G: invalid series");
    const int M = g.half_order;
    LaurentPolynomial G(2 * M);
    for (int k = -2 * M; k <= 2 * M; ++k) {
        cplx s(0.0, 0.0);
        const int llo = std::max(-M, k - M);
        const int lhi = std::min(M, k + M);
        for (int l = llo; l <= lhi; ++l) s += g.c(l) * std::conj(g.c(l - k));
        G.a(k) = -s;
    }
    G.a(0) += 1.0;
    return G;
}

std::vector<cplx> poly_roots(const std::vector<cplx>& coeffs, double tol) {
    if (coeffs.empty()) throw std::invalid_argument("poly_roots: empty coefficient list");
    double cmax = 0.0;
    for (const cplx& c : coeffs) cmax = std::max(cmax, std::abs(c));
    if (cmax == 0.0) throw std::invalid_argument("poly_roots: zero polynomial");
    int deg = static_cast<int>(coeffs.size()) - 1;
    while (deg > 0 && std::abs(coeffs[static_cast<size_t>(deg)]) <= 1e-14 * cmax) --deg;
    if (deg < 1)
        throw std::invalid_argument("poly_roots: degree must be >= 1 after trimming");

    const int n = deg;
    Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(n, n);
    const cplx lead = coeffs[static_cast<size_t>(n)];
    for (int i = 0; i < n; ++i) {
        companion(i, n - 1) = -coeffs[static_cast<size_t>(i)] / lead;
        if (i + 1 < n) companion(i + 1, i) = cplx(1.0, 0.0);
    }
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
    if (solver.info() != Eigen::Success)
        throw NumericalError("poly_roots: companion eigensolver failed");

    std::vector<cplx> roots(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) roots[static_cast<size_t>(i)] = solver.eigenvalues()[i];

    auto horner = [&](cplx z, cplx& p, cplx& dp) {
        p = cplx(0.0, 0.0);
        dp = cplx(0.0, 0.0);
        for (int k = n; k >= 0; --k) {
            dp = dp * z + p;
            p = p * z + coeffs[static_cast<size_t>(k)];
        }
    };
    for (cplx& z : roots) {
        for (int it = 0; it < 8; ++it) {
            cplx p, dp;
            horner(z, p, dp);
            if (std::abs(dp) < 1e-300) break;
            const cplx step = p / dp;
            z -= step;
            if (std::abs(step) <= 1e-16 * (1.0 + std::abs(z))) break;
        }
    }

    // relative residual |p(z)| / sum_i |c_i||z|^i
    double worst = 0.0;
    cplx worst_z(0.0, 0.0);
    for (const cplx& z : roots) {
        cplx p, dp;
        horner(z, p, dp);
        double scale = 0.0, zp = 1.0;
        const double az = std::abs(z);
        for (int k = 0; k <= n; ++k) {
            scale += std::abs(coeffs[static_cast<size_t>(k)]) * zp;
            zp *= az;
        }
        const double rel = std::abs(p) / std::max(scale, 1e-300);
        if (rel > worst) {
            worst = rel;
            worst_z = z;
        }
    }
    if (worst > tol) {
        std::ostringstream msg;
        msg << "poly_roots: residual " << worst << " above tol " << tol
            << " at root (" << worst_z.real() << ", " << worst_z.imag() << ")";
        throw NumericalError(msg.str());
    }

    std::sort(roots.begin(), roots.end(), [](const cplx& x, const cplx& y) {
        const double ax = std::abs(x), ay = std::abs(y);
        if (ax != ay) return ax < ay;
        return std::arg(x) < std::arg(y);
    });
    return roots;
}

FourierSeries complementary_series(const FourierSeries& g, double margin) {
    if (!g.valid()) throw std::invalid_argument("complementary_series: invalid series");
    if (!(margin >= 0.0 && margin < 1.0))
        throw std::invalid_argument("complementary_series: margin must be in [0, 1)");
    const int M = g.half_order;

    double gmax = 0.0;
    for (int i = 0; i < 1001; ++i) {
        const double x = -kPi + 2.0 * kPi * i / 1000;
        gmax = std::max(gmax, std::abs(evaluate(g, x)));
    }
    if (gmax > 1.0 + 1e-12)
        throw std::invalid_argument("complementary_series: grid max |g| exceeds 1");

    const FourierSeries gs = margin > 0.0 ? scaled(g, cplx(1.0 / (1.0 + margin), 0.0)) : g;
    const LaurentPolynomial G = build_G(gs);
    const int q = G.order;

    // sanity on the circle: G must be real (Hermitian coefficients) and
    // nonnegative up to rounding
    for (int i = 0; i < 101; ++i) {
        const double x = -kPi + 2.0 * kPi * i / 100;
        const cplx v = evaluate(G, std::polar(1.0, x));
        if (std::abs(v.imag()) > 1e-10)
            throw NumericalError("complementary_series: G not real on the unit circle");
        if (v.real() < -1e-10)
            throw NumericalError("complementary_series: G negative on the unit circle");
    }

    double amax = 0.0;
    for (const cplx& a : G.coefficients) amax = std::max(amax, std::abs(a));
    int qe = 0;
    for (int k = q; k >= 1; --k) {
        if (std::abs(G.a(k)) > 1e-14 * amax) {
            qe = k;
            break;
        }
    }

    FourierSeries h(M);
    if (qe == 0) {
        // |g| constant on the circle (includes g == 0)
        h.c(0) = std::sqrt(std::max(G.a(0).real(), 0.0));
    } else {
        // z^qe G(z) has degree 2 qe; roots come in (r, 1/conj(r)) pairs
        std::vector<cplx> poly(static_cast<size_t>(2 * qe + 1));
        for (int k = -qe; k <= qe; ++k) poly[static_cast<size_t>(k + qe)] = G.a(k);
        const std::vector<cplx> roots = poly_roots(poly, 1e-8);

        for (const cplx& r : roots) {
            const cplx partner = cplx(1.0, 0.0) / std::conj(r);
            double best = 1e300;
            for (const cplx& r2 : roots) best = std::min(best, std::abs(r2 - partner));
            if (best > 1e-6 * std::max(1.0, std::abs(partner)))
                throw NumericalError(
                    "complementary_series: root set not closed under reflection "
                    "across the unit circle; increase margin");
        }

        // sorted by (modulus, phase): first qe are the inside half (ties on
        // the circle split deterministically by phase order)
        cplx U = G.a(qe);
        if (qe % 2 != 0) U = -U;
        for (int i = 0; i < qe; ++i) U *= roots[static_cast<size_t>(i)];
        const cplx C = std::sqrt(U);

        // expand C * prod_k (z - 1/conj(r_inside,k)), ascending
        std::vector<cplx> w{C};
        for (int i = 0; i < qe; ++i) {
            const cplx rho = cplx(1.0, 0.0) / std::conj(roots[static_cast<size_t>(i)]);
            std::vector<cplx> nw(w.size() + 1, cplx(0.0, 0.0));
            for (size_t j = 0; j < w.size(); ++j) {
                nw[j] += w[j] * (-rho);
                nw[j + 1] += w[j];
            }
            w = std::move(nw);
        }
        const int A = (qe + 1) / 2;  // recenters support inside [-M, M]
        std::vector<cplx> d(static_cast<size_t>(2 * M + 1), cplx(0.0, 0.0));
        for (int i = 0; i <= qe; ++i) d[static_cast<size_t>(i - A + M)] = w[static_cast<size_t>(i)];
        refine_against_autocorrelation(d, M, G.coefficients, q);
        h.coefficients = std::move(d);
    }

    double worst = 0.0, worst_x = 0.0;
    for (int i = 0; i < 1001; ++i) {
        const double x = -kPi + 2.0 * kPi * i / 1000;
        const double lhs = std::norm(evaluate(gs, x)) + std::norm(evaluate(h, x));
        const double err = std::abs(lhs - 1.0);
        if (err > worst) {
            worst = err;
            worst_x = x;
        }
    }
    if (worst > 1e-8) {
        std::ostringstream msg;
        msg << "complementary_series: |g|^2 + |h|^2 deviates from 1 by " << worst
            << " at x = " << worst_x << " (margin " << margin << ")";
        throw NumericalError(msg.str());
    }
    return h;
}

}  // namespace fqsp
