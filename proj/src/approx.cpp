#include "fqsp/approx.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>

namespace fqsp {

namespace {

constexpr double kPi = std::numbers::pi;

void check_eps(double eps, const char* who) {
    if (!(eps > 0.0 && eps < 1.0))
        throw std::invalid_argument(std::string(who) + ": eps must be in (0, 1)");
}

// coefficient convolution on symmetric index ranges: a on [-na, na] times
// b on [-nb, nb], truncated to [-nt, nt]
std::vector<cplx> conv_trunc(const std::vector<cplx>& a, int na,
                             const std::vector<cplx>& b, int nb, int nt) {
    std::vector<cplx> out(static_cast<size_t>(2 * nt + 1), cplx(0.0, 0.0));
    for (int i = -na; i <= na; ++i) {
        const cplx ai = a[static_cast<size_t>(i + na)];
        if (ai == cplx(0.0, 0.0)) continue;
        const int jlo = std::max(-nb, -nt - i);
        const int jhi = std::min(nb, nt - i);
        for (int j = jlo; j <= jhi; ++j)
            out[static_cast<size_t>(i + j + nt)] += ai * b[static_cast<size_t>(j + nb)];
    }
    return out;
}

// Fourier coefficients of the triangle wave (2/pi) arcsin(sin x), which equals
// 2x/pi on [-pi/2, pi/2]: arcsin series applied to sin x, odd powers expanded
// by convolution, truncated to |m| <= nt. K = number of arcsin terms - 1.
std::vector<cplx> triangle_series(int K, int nt) {
    std::vector<cplx> sin1(static_cast<size_t>(2 * nt + 1), cplx(0.0, 0.0));
    if (nt >= 1) {
        sin1[static_cast<size_t>(nt + 1)] = cplx(0.0, -0.5);
        sin1[static_cast<size_t>(nt - 1)] = cplx(0.0, 0.5);
    }
    const std::vector<cplx> sin2 = conv_trunc(sin1, nt, sin1, nt, nt);
    std::vector<cplx> power = sin1;  // sin^{2k+1}, truncated
    std::vector<cplx> total(static_cast<size_t>(2 * nt + 1), cplx(0.0, 0.0));
    double Ck = 2.0 / kPi;  // (2/pi) binom(2k,k) / (4^k (2k+1))
    for (int k = 0; k <= K; ++k) {
        for (int m = -nt; m <= nt; ++m)
            total[static_cast<size_t>(m + nt)] += Ck * power[static_cast<size_t>(m + nt)];
        Ck *= (2.0 * k + 1.0) / (2.0 * k + 2.0) * (2.0 * k + 1.0) / (2.0 * k + 3.0);
        if (k < K) power = conv_trunc(power, nt, sin2, nt, nt);
    }
    return total;
}

// max_i |sum_{|m| <= q/2} c_m e^{i m xs_i} - target_i| streamed over rings of
// increasing |m|; returns the first even q <= 2*M passing tol, or -1 (best
// error in *best). Implements "smallest even q with grid error <= tol".
int first_passing_even_q(const std::vector<cplx>& coeffs, int M,
                         const std::vector<double>& xs,
                         const std::vector<cplx>& target, double tol,
                         int q_limit, double* best) {
    const size_t G = xs.size();
    std::vector<cplx> acc(G), wplus(G), phase(G, cplx(1.0, 0.0));
    for (size_t i = 0; i < G; ++i) {
        acc[i] = coeffs[static_cast<size_t>(M)];
        wplus[i] = std::polar(1.0, xs[i]);
    }
    double best_err = 1e300;
    const int kmax = std::min(M, q_limit / 2);
    for (int k = 0; k <= kmax; ++k) {
        if (k > 0) {
            const cplx cp = coeffs[static_cast<size_t>(M + k)];
            const cplx cm = coeffs[static_cast<size_t>(M - k)];
            for (size_t i = 0; i < G; ++i) {
                phase[i] *= wplus[i];
                acc[i] += cp * phase[i] + cm * std::conj(phase[i]);
            }
        }
        double err = 0.0;
        for (size_t i = 0; i < G; ++i) err = std::max(err, std::abs(acc[i] - target[i]));
        best_err = std::min(best_err, err);
        if (err <= tol) {
            if (best) *best = err;
            return 2 * k;
        }
    }
    if (best) *best = best_err;
    return -1;
}

// trapezoid coefficients of cached periodic samples g_j at x_j = -pi + 2 pi j/N
std::vector<cplx> quadrature_coeffs(const std::vector<cplx>& samples, int M) {
    const int N = static_cast<int>(samples.size());
    std::vector<cplx> out(static_cast<size_t>(2 * M + 1), cplx(0.0, 0.0));
    for (int j = 0; j < N; ++j) {
        const double xj = -kPi + 2.0 * kPi * j / N;
        const cplx gj = samples[static_cast<size_t>(j)] / static_cast<double>(N);
        const cplx w = std::polar(1.0, -xj);
        cplx p = std::polar(1.0, static_cast<double>(M) * xj);
        for (int i = 0; i < 2 * M + 1; ++i) {
            out[static_cast<size_t>(i)] += gj * p;
            p *= w;
        }
    }
    return out;
}

FourierSeries series_from_coeffs(const std::vector<cplx>& coeffs, int src_half,
                                 int half_order) {
    FourierSeries s(half_order);
    for (int m = -half_order; m <= half_order; ++m)
        s.c(m) = coeffs[static_cast<size_t>(m + src_half)];
    return s;
}

// grid max of |series(lambda * t) - alpha f(lambda)| over [-1, 1]
double measure_vs_target(const FourierSeries& s, double t,
                         const TargetFunction& f, double alpha, int points) {
    double err = 0.0;
    for (int i = 0; i < points; ++i) {
        const double lam = -1.0 + 2.0 * i / (points - 1);
        err = std::max(err, std::abs(evaluate(s, lam * t) - alpha * f(lam)));
    }
    return err;
}

// rescales so the grid max over [-pi, pi] is <= 1, folding the factor into alpha
void enforce_normalization(ApproxResult& r, int points) {
    const double mx = grid_max_abs(r.series, points);
    if (mx > 1.0) {
        const double u = 1.0 / (mx + 1e-12);
        r.series = scaled(r.series, cplx(u, 0.0));
        r.alpha *= u;
    }
}

}  // namespace

TargetFunction TargetFunction::exponential(double beta) {
    if (!(beta > 0.0))
        throw std::invalid_argument("TargetFunction::exponential: beta must be > 0");
    TargetFunction f;
    f.kind = TargetKind::exponential;
    f.beta = beta;
    return f;
}

TargetFunction TargetFunction::polynomial(std::vector<cplx> coeffs) {
    if (coeffs.empty()) coeffs.push_back(cplx(0.0, 0.0));
    for (const cplx& c : coeffs)
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
            throw std::invalid_argument("TargetFunction::polynomial: coefficients must be finite");
    TargetFunction f;
    f.kind = TargetKind::power_series;
    f.power_coeffs = std::move(coeffs);
    return f;
}

TargetFunction TargetFunction::tabulated(std::function<cplx(double)> fn) {
    if (!fn) throw std::invalid_argument("TargetFunction::tabulated: empty callback");
    TargetFunction f;
    f.kind = TargetKind::tabulated;
    f.callback = std::move(fn);
    return f;
}

cplx TargetFunction::operator()(double lambda) const {
    switch (kind) {
        case TargetKind::exponential:
            return cplx(std::exp(-beta * (lambda + 1.0)), 0.0);
        case TargetKind::power_series: {
            cplx acc(0.0, 0.0);
            for (size_t i = power_coeffs.size(); i-- > 0;)
                acc = acc * lambda + power_coeffs[i];
            return acc;
        }
        case TargetKind::tabulated:
            return callback(lambda);
    }
    throw std::invalid_argument("TargetFunction: unknown kind");
}

int taylor_order(const TargetFunction& f, double eps, double alpha) {
    check_eps(eps, "taylor_order");
    if (!(alpha > 0.0 && alpha <= 1.0))
        throw std::invalid_argument("taylor_order: alpha must be in (0, 1]");
    if (f.kind == TargetKind::exponential) {
        // max_{[-1,1]} |f^{(L+1)}| = beta^{L+1} (attained at lambda = -1)
        double bound = alpha;
        for (int L = 0; L < 100000; ++L) {
            bound *= f.beta / (L + 1);
            if (bound <= eps / 4.0) return L;
        }
        throw NumericalError("taylor_order: bound did not fall below eps/4");
    }
    if (f.kind == TargetKind::power_series) {
        int D = 0;
        for (size_t i = 0; i < f.power_coeffs.size(); ++i)
            if (std::abs(f.power_coeffs[i]) > 0.0) D = static_cast<int>(i);
        for (int L = 0; L < D; ++L) {
            // (L+1)-th derivative coefficients: a_{j+L+1} (j+L+1)!/j!
            double dmax = 0.0;
            for (int i = 0; i <= 200; ++i) {
                const double lam = -1.0 + 2.0 * i / 200.0;
                cplx acc(0.0, 0.0);
                double pw = 1.0;
                for (int j = 0; j + L + 1 <= D; ++j) {
                    double ff = 1.0;
                    for (int u = j + 1; u <= j + L + 1; ++u) ff *= u;
                    acc += f.power_coeffs[static_cast<size_t>(j + L + 1)] * ff * pw;
                    pw *= lam;
                }
                dmax = std::max(dmax, std::abs(acc));
            }
            double fact = 1.0;
            for (int u = 2; u <= L + 1; ++u) fact *= u;
            if (alpha * dmax / fact <= eps / 4.0) return L;
        }
        return D;  // remainder identically zero
    }
    throw std::invalid_argument("taylor_order: derivative bounds unavailable for tabulated kind");
}

double subnormalization_alpha(const std::vector<cplx>& a, double delta) {
    if (!(delta > 0.0 && delta < kPi / 2.0))
        throw std::invalid_argument("subnormalization_alpha: delta must be in (0, pi/2)");
    const double r = 1.0 - 2.0 * delta / kPi;
    double sum = 0.0, rp = 1.0;
    for (const cplx& al : a) {
        sum += std::abs(al) / rp;
        rp *= r;
    }
    if (!std::isfinite(sum))
        throw NumericalError(
            "subnormalization_alpha: sum diverges; use a smaller delta or the "
            "analytic_extension method");
    if (sum <= 1.0) return 1.0;
    return 1.0 / sum;
}

double exponential_alpha(double beta, double delta) {
    if (!(beta > 0.0)) throw std::invalid_argument("exponential_alpha: beta must be > 0");
    if (!(delta > 0.0 && delta < kPi / 2.0))
        throw std::invalid_argument("exponential_alpha: delta must be in (0, pi/2)");
    const double r = 1.0 - 2.0 * delta / kPi;
    return std::exp(-beta * (1.0 / r - 1.0));
}

int lemma37_q(double delta, double eps, double d_l1) {
    if (!(delta > 0.0 && delta < kPi / 2.0))
        throw std::invalid_argument("lemma37_q: delta must be in (0, pi/2)");
    check_eps(eps, "lemma37_q");
    if (d_l1 < 0.0) throw std::invalid_argument("lemma37_q: d_l1 must be >= 0");
    if (4.0 * d_l1 <= eps) return 0;
    const double raw = std::ceil(2.0 * kPi / delta * std::log(4.0 * d_l1 / eps));
    long v = std::max(static_cast<long>(raw), 0L);
    if (v % 2 != 0) ++v;
    return static_cast<int>(v);
}

ApproxResult taylor_to_fourier(const std::vector<cplx>& d, double delta, double eps) {
    if (!(delta > 0.0 && delta < kPi / 2.0))
        throw std::invalid_argument("taylor_to_fourier: delta must be in (0, pi/2)");
    check_eps(eps, "taylor_to_fourier");
    if (d.empty()) throw std::invalid_argument("taylor_to_fourier: empty coefficient list");
    for (const cplx& c : d)
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
            throw std::invalid_argument("taylor_to_fourier: coefficients must be finite");

    double d1 = 0.0;
    for (const cplx& c : d) d1 += std::abs(c);
    const int q = lemma37_q(delta, eps, d1);
    const int M = q / 2;
    const double x0 = kPi / 2.0 - delta;
    const int L = static_cast<int>(d.size()) - 1;

    auto reference = [&](double x) {
        const double u = 2.0 * x / kPi;
        cplx acc(0.0, 0.0);
        for (size_t i = d.size(); i-- > 0;) acc = acc * u + d[i];
        return acc;
    };

    // arcsin-expansion depth: the sin^{2k+1} tail on the reduced interval
    // decays like cos^{2k} delta
    const double cd = std::cos(delta);
    int K0 = 4;
    if (cd < 1.0) {
        const double want =
            std::log(16.0 * std::max(d1, 1e-6) / eps) / (2.0 * std::log(1.0 / cd));
        K0 = std::clamp(static_cast<int>(std::ceil(want)), 4, 400);
    }

    const int points = std::max(10 * q, 101);
    double last_err = 0.0;
    int last_K = K0;
    for (int attempt = 0; attempt < 4; ++attempt) {
        const int K = K0 << attempt;
        last_K = K;
        const int nt = M + 2;
        const std::vector<cplx> tri = triangle_series(K, nt);
        // Horner over the outer polynomial in the convolution algebra
        std::vector<cplx> acc(static_cast<size_t>(2 * M + 1), cplx(0.0, 0.0));
        acc[static_cast<size_t>(M)] = d[static_cast<size_t>(L)];
        for (int l = L - 1; l >= 0; --l) {
            acc = conv_trunc(acc, M, tri, nt, M);
            acc[static_cast<size_t>(M)] += d[static_cast<size_t>(l)];
        }

        ApproxResult res;
        res.series = series_from_coeffs(acc, M, M);
        res.method = ApproxMethod::taylor_fourier;
        res.q = q;
        res.t = x0;
        res.delta = delta;
        res.eps_target = eps;

        const GridReport rep = sup_error_on_grid(res.series, reference, -x0, x0, points);
        last_err = rep.max_abs_error;
        if (rep.max_abs_error <= eps) {
            res.eps_measured = rep.max_abs_error;
            return res;
        }
    }
    std::ostringstream msg;
    msg << "taylor_to_fourier: grid error " << last_err << " above eps " << eps
        << " after arcsin depth " << last_K << " (q = " << q << ")";
    throw NumericalError(msg.str());
}

ApproxResult taylor_pipeline(const TargetFunction& f, double eps, double delta) {
    check_eps(eps, "taylor_pipeline");
    if (!(delta > 0.0 && delta < kPi / 2.0))
        throw std::invalid_argument("taylor_pipeline: delta must be in (0, pi/2)");
    if (f.kind == TargetKind::tabulated)
        throw std::invalid_argument("taylor_pipeline: requires exponential or power_series kind");

    const double eps_half = eps / 2.0;
    const double r = 1.0 - 2.0 * delta / kPi;

    double alpha;
    std::vector<cplx> a;
    if (f.kind == TargetKind::exponential) {
        alpha = exponential_alpha(f.beta, delta);
        const int L = taylor_order(f, eps_half, alpha);
        a.resize(static_cast<size_t>(L + 1));
        cplx term(std::exp(-f.beta), 0.0);  // a_l = e^{-beta} (-beta)^l / l!
        for (int l = 0; l <= L; ++l) {
            a[static_cast<size_t>(l)] = term;
            term *= -f.beta / (l + 1);
        }
    } else {
        alpha = subnormalization_alpha(f.power_coeffs, delta);
        const int L = taylor_order(f, eps_half, alpha);
        a.assign(f.power_coeffs.begin(),
                 f.power_coeffs.begin() + std::min<size_t>(f.power_coeffs.size(),
                                                           static_cast<size_t>(L + 1)));
    }

    std::vector<cplx> d(a.size());
    double rp = 1.0;
    for (size_t l = 0; l < a.size(); ++l) {
        d[l] = alpha * a[l] / rp;
        rp *= r;
    }

    ApproxResult res = taylor_to_fourier(d, delta, eps_half);
    res.alpha = alpha;
    res.eps_target = eps;
    res.eps_measured = measure_vs_target(res.series, res.t, f, alpha, 1001);
    if (res.eps_measured > eps) {
        std::ostringstream msg;
        msg << "taylor_pipeline: measured error " << res.eps_measured
            << " above eps " << eps;
        throw NumericalError(msg.str());
    }
    enforce_normalization(res, 1001);
    return res;
}

double erf_filter(double lambda, double L, double chi) {
    if (!(L > 0.0)) throw std::invalid_argument("erf_filter: L must be > 0");
    if (!(chi > 0.0)) throw std::invalid_argument("erf_filter: chi must be > 0");
    return (std::erf(L * (lambda + chi)) - std::erf(L * (lambda - chi))) / 2.0;
}

FilterParams choose_filter_params(const TargetFunction& f, double eps) {
    check_eps(eps, "choose_filter_params");
    if (f.kind == TargetKind::tabulated)
        throw std::invalid_argument(
            "choose_filter_params: requires an analytic kind (exponential or power_series)");

    auto grid_max = [&](double c) {
        double mx = 0.0;
        for (int i = 0; i < 801; ++i)
            mx = std::max(mx, std::abs(f(-c + 2.0 * c * i / 800.0)));
        return mx;
    };
    const double level = 1.0 + eps / 3.0;

    double chi;
    if (grid_max(kPi) <= level) {
        chi = (1.0 + kPi) / 2.0;  // |f| never reaches the level on [-pi, pi]
    } else {
        double lo = 1.0 + 1e-9, hi = kPi;
        if (grid_max(lo) >= level)
            throw NumericalError(
                "choose_filter_params: |f| already exceeds 1 + eps/3 at the inner "
                "bracket; cannot solve for chi");
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (lo + hi);
            (grid_max(mid) < level ? lo : hi) = mid;
        }
        chi = 0.5 * (lo + hi);
    }
    FilterParams p;
    p.chi = chi;
    p.L = std::ceil(std::sqrt(std::log(3.0 / (2.0 * eps))) / (chi - 1.0));
    return p;
}

ApproxResult analytic_extension_series(const TargetFunction& f, double eps,
                                       const SearchOptions& opts,
                                       FilterParams* filter_used) {
    check_eps(eps, "analytic_extension_series");
    const double x0 = opts.x0;
    if (!(x0 > 0.0 && x0 < kPi))
        throw std::invalid_argument("analytic_extension_series: x0 must be in (0, pi)");
    if (opts.q_max < 0 || opts.q_max % 2 != 0)
        throw std::invalid_argument("analytic_extension_series: q_max must be even and >= 0");
    if (opts.grid_points < 2)
        throw std::invalid_argument("analytic_extension_series: grid_points must be >= 2");

    // degenerate fast path: constant target passes through exactly
    if (f.kind == TargetKind::power_series) {
        bool constant = true;
        for (size_t i = 1; i < f.power_coeffs.size(); ++i)
            if (std::abs(f.power_coeffs[i]) > 0.0) constant = false;
        if (constant) {
            ApproxResult res;
            res.series.c(0) = f.power_coeffs[0];
            res.method = ApproxMethod::analytic_extension;
            res.t = x0;
            res.eps_target = eps;
            res.alpha = 1.0;
            enforce_normalization(res, 1001);
            res.eps_measured = measure_vs_target(res.series, x0, f, res.alpha, opts.grid_points);
            if (filter_used) *filter_used = FilterParams{};
            return res;
        }
    }

    const double s_min = 0.02;
    const double s_max = kPi / x0 - 1.0 - 0.02;  // keeps the filter cut inside the period
    if (!(s_max > s_min))
        throw std::invalid_argument("analytic_extension_series: x0 leaves no room for the filter");
    const double A = std::sqrt(std::log(3.0 / (2.0 * eps)));

    const int N = opts.quad_points;
    std::vector<cplx> fsamp(static_cast<size_t>(N));
    for (int j = 0; j < N; ++j) {
        const double xj = -kPi + 2.0 * kPi * j / N;
        fsamp[static_cast<size_t>(j)] = f(xj / x0);
    }
    const int G = opts.grid_points;
    std::vector<double> xs(static_cast<size_t>(G));
    std::vector<cplx> ftarget(static_cast<size_t>(G));
    for (int i = 0; i < G; ++i) {
        const double lam = -1.0 + 2.0 * i / (G - 1);
        xs[static_cast<size_t>(i)] = lam * x0;
        ftarget[static_cast<size_t>(i)] = f(lam);
    }

    struct Candidate {
        int q = -1;
        double alpha = 0.0;
        FilterParams filter;
        std::vector<cplx> coeffs;
        int M = 0;
    };
    Candidate best;
    double best_fail_err = 1e300;
    int ncand = std::max(2, opts.chi_candidates);

    for (int ci = 0; ci < ncand; ++ci) {
        const double s = s_min * std::pow(s_max / s_min, static_cast<double>(ci) / (ncand - 1));
        const double chi = 1.0 + s;
        const double L = std::ceil(A / s);

        std::vector<cplx> gsamp(static_cast<size_t>(N));
        double gmax = 0.0;
        for (int j = 0; j < N; ++j) {
            const double xj = -kPi + 2.0 * kPi * j / N;
            gsamp[static_cast<size_t>(j)] = fsamp[static_cast<size_t>(j)] * erf_filter(xj / x0, L, chi);
            gmax = std::max(gmax, std::abs(gsamp[static_cast<size_t>(j)]));
        }
        const double alpha = std::min(1.0, (1.0 + eps / 3.0) / gmax);

        // stage the coefficient count; most winners sit well under q = 512
        int M = std::min(256, opts.q_max / 2);
        if (4 * M + 4 > N)
            M = std::max(0, (N - 4) / 4);
        std::vector<cplx> coeffs = quadrature_coeffs(gsamp, M);
        double err = 0.0;
        int q = first_passing_even_q(coeffs, M, xs, ftarget, eps, 2 * M, &err);
        if (q < 0 && 2 * M < opts.q_max) {
            M = opts.q_max / 2;
            const int need = 4 * M + 4;
            if (need > N) {
                // refresh the sample cache at the denser quadrature grid
                std::vector<cplx> dense(static_cast<size_t>(need));
                for (int j = 0; j < need; ++j) {
                    const double xj = -kPi + 2.0 * kPi * j / need;
                    dense[static_cast<size_t>(j)] = f(xj / x0) * erf_filter(xj / x0, L, chi);
                }
                coeffs = quadrature_coeffs(dense, M);
            } else {
                coeffs = quadrature_coeffs(gsamp, M);
            }
            q = first_passing_even_q(coeffs, M, xs, ftarget, eps, opts.q_max, &err);
        }
        if (q < 0) {
            best_fail_err = std::min(best_fail_err, err);
            continue;
        }
        if (best.q < 0 || q < best.q || (q == best.q && alpha > best.alpha)) {
            best.q = q;
            best.alpha = alpha;
            best.filter = FilterParams{L, chi};
            best.coeffs = std::move(coeffs);
            best.M = M;
        }
    }

    if (best.q < 0) {
        std::ostringstream msg;
        msg << "analytic_extension_series: no filter width reached eps " << eps
            << " within q_max " << opts.q_max << " (best grid error " << best_fail_err << ")";
        throw NumericalError(msg.str());
    }

    ApproxResult res;
    res.series = series_from_coeffs(best.coeffs, best.M, best.q / 2);
    res.series = scaled(res.series, cplx(best.alpha, 0.0));
    res.alpha = best.alpha;
    res.q = best.q;
    res.method = ApproxMethod::analytic_extension;
    res.t = x0;
    res.eps_target = eps;
    enforce_normalization(res, 1001);
    res.eps_measured = measure_vs_target(res.series, x0, f, res.alpha, G);
    if (filter_used) *filter_used = best.filter;
    return res;
}

namespace {

// definite integral of (A + B x) e^{-i m x} over [x1, x2]
cplx line_integral(double A, double B, double x1, double x2, int m) {
    if (m == 0)
        return cplx(A * (x2 - x1) + 0.5 * B * (x2 * x2 - x1 * x1), 0.0);
    auto F = [&](double x) {
        const cplx im_inv(0.0, 1.0 / m);
        return std::polar(1.0, -m * x) * ((A + B * x) * im_inv + B / (double(m) * m));
    };
    return F(x2) - F(x1);
}

// definite integral of e^{c x} e^{-i m x} over [x1, x2]
cplx exp_integral(double c, double x1, double x2, int m) {
    const cplx w(c, -static_cast<double>(m));
    auto F = [&](double x) { return std::exp(w * x) / w; };
    return F(x2) - F(x1);
}

}  // namespace

ApproxResult linear_extension_series(const TargetFunction& f, double x0, double eps,
                                     const SearchOptions& opts) {
    check_eps(eps, "linear_extension_series");
    if (!(x0 > 0.0 && x0 < kPi))
        throw std::invalid_argument("linear_extension_series: x0 must be in (0, pi)");
    if (opts.q_max < 0 || opts.q_max % 2 != 0)
        throw std::invalid_argument("linear_extension_series: q_max must be even and >= 0");

    const cplx f_lo = f(-1.0), f_hi = f(1.0);
    const cplx v = (f_lo + f_hi) / 2.0;  // shared endpoint value -> equal slopes
    const int M = opts.q_max / 2;

    std::vector<cplx> coeffs;
    if (f.kind == TargetKind::exponential) {
        // piecewise-exact integrals; the quadrature path cannot reach the
        // q ~ 10^5 this baseline needs at small eps
        coeffs.assign(static_cast<size_t>(2 * M + 1), cplx(0.0, 0.0));
        const double c = -f.beta / x0;  // f(x/x0) = e^{-beta} e^{c x}
        const double slope_hi = ((v - f_hi) / (kPi - x0)).real();
        const double A_hi = f_hi.real() - slope_hi * x0;
        const double slope_lo = ((f_lo - v) / (kPi - x0)).real();
        const double A_lo = v.real() + slope_lo * kPi;
        for (int m = -M; m <= M; ++m) {
            const cplx total = line_integral(A_lo, slope_lo, -kPi, -x0, m) +
                               std::exp(-f.beta) * exp_integral(c, -x0, x0, m) +
                               line_integral(A_hi, slope_hi, x0, kPi, m);
            coeffs[static_cast<size_t>(m + M)] = total / (2.0 * kPi);
        }
    } else {
        if (opts.q_max > 4096)
            throw std::invalid_argument(
                "linear_extension_series: q_max above 4096 requires the exponential "
                "kind (closed-form coefficients)");
        auto extension = [&](double x) -> cplx {
            if (x > x0) return f_hi + (v - f_hi) * ((x - x0) / (kPi - x0));
            if (x < -x0) return v + (f_lo - v) * ((x + kPi) / (kPi - x0));
            return f(x / x0);
        };
        const int N = std::max(opts.quad_points, 4 * M + 4);
        std::vector<cplx> samples(static_cast<size_t>(N));
        for (int j = 0; j < N; ++j)
            samples[static_cast<size_t>(j)] = extension(-kPi + 2.0 * kPi * j / N);
        coeffs = quadrature_coeffs(samples, M);
    }

    const int G = opts.grid_points;
    std::vector<double> xs(static_cast<size_t>(G));
    std::vector<cplx> ftarget(static_cast<size_t>(G));
    for (int i = 0; i < G; ++i) {
        const double lam = -1.0 + 2.0 * i / (G - 1);
        xs[static_cast<size_t>(i)] = lam * x0;
        ftarget[static_cast<size_t>(i)] = f(lam);
    }
    double err = 0.0;
    const int q = first_passing_even_q(coeffs, M, xs, ftarget, eps, opts.q_max, &err);
    if (q < 0) {
        std::ostringstream msg;
        msg << "linear_extension_series: grid error still " << err << " at q_max "
            << opts.q_max << " (eps " << eps << ")";
        throw NumericalError(msg.str());
    }

    ApproxResult res;
    res.series = series_from_coeffs(coeffs, M, q / 2);
    res.alpha = 1.0;
    res.q = q;
    res.method = ApproxMethod::linear_extension;
    res.t = x0;
    res.eps_target = eps;
    enforce_normalization(res, 1001);
    res.eps_measured = measure_vs_target(res.series, x0, f, res.alpha, G);
    return res;
}

double fig2_delta(double beta) {
    if (!(beta > 0.0)) throw std::invalid_argument("fig2_delta: beta must be > 0");
    const double root = std::sqrt(beta + 4.0) + std::sqrt(beta);
    return 2.0 * kPi / (root * root);
}

std::vector<CompareRow> compare_methods(const std::vector<double>& betas,
                                        const std::vector<double>& eps_list,
                                        const CompareOptions& opts) {
    if (betas.empty() || eps_list.empty())
        throw std::invalid_argument("compare_methods: need at least one beta and one eps");
    SearchOptions linear_opts = opts.search;
    if (opts.q_max_linear > 0) linear_opts.q_max = opts.q_max_linear;

    std::vector<CompareRow> rows;
    for (double eps : eps_list) {
        check_eps(eps, "compare_methods");
        for (double beta : betas) {
            CompareRow row;
            row.beta = beta;
            row.eps = eps;
            const double delta = fig2_delta(beta);
            // the route's polynomial has unit l1 norm by construction
            row.q_lemma37 = lemma37_q(delta, eps, 1.0);
            const TargetFunction f = TargetFunction::exponential(beta);
            try {
                row.q_linear = linear_extension_series(f, kPi / 2.0 - delta, eps, linear_opts).q;
            } catch (const NumericalError& e) {
                row.linear_note = e.what();
            }
            try {
                row.q_analytic = analytic_extension_series(f, eps, opts.search).q;
            } catch (const NumericalError& e) {
                row.analytic_note = e.what();
            }
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string compare_csv(const std::vector<CompareRow>& rows) {
    std::string out = "beta,eps,q_lemma37,q_linear,q_analytic\n";
    for (const CompareRow& r : rows) {
        out += format_double(r.beta);
        out += ',';
        out += format_double(r.eps);
        out += ',';
        if (r.q_lemma37 >= 0) out += std::to_string(r.q_lemma37);
        out += ',';
        if (r.q_linear >= 0) out += std::to_string(r.q_linear);
        out += ',';
        if (r.q_analytic >= 0) out += std::to_string(r.q_analytic);
        out += '\n';
    }
    return out;
}

}  // namespace fqsp
