#pragma once

#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "fqsp/fourier.hpp"

namespace fqsp {

// Scalar target f consumed on [-1, 1].
enum class TargetKind { exponential, power_series, tabulated };

struct TargetFunction {
    TargetKind kind = TargetKind::tabulated;
    double beta = 0.0;                       // exponential: f = e^{-beta(lambda+1)}
    std::vector<cplx> power_coeffs;          // power_series: sum a_l lambda^l
    std::function<cplx(double)> callback;    // tabulated
    double domain_bound = 1.0;

    static TargetFunction exponential(double beta);
    static TargetFunction polynomial(std::vector<cplx> coeffs);
    static TargetFunction tabulated(std::function<cplx(double)> f);

    cplx operator()(double lambda) const;
};

enum class ApproxMethod { taylor_fourier, analytic_extension, linear_extension };

// A Fourier approximation of alpha*f: |series(lambda*t) - alpha f(lambda)| <=
// eps_measured on [-1, 1], with |series| <= 1 + eps_target on [-pi, pi].
struct ApproxResult {
    FourierSeries series;
    double alpha = 1.0;
    int q = 0;  // truncation parameter = query complexity; always even
    double eps_target = 0.0;
    double eps_measured = 0.0;
    ApproxMethod method = ApproxMethod::taylor_fourier;
    double t = 1.0;  // oracle time; series argument is x = lambda * t
    double delta = std::numeric_limits<double>::quiet_NaN();  // NaN when unused
};

struct SearchOptions {
    int q_max = 4096;
    int grid_points = 1001;
    double x0 = 1.0;         // analytic route: encode f(lambda) at x = lambda*x0
    int quad_points = 32768;
    int chi_candidates = 24;
};

// Smallest L with max_{[-1,1]} |alpha f^{(L+1)}| / (L+1)! <= eps/4
// (Lagrange remainder control). Exponential and power_series kinds only.
int taylor_order(const TargetFunction& f, double eps, double alpha);

// alpha = min(1, 1 / sum_l |a_l| / (1 - 2 delta/pi)^l).
double subnormalization_alpha(const std::vector<cplx>& a, double delta);

// Closed form of the above for the exponential kind at L -> infinity:
// e^{-beta (1/(1 - 2 delta/pi) - 1)}.
double exponential_alpha(double beta, double delta);

// Smallest even integer >= max(ceil((2 pi/delta) ln(4 d_l1 / eps)), 0).
int lemma37_q(double delta, double eps, double d_l1);

// Fourier series of the polynomial sum_l d_l (2x/pi)^l, accurate to eps on
// [-pi/2 + delta, pi/2 - delta] with l1_norm <= ||d||_1. q from lemma37_q.
ApproxResult taylor_to_fourier(const std::vector<cplx>& d, double delta, double eps);

// Full route: Taylor-expand f, subnormalize so the polynomial stays bounded,
// convert. Resulting series approximates alpha*f(lambda) at x = lambda*(pi/2-delta).
ApproxResult taylor_pipeline(const TargetFunction& f, double eps, double delta);

// Smoothed plateau b(lambda, L, chi) = (erf(L(lambda+chi)) - erf(L(lambda-chi)))/2.
double erf_filter(double lambda, double L, double chi);

struct FilterParams {
    double L = 0.0;
    double chi = 0.0;
};

// chi solving max_{[-chi, chi]} |f| = 1 + eps/3 (bisection; fallback to the
// midpoint of (1, pi) when |f| never reaches the level on [-pi, pi]);
// L = ceil(sqrt(ln(3/(2 eps))) / (chi - 1)).
FilterParams choose_filter_params(const TargetFunction& f, double eps);

// Erf-filtered periodic extension: minimizes q over a deterministic grid of
// filter widths, recording the filter's excess max as the subnormalization
// alpha. filter_used (optional) receives the winning (L, chi).
ApproxResult analytic_extension_series(const TargetFunction& f, double eps,
                                       const SearchOptions& opts = {},
                                       FilterParams* filter_used = nullptr);

// Continuous periodic extension by equal-slope linear ramps from
// (+-x0, f(+-1)) to (+-pi, v), v = (f(-1)+f(1))/2; slow-converging baseline.
ApproxResult linear_extension_series(const TargetFunction& f, double x0, double eps,
                                     const SearchOptions& opts = {});

// delta(beta) = 2 pi / (sqrt(beta+4) + sqrt(beta))^2 used by the comparison.
double fig2_delta(double beta);

struct CompareRow {
    double beta = 0.0;
    double eps = 0.0;
    int q_lemma37 = -1;  // -1 marks a failed cell (rendered empty in CSV)
    int q_linear = -1;
    int q_analytic = -1;
    std::string linear_note, analytic_note;
};

struct CompareOptions {
    SearchOptions search;
    int q_max_linear = -1;  // separate ceiling for the slow baseline; -1: search.q_max
};

std::vector<CompareRow> compare_methods(const std::vector<double>& betas,
                                        const std::vector<double>& eps_list,
                                        const CompareOptions& opts = {});

std::string compare_csv(const std::vector<CompareRow>& rows);

// Shortest round-trip decimal formatting (stable CSV/JSON goldens).
std::string format_double(double v);

}  // namespace fqsp
