#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "fqsp/approx.hpp"

using namespace fqsp;
using std::numbers::pi;

namespace {

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

double sup_vs_alpha_f(const ApproxResult& r, const TargetFunction& f, int points) {
    double err = 0.0;
    for (int i = 0; i < points; ++i) {
        const double lam = -1.0 + 2.0 * i / (points - 1);
        err = std::max(err, std::abs(evaluate(r.series, lam * r.t) - r.alpha * f(lam)));
    }
    return err;
}

}  // namespace

TEST_CASE("TargetFunction evaluation") {
    const TargetFunction e = TargetFunction::exponential(2.0);
    CHECK(e(-1.0).real() == doctest::Approx(1.0));
    CHECK(e(0.0).real() == doctest::Approx(std::exp(-2.0)));
    CHECK(e(1.0).real() == doctest::Approx(std::exp(-4.0)));
    CHECK(e(-0.5).imag() == 0.0);

    const TargetFunction p = TargetFunction::polynomial({cplx(1.0, 0.0), cplx(0.0, 0.0), cplx(-2.0, 0.5)});
    CHECK(std::abs(p(0.5) - (cplx(1.0, 0.0) + 0.25 * cplx(-2.0, 0.5))) < 1e-15);

    const TargetFunction t =
        TargetFunction::tabulated([](double lam) { return cplx(lam * lam, 0.0); });
    CHECK(t(0.3).real() == doctest::Approx(0.09));

    CHECK_THROWS_AS(TargetFunction::exponential(0.0), std::invalid_argument);
    CHECK_THROWS_AS(TargetFunction::exponential(-1.0), std::invalid_argument);
    CHECK_THROWS_AS(TargetFunction::tabulated(nullptr), std::invalid_argument);
}

TEST_CASE("taylor_order for the exponential") {
    const TargetFunction f = TargetFunction::exponential(1.0);
    // remainder bound beta^{L+1}/(L+1)! first dips under eps/4 = 0.1 at L = 3
    CHECK(taylor_order(f, 0.4, 1.0) == 3);

    // independent scan oracle at beta = 2, alpha = 0.5, eps = 1e-3
    const TargetFunction f2 = TargetFunction::exponential(2.0);
    int expect = -1;
    for (int L = 0; L < 100; ++L) {
        if (0.5 * std::pow(2.0, L + 1) / factorial(L + 1) <= 1e-3 / 4.0) {
            expect = L;
            break;
        }
    }
    CHECK(taylor_order(f2, 1e-3, 0.5) == expect);
    CHECK(expect > 3);
}

TEST_CASE("taylor_order for polynomials") {
    // pure cubic: remainder vanishes first at its own degree
    const TargetFunction cubic = TargetFunction::polynomial({0.0, 0.0, 0.0, 1.0});
    CHECK(taylor_order(cubic, 0.4, 1.0) == 3);
    CHECK(taylor_order(cubic, 1e-6, 1.0) == 3);

    // constant: zero remainder everywhere
    const TargetFunction c = TargetFunction::polynomial({cplx(0.3, 0.0)});
    CHECK(taylor_order(c, 0.5, 1.0) == 0);

    const TargetFunction tab = TargetFunction::tabulated([](double) { return cplx(); });
    CHECK_THROWS_AS(taylor_order(tab, 0.1, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(taylor_order(cubic, 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(taylor_order(cubic, 1.5, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(taylor_order(cubic, 0.1, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(taylor_order(cubic, 0.1, 2.0), std::invalid_argument);
}

TEST_CASE("subnormalization_alpha") {
    CHECK(subnormalization_alpha({cplx(1.0, 0.0)}, 0.3) == 1.0);
    // 1/(0.5 + 0.25/0.5) = 1, clamped
    CHECK(subnormalization_alpha({cplx(0.5, 0.0), cplx(0.25, 0.0)}, pi / 4.0) == 1.0);

    // truncated exponential Taylor magnitudes approach the closed form
    const double beta = 2.0, delta = pi / 4.0;
    std::vector<cplx> a;
    cplx term(std::exp(-beta), 0.0);
    for (int l = 0; l <= 60; ++l) {
        a.push_back(term);
        term *= -beta / (l + 1);
    }
    CHECK(subnormalization_alpha(a, delta) ==
          doctest::Approx(exponential_alpha(beta, delta)).epsilon(1e-12));
    CHECK(exponential_alpha(2.0, pi / 4.0) == doctest::Approx(std::exp(-2.0)));

    CHECK_THROWS_AS(subnormalization_alpha({cplx(1.0, 0.0)}, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(subnormalization_alpha({cplx(1.0, 0.0)}, pi / 2.0), std::invalid_argument);
    CHECK_THROWS_AS(exponential_alpha(0.0, 0.3), std::invalid_argument);
}

TEST_CASE("lemma37_q arithmetic") {
    CHECK(lemma37_q(pi / 8.0, 0.04, 1.0) == 74);
    CHECK(lemma37_q(0.3, 0.01, 0.002) == 0);  // 4 d1 <= eps

    // independent re-computation for the beta = 4 comparison setting
    const double delta = fig2_delta(4.0);
    const double raw = std::ceil(2.0 * pi / delta * std::log(4.0 / 1e-2));
    long v = static_cast<long>(raw);
    if (v % 2 != 0) ++v;
    CHECK(lemma37_q(delta, 1e-2, 1.0) == static_cast<int>(v));

    for (double d : {0.2, 0.7, 1.3})
        for (double e : {1e-1, 1e-3, 1e-5}) CHECK(lemma37_q(d, e, 1.0) % 2 == 0);

    SUBCASE("strictly increasing as eps shrinks tenfold") {
        std::mt19937_64 rng(2);
        std::uniform_real_distribution<double> ud(0.05, pi / 2.0 - 0.05);
        std::uniform_real_distribution<double> ue(1e-6, 0.5);
        for (int i = 0; i < 20; ++i) {
            const double d = ud(rng), e = ue(rng);
            CHECK(lemma37_q(d, e / 10.0, 1.0) > lemma37_q(d, e, 1.0));
        }
    }

    CHECK_THROWS_AS(lemma37_q(0.0, 0.1, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(lemma37_q(pi, 0.1, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(lemma37_q(0.3, 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(lemma37_q(0.3, 0.1, -1.0), std::invalid_argument);
}

TEST_CASE("taylor_to_fourier constant passes through") {
    const ApproxResult r = taylor_to_fourier({cplx(0.7, 0.0)}, pi / 4.0, 1e-2);
    CHECK(r.q == lemma37_q(pi / 4.0, 1e-2, 0.7));
    CHECK(r.series.half_order == r.q / 2);
    CHECK(std::abs(r.series.c(0) - cplx(0.7, 0.0)) < 1e-13);
    double rest = 0.0;
    for (int m = -r.series.half_order; m <= r.series.half_order; ++m)
        if (m != 0) rest += std::abs(r.series.c(m));
    CHECK(rest < 1e-13);
    CHECK(r.eps_measured < 1e-13);
    CHECK(r.t == doctest::Approx(pi / 2.0 - pi / 4.0));
}

TEST_CASE("taylor_to_fourier linear ramp") {
    const double delta = pi / 6.0;
    const ApproxResult r = taylor_to_fourier({cplx(0.0, 0.0), cplx(1.0, 0.0)}, delta, 1e-3);
    CHECK(r.eps_measured <= 1e-3);
    CHECK(l1_norm(r.series) <= 1.0 + 1e-9);
    // independent grid check against 2x/pi on the reduced interval
    const double x0 = pi / 2.0 - delta;
    const GridReport rep = sup_error_on_grid(
        r.series, [](double x) { return cplx(2.0 * x / pi, 0.0); }, -x0, x0, 2003);
    CHECK(rep.max_abs_error <= 1.2e-3);
    CHECK(std::isfinite(r.delta));
    CHECK(r.delta == doctest::Approx(delta));
}

TEST_CASE("taylor_pipeline exponential end to end") {
    const TargetFunction f = TargetFunction::exponential(1.0);
    const double delta = fig2_delta(1.0);
    const ApproxResult r = taylor_pipeline(f, 1e-2, delta);
    CHECK(r.method == ApproxMethod::taylor_fourier);
    CHECK(r.q % 2 == 0);
    CHECK(r.alpha == doctest::Approx(exponential_alpha(1.0, delta)));
    CHECK(r.eps_measured <= 1e-2);
    CHECK(sup_vs_alpha_f(r, f, 1001) <= 1e-2);
    CHECK(grid_max_abs(r.series, 1001) <= 1.0 + 1e-9);
}

TEST_CASE("taylor_pipeline polynomial target") {
    const TargetFunction f = TargetFunction::polynomial({cplx(0.5, 0.0), cplx(0.25, 0.0)});
    const ApproxResult r = taylor_pipeline(f, 1e-2, pi / 4.0);
    CHECK(r.alpha == 1.0);  // {0.5, 0.25} at delta = pi/4 clamps to 1
    CHECK(r.eps_measured <= 1e-2);
    CHECK(sup_vs_alpha_f(r, f, 801) <= 1e-2);

    const TargetFunction tab = TargetFunction::tabulated([](double) { return cplx(); });
    CHECK_THROWS_AS(taylor_pipeline(tab, 1e-2, 0.3), std::invalid_argument);
}

TEST_CASE("erf_filter values") {
    CHECK(erf_filter(0.0, 3.0, 1.1) == doctest::Approx(std::erf(3.0 * 1.1)).epsilon(1e-14));
    // plateau boundary sits at one half
    CHECK(erf_filter(1.2, 20.0, 1.2) == doctest::Approx(0.5).epsilon(1e-9));
    const double inside = erf_filter(0.5, 10.0, 1.2);
    CHECK(inside > 1.0 - 1e-8);
    CHECK(inside <= 1.0);
    // symmetric in lambda
    CHECK(erf_filter(0.7, 5.0, 1.3) == doctest::Approx(erf_filter(-0.7, 5.0, 1.3)));
    CHECK_THROWS_AS(erf_filter(0.0, 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(erf_filter(0.0, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("choose_filter_params for the exponential") {
    const FilterParams p = choose_filter_params(TargetFunction::exponential(2.0), 0.03);
    // max |f| on [-chi, chi] is e^{beta(chi-1)}; level 1 + eps/3 gives
    // chi = 1 + ln(1.01)/2
    CHECK(p.chi == doctest::Approx(1.0 + std::log(1.01) / 2.0).epsilon(1e-6));
    CHECK(p.L == doctest::Approx(std::ceil(std::sqrt(std::log(50.0)) / (p.chi - 1.0))));
}

TEST_CASE("choose_filter_params hits a prescribed chi") {
    // a lambda^2 with a chi^2 = 1.01 at chi = 1.5
    const double a = 1.01 / 2.25;
    const FilterParams p =
        choose_filter_params(TargetFunction::polynomial({0.0, 0.0, cplx(a, 0.0)}), 0.03);
    CHECK(p.chi == doctest::Approx(1.5).epsilon(1e-6));
    // ceil of 2 sqrt(ln 50) = ceil(3.9555)
    CHECK(p.L == 4.0);
}

TEST_CASE("choose_filter_params fallback for bounded targets") {
    const FilterParams p =
        choose_filter_params(TargetFunction::polynomial({cplx(0.5, 0.0)}), 0.03);
    CHECK(p.chi == doctest::Approx((1.0 + pi) / 2.0));
    CHECK(p.L == doctest::Approx(std::ceil(std::sqrt(std::log(50.0)) / (p.chi - 1.0))));
    const TargetFunction tab = TargetFunction::tabulated([](double) { return cplx(); });
    CHECK_THROWS_AS(choose_filter_params(tab, 0.03), std::invalid_argument);
}

TEST_CASE("analytic_extension_series constant fast path") {
    const TargetFunction f = TargetFunction::polynomial({cplx(0.5, 0.0)});
    const ApproxResult r = analytic_extension_series(f, 1e-3);
    CHECK(r.q == 0);
    CHECK(r.series.half_order == 0);
    CHECK(std::abs(r.series.c(0) - cplx(0.5, 0.0)) < 1e-15);
    CHECK(r.alpha == 1.0);
    CHECK(r.eps_measured < 1e-15);
}

TEST_CASE("analytic_extension_series exponential beta 2") {
    const TargetFunction f = TargetFunction::exponential(2.0);
    FilterParams used;
    const ApproxResult r = analytic_extension_series(f, 1e-3, {}, &used);
    CHECK(r.method == ApproxMethod::analytic_extension);
    CHECK(r.q % 2 == 0);
    CHECK(r.q > 0);
    CHECK(r.series.half_order == r.q / 2);
    CHECK(r.alpha > 0.0);
    CHECK(r.alpha <= 1.0);
    CHECK(r.t == 1.0);
    CHECK(r.eps_measured <= 1e-3);
    CHECK(sup_vs_alpha_f(r, f, 1001) == doctest::Approx(r.eps_measured));
    CHECK(grid_max_abs(r.series, 1001) <= 1.0 + 1e-9);
    CHECK(used.L > 0.0);
    CHECK(used.chi > 1.0);
}

TEST_CASE("analytic_extension_series q grows as eps shrinks") {
    const TargetFunction f = TargetFunction::exponential(5.0);
    SearchOptions opts;
    opts.quad_points = 16384;
    const ApproxResult coarse = analytic_extension_series(f, 1e-2, opts);
    const ApproxResult fine = analytic_extension_series(f, 1e-4, opts);
    CHECK(coarse.eps_measured <= 1e-2);
    CHECK(fine.eps_measured <= 1e-4);
    CHECK(fine.q > coarse.q);
}

TEST_CASE("analytic_extension_series argument validation and ceiling") {
    const TargetFunction f = TargetFunction::exponential(8.0);
    CHECK_THROWS_AS(analytic_extension_series(f, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(analytic_extension_series(f, 1.5), std::invalid_argument);
    SearchOptions bad;
    bad.x0 = pi;
    CHECK_THROWS_AS(analytic_extension_series(f, 1e-2, bad), std::invalid_argument);
    SearchOptions odd;
    odd.q_max = 5;
    CHECK_THROWS_AS(analytic_extension_series(f, 1e-2, odd), std::invalid_argument);
    SearchOptions tiny;
    tiny.q_max = 8;
    CHECK_THROWS_AS(analytic_extension_series(f, 1e-4, tiny), NumericalError);
}

TEST_CASE("linear_extension_series constant target") {
    const TargetFunction f = TargetFunction::polynomial({cplx(0.7, 0.0)});
    const ApproxResult r = linear_extension_series(f, pi / 2.0, 1e-3);
    CHECK(r.q == 0);
    CHECK(std::abs(evaluate(r.series, 0.0) - cplx(0.7, 0.0)) < 1e-10);
    CHECK(r.eps_measured <= 1e-3);
}

TEST_CASE("linear_extension_series on a ramp") {
    const TargetFunction f = TargetFunction::polynomial({0.0, cplx(1.0, 0.0)});
    const ApproxResult r = linear_extension_series(f, pi / 2.0, 1e-2);
    CHECK(r.method == ApproxMethod::linear_extension);
    CHECK(r.q % 2 == 0);
    CHECK(r.q > 0);
    CHECK(r.eps_measured <= 1e-2);
    CHECK(r.alpha <= 1.0);
    CHECK(sup_vs_alpha_f(r, f, 1001) <= 1e-2 + 1e-12);
}

TEST_CASE("linear_extension_series closed form matches a quadrature oracle") {
    const double beta = 2.0;
    const double x0 = pi / 2.0 - fig2_delta(beta);
    const TargetFunction f = TargetFunction::exponential(beta);
    const ApproxResult r = linear_extension_series(f, x0, 1e-2);
    CHECK(r.eps_measured <= 1e-2);

    // rebuild the same extension and integrate numerically
    const cplx f_lo = f(-1.0), f_hi = f(1.0);
    const cplx v = (f_lo + f_hi) / 2.0;
    auto extension = [&](double x) -> cplx {
        if (x > x0) return f_hi + (v - f_hi) * ((x - x0) / (pi - x0));
        if (x < -x0) return v + (f_lo - v) * ((x + pi) / (pi - x0));
        return f(x / x0);
    };
    const FourierSeries oracle =
        coefficients_by_quadrature(extension, r.series.half_order, 1 << 16);
    for (int m = -r.series.half_order; m <= r.series.half_order; ++m)
        CHECK(std::abs(oracle.c(m) - r.series.c(m)) < 1e-8);
}

TEST_CASE("linear_extension_series restrictions and ceiling") {
    const TargetFunction poly = TargetFunction::polynomial({0.0, cplx(1.0, 0.0)});
    SearchOptions big;
    big.q_max = 8192;
    CHECK_THROWS_AS(linear_extension_series(poly, pi / 2.0, 1e-2, big),
                    std::invalid_argument);

    const TargetFunction f = TargetFunction::exponential(8.0);
    SearchOptions small;
    small.q_max = 64;
    CHECK_THROWS_AS(linear_extension_series(f, pi / 2.0 - fig2_delta(8.0), 1e-4, small),
                    NumericalError);
    CHECK_THROWS_AS(linear_extension_series(f, 0.0, 1e-2), std::invalid_argument);
    CHECK_THROWS_AS(linear_extension_series(f, pi, 1e-2), std::invalid_argument);
}

TEST_CASE("fig2_delta closed form") {
    const double d4 = fig2_delta(4.0);
    const double root = std::sqrt(8.0) + 2.0;
    CHECK(d4 == doctest::Approx(2.0 * pi / (root * root)).epsilon(1e-15));
    CHECK(fig2_delta(1.0) > fig2_delta(2.0));  // shrinks with beta
    CHECK_THROWS_AS(fig2_delta(0.0), std::invalid_argument);
}

TEST_CASE("compare_methods single easy cell") {
    const std::vector<CompareRow> rows = compare_methods({1.0}, {1e-2});
    REQUIRE(rows.size() == 1);
    const CompareRow& r = rows[0];
    CHECK(r.beta == 1.0);
    CHECK(r.eps == 1e-2);
    CHECK(r.q_lemma37 == lemma37_q(fig2_delta(1.0), 1e-2, 1.0));
    CHECK(r.q_linear > 0);
    CHECK(r.q_linear % 2 == 0);
    CHECK(r.q_analytic > 0);
    CHECK(r.q_analytic % 2 == 0);
    CHECK(r.q_analytic < r.q_linear);
    CHECK(r.linear_note.empty());
    CHECK(r.analytic_note.empty());

    const std::string csv = compare_csv(rows);
    CHECK(csv.rfind("beta,eps,q_lemma37,q_linear,q_analytic\n", 0) == 0);
    const std::string want = "1,0.01," + std::to_string(r.q_lemma37) + "," +
                             std::to_string(r.q_linear) + "," +
                             std::to_string(r.q_analytic) + "\n";
    CHECK(csv.find(want) != std::string::npos);
}

TEST_CASE("compare_methods records failures as empty cells") {
    CompareOptions opts;
    opts.search.q_max = 16;
    opts.q_max_linear = 16;
    const std::vector<CompareRow> rows = compare_methods({8.0}, {1e-4}, opts);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].q_lemma37 > 0);
    CHECK(rows[0].q_linear == -1);
    CHECK(rows[0].q_analytic == -1);
    CHECK_FALSE(rows[0].linear_note.empty());
    CHECK_FALSE(rows[0].analytic_note.empty());
    const std::string csv = compare_csv(rows);
    CHECK(csv.find(",,\n") != std::string::npos);

    CHECK_THROWS_AS(compare_methods({}, {1e-2}), std::invalid_argument);
    CHECK_THROWS_AS(compare_methods({1.0}, {}), std::invalid_argument);
    CHECK_THROWS_AS(compare_methods({1.0}, {2.0}), std::invalid_argument);
}

TEST_CASE("format_double is shortest round-trip") {
    CHECK(format_double(1.0) == "1");
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(-2.5) == "-2.5");
    for (double v : {1.0 / 3.0, 1e-4, 6.02e23, -0.0, 123.456}) {
        const std::string s = format_double(v);
        CHECK(std::stod(s) == v);
    }
}
