#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "fqsp/fourier.hpp"

using namespace fqsp;
using std::numbers::pi;

namespace {

// independent oracle: direct sum over harmonics, no Horner
cplx direct_sum(const FourierSeries& s, double x) {
    cplx acc(0.0, 0.0);
    for (int m = -s.half_order; m <= s.half_order; ++m)
        acc += s.c(m) * std::polar(1.0, m * x);
    return acc;
}

FourierSeries random_series(int half_order, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    FourierSeries s(half_order);
    for (cplx& c : s.coefficients) c = cplx(u(rng), u(rng));
    return s;
}

}  // namespace

TEST_CASE("construction and validity") {
    FourierSeries def;
    CHECK(def.half_order == 0);
    CHECK(def.coefficients.size() == 1);
    CHECK(def.valid());

    FourierSeries s(3);
    CHECK(s.coefficients.size() == 7);
    CHECK(s.valid());
    s.c(3) = cplx(1.0, -2.0);
    CHECK(s.coefficients[6] == cplx(1.0, -2.0));

    CHECK_THROWS_AS(FourierSeries(-1), std::invalid_argument);

    s.coefficients.resize(5);
    CHECK_FALSE(s.valid());
    FourierSeries nan_series(1);
    nan_series.c(0) = cplx(std::nan(""), 0.0);
    CHECK_FALSE(nan_series.valid());
}

TEST_CASE("evaluate matches the direct harmonic sum") {
    for (int M : {0, 1, 2, 5, 17}) {
        const FourierSeries s = random_series(M, 100 + static_cast<std::uint64_t>(M));
        for (int i = 0; i <= 40; ++i) {
            const double x = -pi + 2.0 * pi * i / 40;
            CHECK(std::abs(evaluate(s, x) - direct_sum(s, x)) < 1e-12 * (2 * M + 1));
        }
    }
}

TEST_CASE("evaluate on simple closed forms") {
    FourierSeries c0;
    c0.c(0) = cplx(0.7, 0.1);
    CHECK(std::abs(evaluate(c0, 1.3) - cplx(0.7, 0.1)) < 1e-15);

    // c_{+-1} = 1/2 is cos x
    FourierSeries cosx(1);
    cosx.c(1) = 0.5;
    cosx.c(-1) = 0.5;
    for (double x : {-3.0, -0.4, 0.0, 1.1, 2.9})
        CHECK(std::abs(evaluate(cosx, x) - std::cos(x)) < 1e-14);

    // c_{+1} = 1 is e^{ix}
    FourierSeries expx(1);
    expx.c(1) = 1.0;
    CHECK(std::abs(evaluate(expx, 0.8) - std::polar(1.0, 0.8)) < 1e-14);
}

TEST_CASE("quadrature recovers band-limited signals exactly") {
    const FourierSeries s = random_series(5, 7);
    auto g = [&](double x) { return evaluate(s, x); };

    SUBCASE("at the minimum allowed point count") {
        const FourierSeries r = coefficients_by_quadrature(g, 5, 4 * 5 + 4);
        for (int m = -5; m <= 5; ++m) CHECK(std::abs(r.c(m) - s.c(m)) < 1e-12);
    }
    SUBCASE("at a larger point count") {
        const FourierSeries r = coefficients_by_quadrature(g, 5, 256);
        for (int m = -5; m <= 5; ++m) CHECK(std::abs(r.c(m) - s.c(m)) < 1e-12);
    }
    SUBCASE("requesting a higher order leaves extra harmonics near zero") {
        const FourierSeries r = coefficients_by_quadrature(g, 8, 256);
        for (int m = -5; m <= 5; ++m) CHECK(std::abs(r.c(m) - s.c(m)) < 1e-12);
        for (int m : {-8, -7, -6, 6, 7, 8}) CHECK(std::abs(r.c(m)) < 1e-12);
    }
}

TEST_CASE("quadrature of a single harmonic") {
    auto g = [](double x) { return std::polar(1.0, x); };
    const FourierSeries r = coefficients_by_quadrature(g, 2, 64);
    CHECK(std::abs(r.c(1) - 1.0) < 1e-13);
    for (int m : {-2, -1, 0, 2}) CHECK(std::abs(r.c(m)) < 1e-13);
}

TEST_CASE("quadrature converges on a smooth non-band-limited target") {
    auto g = [](double x) { return cplx(std::exp(std::cos(x)), 0.0); };
    const FourierSeries r = coefficients_by_quadrature(g, 16, 1024);
    const GridReport rep = sup_error_on_grid(r, g, -pi, pi, 801);
    CHECK(rep.max_abs_error < 1e-12);
}

TEST_CASE("quadrature preconditions") {
    auto g = [](double) { return cplx(0.0, 0.0); };
    CHECK_THROWS_AS(coefficients_by_quadrature(g, -1, 64), std::invalid_argument);
    CHECK_THROWS_AS(coefficients_by_quadrature(g, 5, 4 * 5 + 3), std::invalid_argument);
    CHECK_NOTHROW(coefficients_by_quadrature(g, 5, 4 * 5 + 4));
}

TEST_CASE("sup_error_on_grid reports max and argmax") {
    FourierSeries s;
    s.c(0) = 0.5;

    SUBCASE("zero error against itself") {
        const GridReport rep =
            sup_error_on_grid(s, [](double) { return cplx(0.5, 0.0); }, -1.0, 1.0, 11);
        CHECK(rep.max_abs_error == 0.0);
        CHECK(rep.grid_points == 11);
        CHECK(rep.interval_lo == -1.0);
        CHECK(rep.interval_hi == 1.0);
    }
    SUBCASE("constant offset") {
        const GridReport rep =
            sup_error_on_grid(s, [](double) { return cplx(0.7, 0.0); }, -1.0, 1.0, 11);
        CHECK(rep.max_abs_error == doctest::Approx(0.2).epsilon(1e-12));
    }
    SUBCASE("argmax lands on the worst grid node") {
        // reference grows linearly, so the last node is worst
        const GridReport rep = sup_error_on_grid(
            s, [](double x) { return cplx(0.5 + x, 0.0); }, 0.0, 1.0, 101);
        CHECK(rep.argmax_x == doctest::Approx(1.0));
        CHECK(rep.max_abs_error == doctest::Approx(1.0));
    }
}

TEST_CASE("sup_error_on_grid preconditions") {
    FourierSeries s;
    auto ref = [](double) { return cplx(0.0, 0.0); };
    CHECK_THROWS_AS(sup_error_on_grid(s, ref, 1.0, -1.0, 11), std::invalid_argument);
    CHECK_THROWS_AS(sup_error_on_grid(s, ref, 0.0, 0.0, 11), std::invalid_argument);
    CHECK_THROWS_AS(sup_error_on_grid(s, ref, -4.0, 1.0, 11), std::invalid_argument);
    CHECK_THROWS_AS(sup_error_on_grid(s, ref, -1.0, 4.0, 11), std::invalid_argument);
    CHECK_THROWS_AS(sup_error_on_grid(s, ref, -1.0, 1.0, 1), std::invalid_argument);
    CHECK_NOTHROW(sup_error_on_grid(s, ref, -pi, pi, 2));
}

TEST_CASE("l1_norm bounds the sup norm") {
    const FourierSeries s = random_series(9, 21);
    double expect = 0.0;
    for (const cplx& c : s.coefficients) expect += std::abs(c);
    CHECK(l1_norm(s) == doctest::Approx(expect).epsilon(1e-14));
    CHECK(grid_max_abs(s, 2001) <= l1_norm(s) + 1e-12);
}

TEST_CASE("grid_max_abs of known series") {
    FourierSeries c0;
    c0.c(0) = cplx(0.0, -0.25);
    CHECK(grid_max_abs(c0, 11) == doctest::Approx(0.25));

    FourierSeries cosx(1);
    cosx.c(1) = 0.45;
    cosx.c(-1) = 0.45;
    CHECK(grid_max_abs(cosx, 1001) == doctest::Approx(0.9).epsilon(1e-9));
    CHECK_THROWS_AS(grid_max_abs(c0, 1), std::invalid_argument);
}

TEST_CASE("scaled multiplies every coefficient") {
    const FourierSeries s = random_series(4, 33);
    const cplx fac(0.3, -0.2);
    const FourierSeries t = scaled(s, fac);
    for (int m = -4; m <= 4; ++m) CHECK(std::abs(t.c(m) - fac * s.c(m)) < 1e-15);
    for (double x : {-2.0, 0.3})
        CHECK(std::abs(evaluate(t, x) - fac * evaluate(s, x)) < 1e-13);
}

TEST_CASE("conjugate-symmetric coefficients give a real-valued series") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    FourierSeries s(6);
    s.c(0) = cplx(u(rng), 0.0);
    for (int m = 1; m <= 6; ++m) {
        s.c(m) = cplx(u(rng), u(rng));
        s.c(-m) = std::conj(s.c(m));
    }
    for (int i = 0; i <= 100; ++i) {
        const double x = -pi + 2.0 * pi * i / 100;
        CHECK(std::abs(evaluate(s, x).imag()) < 1e-13);
    }
}
