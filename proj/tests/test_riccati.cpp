#include <doctest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <sstream>

#include "affcurve/error.hpp"
#include "affcurve/long_end.hpp"
#include "affcurve/oracle.hpp"
#include "affcurve/riccati.hpp"

using namespace affcurve;
using doctest::Approx;

namespace {

// A(x) = integral of F(B) over [0, x], evaluated with Boost's Gauss-Kronrod
// and the closed-form B.
double reference_a(const AffineModel& m, double x) {
    auto integrand = [&](double s) { return m.F(closed_form_b(m, s)); };
    return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(integrand, 0.0, x, 15,
                                                                         1e-14);
}

void check_against_closed_form(const AffineModel& m) {
    const ABCurve ab = solve_ab(m, 30.0);
    REQUIRE(ab.size() > 2);
    CHECK(ab.xs.front() == 0.0);
    CHECK(ab.xs.back() == 30.0);
    double max_b = 0.0;
    for (std::size_t i = 0; i < ab.size(); ++i) {
        max_b = std::max(max_b, std::abs(ab.Bs[i] - closed_form_b(m, ab.xs[i])));
    }
    CHECK(max_b <= 1e-8);
    for (std::size_t i = 0; i < ab.size(); i += std::max<std::size_t>(1, ab.size() / 25)) {
        CHECK(std::abs(ab.As[i] - reference_a(m, ab.xs[i])) <= 1e-7);
    }
}

}  // namespace

TEST_CASE("vasicek B and A match closed forms on [0, 30]") {
    check_against_closed_form(make_vasicek({1.0, 0.05, 0.1}));
    check_against_closed_form(make_vasicek({0.07, 0.03, 0.02}));
}

TEST_CASE("cir B and A match closed forms on [0, 30]") {
    const AffineModel m = make_cir({1.0, 0.05, 0.2});
    check_against_closed_form(m);
    const ABCurve ab = solve_ab(m, 30.0);
    CHECK(std::abs(ab.Bs.back() - find_c(m).c) <= 1e-6);
    check_against_closed_form(make_cir({0.1, 0.04, 0.3}));
}

TEST_CASE("closed-form B at infinity is c") {
    const AffineModel m = make_cir({1.0, 0.05, 0.2});
    const double c = -0.980762113533159402911695122588;
    CHECK(closed_form_b(m, std::numeric_limits<double>::infinity()) == Approx(c).epsilon(1e-15));
    CHECK(std::abs(find_c(m).c - c) <= 1e-12);
    CHECK_THROWS_AS(closed_form_b(make_gamma_ou({1, 1, 0.5}), 1.0), Error);
}

TEST_CASE("B decreases towards c") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const AffineModel m = random_model(seed);
        INFO(m.describe());
        const double c = find_c(m).c;
        const ABCurve ab = solve_ab(m, 20.0);
        bool decreasing = true;
        bool above_c = true;
        for (std::size_t i = 1; i < ab.size(); ++i) {
            // Strict while B is resolvably above c; once saturated, rounding noise only.
            if (ab.Bs[i - 1] - c > 1e-9) {
                decreasing = decreasing && ab.Bs[i] < ab.Bs[i - 1];
            } else {
                decreasing = decreasing && ab.Bs[i] <= ab.Bs[i - 1] + 1e-15;
            }
            above_c = above_c && ab.Bs[i] > c - 1e-12;
        }
        CHECK(decreasing);
        CHECK(above_c);
    }
}

TEST_CASE("gamma-OU A matches quadrature of F(B) with B = -(1 - e^{-lambda x}) / lambda") {
    const AffineModel m = make_gamma_ou({1.0, 1.0, 0.5});
    const ABCurve ab = solve_ab(m, 30.0);
    for (std::size_t i = 0; i < ab.size(); i += 7) {
        const double x = ab.xs[i];
        CHECK(std::abs(ab.Bs[i] - std::expm1(-x)) <= 1e-8);
        auto integrand = [&](double s) { return m.F(std::expm1(-s)); };
        const double a = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
            integrand, 0.0, x, 15, 1e-14);
        CHECK(std::abs(ab.As[i] - a) <= 1e-7);
    }
}

TEST_CASE("grid solver lands on every requested maturity") {
    const AffineModel m = make_vasicek({1.0, 0.05, 0.1});
    const std::vector<double> grid = geometric_grid(1e-4, 30.0, 50);
    const ABCurve ab = solve_ab_on_grid(m, grid);
    REQUIRE(ab.size() == grid.size() + 1);
    CHECK(ab.xs[0] == 0.0);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        CHECK(ab.xs[i + 1] == grid[i]);
        CHECK(std::abs(ab.Bs[i + 1] - closed_form_b(m, grid[i])) <= 1e-8);
    }
}

TEST_CASE("geometric grid endpoints and ratio") {
    const auto g = geometric_grid(1e-4, 30.0, 400);
    REQUIRE(g.size() == 400);
    CHECK(g.front() == 1e-4);
    CHECK(g.back() == 30.0);
    CHECK(g[1] / g[0] == Approx(g[300] / g[299]).epsilon(1e-12));
    CHECK_THROWS_AS(geometric_grid(0.0, 1.0, 10), Error);
    CHECK_THROWS_AS(geometric_grid(2.0, 1.0, 10), Error);
}

TEST_CASE("yield and forward curves for vasicek") {
    const AffineModel m = make_vasicek({1.0, 0.05, 0.1});
    const ABCurve ab = solve_ab_on_grid(m, geometric_grid(1e-4, 30.0));
    const Curve y = yield_curve(m, 0.03, ab);
    const Curve f = forward_curve(m, 0.03, ab);
    CHECK(y.kind == CurveKind::Yield);
    CHECK(y.xs.size() == 400);
    CHECK(f.xs.size() == 401);
    CHECK(y.values.front() == Approx(0.03).epsilon(1e-4));
    CHECK(f.values.front() == Approx(0.03).epsilon(1e-14));
    // Both approach b_asymp = theta - sigma^2 / (2 lambda^2).
    CHECK(std::abs(f.values.back() - 0.045) <= 1e-8);
    CHECK(std::abs(y.values.back() - 0.045) <= 1e-3);
}

TEST_CASE("yield is the running average of forwards") {
    const AffineModel m = make_cir({0.8, 0.04, 0.15});
    const std::vector<double> grid = geometric_grid(1e-3, 20.0, 400);
    const ABCurve ab = solve_ab_on_grid(m, grid);
    const double r = 0.02;
    const Curve y = yield_curve(m, r, ab);
    const Curve f = forward_curve(m, r, ab);
    // Trapezoid integral of the forward curve on the fine grid, starting at x = 0.
    double integral = 0.0;
    double worst = 0.0;
    for (std::size_t i = 1; i < f.xs.size(); ++i) {
        const double h = f.xs[i] - f.xs[i - 1];
        integral += 0.5 * h * (f.values[i] + f.values[i - 1]);
        worst = std::max(worst, std::abs(integral / f.xs[i] - y.values[i - 1]));
    }
    CHECK(worst <= 1e-6);
}

TEST_CASE("non-finite F surfaces as an error") {
    Evaluator F{[](double u) {
                    return (u > -0.9365 && u < -0.9355) ? std::nan("") : 0.05 * u + 0.005 * u * u;
                },
                [](double u) { return 0.05 + 0.01 * u; }, false};
    Evaluator R{[](double u) { return -u; }, [](double) { return -1.0; }, true};
    const AffineModel m = make_custom("nan_band", F, R, StateSpace::AllReals);
    // B(x) = -(1 - e^{-x}) passes through the band near x = 2.75.
    try {
        solve_ab(m, 10.0);
        FAIL("expected failure");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NonFinite);
    }
}

TEST_CASE("invalid tolerance and horizon") {
    const AffineModel m = make_vasicek({1.0, 0.05, 0.1});
    CHECK_THROWS_AS(solve_ab(m, 10.0, 0.0), Error);
    CHECK_THROWS_AS(solve_ab(m, 10.0, 1e-2), Error);
    CHECK_THROWS_AS(solve_ab(m, -1.0), Error);
    CHECK_THROWS_AS(solve_ab(m, std::numeric_limits<double>::infinity()), Error);
    const std::vector<double> bad{1.0, 0.5};
    CHECK_THROWS_AS(solve_ab_on_grid(m, bad), Error);
}

TEST_CASE("csv output") {
    const AffineModel m = make_vasicek({1.0, 0.05, 0.1});
    const ABCurve ab = solve_ab_on_grid(m, geometric_grid(0.5, 2.0, 3));
    std::ostringstream os;
    write_csv(os, yield_curve(m, 0.05, ab));
    std::istringstream is(os.str());
    std::string line;
    std::getline(is, line);
    CHECK(line == "x,value");
    int rows = 0;
    while (std::getline(is, line)) ++rows;
    CHECK(rows == 3);
}
