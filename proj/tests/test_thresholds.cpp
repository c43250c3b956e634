#include <doctest.h>

#include <cmath>
#include <limits>

#include "affcurve/error.hpp"
#include "affcurve/oracle.hpp"
#include "affcurve/quadrature.hpp"
#include "affcurve/thresholds.hpp"
#include "closed_forms.hpp"

using namespace affcurve;
using doctest::Approx;

TEST_CASE("vasicek thresholds") {
    const Thresholds th = compute_thresholds(make_vasicek({1.0, 0.05, 0.1}));
    CHECK(std::abs(th.b_fw_norm - 0.04) <= 1e-10);
    CHECK(std::abs(th.b_y_norm - 0.0425) <= 1e-10);
    CHECK(std::abs(th.long_end.b_asymp - 0.045) <= 1e-10);
    REQUIRE_FALSE(th.b_inv.is_infinite());
    CHECK(std::abs(th.b_inv.value() - 0.05) <= 1e-10);
}

TEST_CASE("cir thresholds") {
    const Thresholds th = compute_thresholds(make_cir({1.0, 0.05, 0.2}));
    CHECK(std::abs(th.b_fw_norm - 0.0481125224324688137090957317085) <= 1e-12);
    CHECK(std::abs(th.b_y_norm - 0.04857237456457854009592241057) <= 1e-12);
    CHECK(std::abs(th.long_end.b_asymp - 0.0490381056766579701455847561293) <= 1e-12);
    CHECK(th.b_inv.value() == Approx(0.05).epsilon(1e-15));
}

TEST_CASE("gamma-OU thresholds") {
    const Thresholds th = compute_thresholds(make_gamma_ou({1.0, 1.0, 0.5}));
    CHECK(std::abs(th.b_fw_norm - 2.0 / 9.0) <= 1e-12);
    CHECK(std::abs(th.b_y_norm - 0.270310072072109587985342076976) <= 1e-12);
    CHECK(std::abs(th.long_end.b_asymp - 1.0 / 3.0) <= 1e-12);
    CHECK(th.b_inv.value() == Approx(0.5).epsilon(1e-15));

    const Thresholds th2 = compute_thresholds(make_gamma_ou({2.0, 3.0, 0.7}));
    CHECK(std::abs(th2.b_y_norm - 1.33379818866816924778) <= 1e-11);
}

TEST_CASE("b_inv is infinite when R is increasing at zero") {
    const AffineModel m = make_quadratic({0.05, 0.01, 0.1, 1.0, StateSpace::NonNegativeReals});
    REQUIRE(m.validation().ok());
    const Thresholds th = compute_thresholds(m);
    CHECK(th.b_inv.is_infinite());
    CHECK(th.b_inv.to_string() == "inf");
    CHECK(th.b_fw_norm < th.b_y_norm);
    CHECK(th.b_y_norm < th.long_end.b_asymp);
}

TEST_CASE("extended rate comparisons") {
    const ExtendedRate inf = ExtendedRate::infinity();
    const ExtendedRate five(5.0);
    CHECK(inf > 1e300);
    CHECK_FALSE(inf <= 1e300);
    CHECK(five > 4.0);
    CHECK(five <= 5.0);
    CHECK(five == 5.0);
    CHECK_FALSE(inf == 5.0);
    CHECK(five != inf);
    CHECK(five.value() == 5.0);
    CHECK_THROWS_AS(inf.value(), Error);
    CHECK_THROWS_AS(ExtendedRate(std::numeric_limits<double>::infinity()), Error);
    CHECK_THROWS_AS(ExtendedRate(std::nan("")), Error);
}

TEST_CASE("random thresholds match closed forms") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        for (ModelKind kind : {ModelKind::Vasicek, ModelKind::Cir, ModelKind::GammaOu}) {
            const AffineModel m = random_model(seed, kind);
            INFO(m.describe());
            const Thresholds th = compute_thresholds(m);
            closed::Bundle ref{};
            if (kind == ModelKind::Vasicek) ref = closed::vasicek(std::get<VasicekParams>(m.params()));
            if (kind == ModelKind::Cir) ref = closed::cir(std::get<CirParams>(m.params()));
            if (kind == ModelKind::GammaOu) ref = closed::gamma_ou(std::get<GammaOuParams>(m.params()));
            const double scale = std::max(1.0, std::abs(ref.b_y_norm));
            CHECK(std::abs(th.b_y_norm - ref.b_y_norm) <= 1e-8 * scale);
            CHECK(std::abs(th.b_fw_norm - ref.b_fw_norm) <= 1e-10 * scale);
            CHECK(std::abs(th.long_end.b_asymp - ref.b_asymp) <= 1e-10 * scale);
            CHECK(std::abs(th.b_inv.value() - ref.b_inv) <= 1e-12 * scale);
        }
    }
}

TEST_CASE("strict ordering over random models") {
    for (std::uint64_t seed = 1000; seed < 1300; ++seed) {
        const AffineModel m = random_model(seed);
        INFO(m.describe());
        const Thresholds th = compute_thresholds(m);
        CHECK(th.b_fw_norm < th.b_y_norm);
        CHECK(th.b_y_norm < th.long_end.b_asymp);
        CHECK(th.b_inv > th.long_end.b_asymp);
        if (m.state_space() == StateSpace::NonNegativeReals) CHECK(th.b_inv > 0.0);
    }
}

TEST_CASE("b_y_norm is a weighted mean of integrand values") {
    // b_y_norm is minus the average of g(u) = (F(u) - F(c)) / (R(u) - 1) over
    // [c, 0]; -g runs from b_fw_norm at c to b_asymp at 0.
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const AffineModel m = random_model(seed);
        const LongEnd le = find_c(m);
        const double c = le.c;
        const double near_c = c * (1.0 - 1e-6);
        const double ratio = (m.F(near_c) - m.F(c)) / (m.R(near_c) - 1.0);
        CHECK(ratio == Approx(m.dF(c) / m.dR(c)).epsilon(1e-4));
        const double lo = b_fw_norm(m, le);
        const double hi = le.b_asymp;
        const double y = b_y_norm(m, le);
        CHECK(lo < y);
        CHECK(y < hi);
    }
}

TEST_CASE("b_fw_norm needs a non-zero R'(c)") {
    Evaluator F{[](double u) { return 0.05 * u + 0.01 * u * u; },
                [](double u) { return 0.05 + 0.02 * u; }, false};
    Evaluator R{[](double u) { return -u; }, [](double) { return 0.0; }, false};
    const AffineModel m = make_custom("flat", F, R, StateSpace::AllReals);
    CHECK_THROWS_AS(b_fw_norm(m, LongEnd{-1.0, 1.0, 0.04}), Error);
}

TEST_CASE("adaptive quadrature") {
    const auto r1 = integrate([](double x) { return std::exp(x); }, 0.0, 1.0, 1e-14);
    CHECK(r1.value == Approx(std::expm1(1.0)).epsilon(1e-14));
    const auto r2 = integrate([](double x) { return std::sqrt(x); }, 0.0, 1.0, 1e-12);
    CHECK(std::abs(r2.value - 2.0 / 3.0) <= 1e-12);
    CHECK(r2.intervals > 1);
    const auto r3 = integrate([](double x) { return std::log(x); }, 0.0, 1.0, 1e-10);
    CHECK(std::abs(r3.value + 1.0) <= 1e-10);
    CHECK(integrate([](double) { return 3.0; }, 2.0, 2.0, 1e-12).value == 0.0);
    CHECK_THROWS_AS(integrate([](double x) { return 1.0 / x; }, 0.0, 1.0, 1e-12, 50), Error);
    CHECK_THROWS_AS(integrate([](double) { return std::nan(""); }, 0.0, 1.0, 1e-12), Error);
}
