// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "affcurve/classifier.hpp"
#include "affcurve/error.hpp"
#include "affcurve/montecarlo.hpp"
#include "affcurve/oracle.hpp"
#include "affcurve/random.hpp"
#include "affcurve/riccati.hpp"
#include "affcurve/thresholds.hpp"
#include "../closed_forms.hpp"

using namespace affcurve;

namespace {

struct Outcome {
    bool ok;
    std::string detail;
};

int failures = 0;

void criterion(int id, const char* title, double time_limit_s, const std::function<Outcome()>& body) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out{false, ""};
    try {
        out = body();
    } catch (const std::exception& e) {
        out = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs < time_limit_s;
    const bool pass = out.ok && in_time;
    if (!pass) ++failures;
    std::printf("%s criterion %d: %s | %s | %.3fs (limit %gs)%s\n", pass ? "PASS" : "FAIL", id, title,
                out.detail.c_str(), secs, time_limit_s, in_time ? "" : " TIMEOUT");
    std::fflush(stdout);
}

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

Outcome vasicek_thresholds() {
    const Thresholds th = compute_thresholds(make_vasicek({1.0, 0.05, 0.1}));
    const double err = std::max({std::abs(th.b_fw_norm - 0.04), std::abs(th.b_y_norm - 0.0425),
                                 std::abs(th.long_end.b_asymp - 0.045),
                                 std::abs(th.b_inv.value() - 0.05)});
    return {err <= 1e-10, fmt("max error %.3e", err)};
}

Outcome cir_gamma_b_y() {
    double worst = 0.0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const AffineModel cir = random_model(seed, ModelKind::Cir);
        const AffineModel gam = random_model(seed, ModelKind::GammaOu);
        worst = std::max(worst, std::abs(compute_thresholds(cir).b_y_norm -
                                         closed::cir(std::get<CirParams>(cir.params())).b_y_norm));
        worst = std::max(worst, std::abs(compute_thresholds(gam).b_y_norm -
                                         closed::gamma_ou(std::get<GammaOuParams>(gam.params())).b_y_norm));
    }
    return {worst <= 1e-8, fmt("200 draws, max |b_y_norm error| %.3e", worst)};
}

Outcome ordering() {
    int violations = 0;
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        const AffineModel m = random_model(seed);
        try {
            const Thresholds th = compute_thresholds(m);
            const bool ok = th.b_fw_norm < th.b_y_norm && th.b_y_norm < th.long_end.b_asymp &&
                            th.b_inv > th.long_end.b_asymp;
            if (!ok) ++violations;
        } catch (const Error&) {
            ++violations;
        }
    }
    return {violations == 0, "1000 models, " + std::to_string(violations) + " violations"};
}

Outcome signature_case() {
    const AffineModel m = make_vasicek({1.0, 0.05, 0.1});
    const Thresholds th = compute_thresholds(m);
    const double r = 0.0415;
    const Shape ty = classify_yield(th, r).label;
    const Shape tf = classify_forward(th, r).label;
    const ABCurve ab = solve_ab_on_grid(m, geometric_grid(1e-7, 30.0, 2000));
    const Shape oy = classify_numeric(yield_curve(m, r, ab)).label;
    const Shape of = classify_numeric(forward_curve(m, r, ab)).label;
    // The old rule used -F'(c)/R'(c) as the yield threshold.
    const double old_threshold = b_fw_norm(m, th.long_end);
    const Shape old_yield = r <= old_threshold ? Shape::Normal : Shape::Humped;
    const bool ok = ty == Shape::Normal && tf == Shape::Humped && oy == Shape::Normal &&
                    of == Shape::Humped && std::abs(old_threshold - 0.04) <= 1e-12 &&
                    old_yield == Shape::Humped;
    return {ok, "theorem " + std::string(to_string(ty)) + "/" + std::string(to_string(tf)) +
                    ", oracle " + std::string(to_string(oy)) + "/" + std::string(to_string(of)) +
                    ", old yield rule gives " + std::string(to_string(old_yield))};
}

Outcome equivalence() {
    std::size_t pairs = 0, disagree = 0, indeterminate = 0;
    for (std::uint64_t i = 0; i < 60; ++i) {
        const std::uint64_t seed = StreamRng(2024, i).next_u64();
        VerifyOptions opts;
        opts.jitter_seed = seed;
        const VerificationReport rep = verify_model(random_model(seed), opts);
        for (const auto& row : rep.rows) {
            ++pairs;
            if (!row.agree) ++disagree;
            if (row.oracle_yield == Shape::Indeterminate || row.oracle_forward == Shape::Indeterminate) {
                ++indeterminate;
            }
        }
    }
    return {pairs >= 500 && disagree == 0 && indeterminate == 0,
            std::to_string(pairs) + " pairs, " + std::to_string(disagree) + " disagreements, " +
                std::to_string(indeterminate) + " indeterminate"};
}

Outcome riccati_accuracy() {
    double worst_b = 0.0, worst_a = 0.0;
    for (const AffineModel& m : {make_vasicek({1.0, 0.05, 0.1}), make_cir({1.0, 0.05, 0.2})}) {
        const ABCurve ab = solve_ab(m, 30.0);
        for (std::size_t i = 0; i < ab.size(); ++i) {
            worst_b = std::max(worst_b, std::abs(ab.Bs[i] - closed_form_b(m, ab.xs[i])));
        }
        auto fb = [&](double s) { return m.F(closed_form_b(m, s)); };
        for (std::size_t i = 0; i < ab.size(); i += 5) {
            const double a = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
                fb, 0.0, ab.xs[i], 15, 1e-14);
            worst_a = std::max(worst_a, std::abs(ab.As[i] - a));
        }
    }
    return {worst_b <= 1e-8 && worst_a <= 1e-7,
            fmt("max |B error| %.3e", worst_b) + fmt(", max |A error| %.3e", worst_a)};
}

Outcome long_end() {
    double worst = 0.0;
    for (const AffineModel& m : {make_vasicek({1.0, 0.05, 0.1}), make_cir({1.0, 0.05, 0.2}),
                                 make_gamma_ou({1.0, 1.0, 0.5})}) {
        const Thresholds th = compute_thresholds(m);
        const double b = th.long_end.b_asymp;
        const std::vector<double> grid{1e3 / th.long_end.lambda_qmr};
        const ABCurve ab = solve_ab_on_grid(m, grid);
        const double lo = m.state_space() == StateSpace::AllReals ? th.b_fw_norm - 0.05 : 0.0;
        for (double r : {lo, th.b_fw_norm, th.b_y_norm, th.b_inv.value(), 2.0 * th.b_inv.value()}) {
            const double y = yield_curve(m, r, ab).values.back();
            const double f = forward_curve(m, r, ab).values.back();
            const double scale = 0.02 * std::max(std::abs(b), 0.01);
            worst = std::max({worst, std::abs(y - b) / scale, std::abs(f - b) / scale});
        }
    }
    return {worst <= 1.0, fmt("worst error / tolerance %.3e", worst)};
}

Outcome monte_carlo() {
    std::string detail;
    bool ok = true;
    std::uint64_t seed = 20240;
    const std::vector<std::pair<AffineModel, double>> cases{
        {make_vasicek({1.0, 0.05, 0.1}), 0.03}, {make_cir({1.0, 0.05, 0.2}), 0.03},
        {make_gamma_ou({1.0, 1.0, 0.5}), 0.3}};
    for (const auto& [m, r0] : cases) {
        for (double x : {1.0, 5.0}) {
            const McCheck c = mc_check(m, r0, x, 100000, min_steps(x), seed++);
            ok = ok && c.passed();
            detail += std::string(to_string(m.kind())) + fmt(" x=%g", x) + fmt(" z=%+.2f", c.z_score) +
                      (c.attempts > 1 ? " (retried)" : "") + "; ";
        }
    }
    return {ok, detail};
}

}  // namespace

int main() {
    criterion(1, "vasicek closed-form thresholds", 1.0, vasicek_thresholds);
    criterion(2, "cir and gamma-OU b_y_norm vs closed forms", 10.0, cir_gamma_b_y);
    criterion(3, "strict threshold ordering", 60.0, ordering);
    criterion(4, "signature case r = 0.0415", 1.0, signature_case);
    criterion(5, "theorem vs oracle equivalence", 300.0, equivalence);
    criterion(6, "riccati accuracy", 5.0, riccati_accuracy);
    criterion(7, "long-end convergence", 5.0, long_end);
    criterion(8, "monte carlo bond prices", 60.0, monte_carlo);
    std::printf("%d of 8 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
