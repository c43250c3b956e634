#include "affcurve/riccati.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "affcurve/error.hpp"
#include "format.hpp"

namespace affcurve {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
// Differences between the 5th and embedded 4th order weights.
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

// Stability function of the 5th order solution stays in (0, 1) on [-2.5, 0).
constexpr double kStableReal = 2.5;

struct Derivs {
    double dA;
    double dB;
};

class RiccatiStepper {
public:
    RiccatiStepper(const AffineModel& m, double tol, double x_max)
        : m_(m), tol_(tol), h_min_(1e-12 * x_max), h_(1e-4 * x_max) {}

    // Advances (x, A, B) to exactly x_target, reporting every accepted step.
    template <class Emit>
    void advance_to(double x_target, Emit&& emit) {
        while (x_ < x_target) {
            step(x_target);
            emit(x_, A_, B_);
        }
    }

    double x() const { return x_; }

private:
    Derivs rhs(double b) const {
        double f = m_.F(b);
        double r = m_.R(b);
        if (!std::isfinite(f) || !std::isfinite(r)) {
            const double edge = std::max(m_.F_domain_lower(), m_.R_domain_lower());
            if (b < edge) {
                throw Error(ErrorCode::DomainEscape,
                            "B = " + detail::shortest(b) + " left the effective domain");
            }
            throw Error(ErrorCode::NonFinite,
                        "F or R not finite at B = " + detail::shortest(b));
        }
        return {f, r - 1.0};
    }

    // Takes one accepted step toward x_target, shrinking on rejection.
    void step(double x_target) {
        if (!have_k1_) {
            k1_ = rhs(B_);
            have_k1_ = true;
        }
        // Near the attracting root c the error estimate vanishes and the step
        // would grow past the real-axis stability interval of the method,
        // making B oscillate around c. Keep h |R'(B)| inside it.
        const double slope = std::abs(m_.dR(B_));
        if (slope > 0.0 && std::isfinite(slope)) h_ = std::min(h_, kStableReal / slope);
        for (;;) {
            const bool clipped = h_ >= x_target - x_;
            const double h = clipped ? x_target - x_ : h_;
            if (h < h_min_ && !clipped) {
                throw Error(ErrorCode::StepSizeUnderflow,
                            "step size fell below " + detail::shortest(h_min_) + " at x = " +
                                detail::shortest(x_));
            }
            const Derivs k1 = k1_;
            const Derivs k2 = rhs(B_ + h * a21 * k1.dB);
            const Derivs k3 = rhs(B_ + h * (a31 * k1.dB + a32 * k2.dB));
            const Derivs k4 = rhs(B_ + h * (a41 * k1.dB + a42 * k2.dB + a43 * k3.dB));
            const Derivs k5 =
                rhs(B_ + h * (a51 * k1.dB + a52 * k2.dB + a53 * k3.dB + a54 * k4.dB));
            const Derivs k6 = rhs(B_ + h * (a61 * k1.dB + a62 * k2.dB + a63 * k3.dB +
                                            a64 * k4.dB + a65 * k5.dB));
            const double A_new =
                A_ + h * (b1 * k1.dA + b3 * k3.dA + b4 * k4.dA + b5 * k5.dA + b6 * k6.dA);
            const double B_new =
                B_ + h * (b1 * k1.dB + b3 * k3.dB + b4 * k4.dB + b5 * k5.dB + b6 * k6.dB);
            const Derivs k7 = rhs(B_new);

            const double errA = h * (e1 * k1.dA + e3 * k3.dA + e4 * k4.dA + e5 * k5.dA +
                                     e6 * k6.dA + e7 * k7.dA);
            const double errB = h * (e1 * k1.dB + e3 * k3.dB + e4 * k4.dB + e5 * k5.dB +
                                     e6 * k6.dB + e7 * k7.dB);
            const double scA = tol_ * h * (1.0 + std::max(std::abs(A_), std::abs(A_new)));
            const double scB = tol_ * h * (1.0 + std::max(std::abs(B_), std::abs(B_new)));
            const double err = std::max(std::abs(errA) / scA, std::abs(errB) / scB);
            if (!std::isfinite(err)) {
                throw Error(ErrorCode::NonFinite, "non-finite error estimate at x = " +
                                                      detail::shortest(x_));
            }
            const double factor = err == 0.0 ? 5.0 : 0.9 * std::pow(err, -0.2);
            if (err <= 1.0) {
                x_ = clipped ? x_target : x_ + h;
                A_ = A_new;
                B_ = B_new;
                k1_ = k7;
                // A step shortened to hit an output point says little about
                // the admissible size; only grow from it.
                const double next = h * std::min(5.0, factor);
                h_ = clipped ? std::max(h_, next) : next;
                return;
            }
            h_ = h * std::max(0.1, factor);
        }
    }

    const AffineModel& m_;
    double tol_;
    double h_min_;
    double h_;
    double x_ = 0.0;
    double A_ = 0.0;
    double B_ = 0.0;
    Derivs k1_{};
    bool have_k1_ = false;
};

void check_tol(double tol) {
    if (!(tol > 0.0) || tol > 1e-3) {
        throw Error(ErrorCode::InvalidArgument, "tolerance must lie in (0, 1e-3]");
    }
}

}  // namespace

std::string_view to_string(CurveKind k) { return k == CurveKind::Yield ? "yield" : "forward"; }

ABCurve solve_ab(const AffineModel& m, double x_max, double tol) {
    m.require_valid();
    check_tol(tol);
    if (!(x_max > 0.0) || !std::isfinite(x_max)) {
        throw Error(ErrorCode::InvalidArgument, "x_max must be positive and finite");
    }
    ABCurve out{{0.0}, {0.0}, {0.0}};
    RiccatiStepper stepper(m, tol, x_max);
    stepper.advance_to(x_max, [&out](double x, double a, double b) {
        out.xs.push_back(x);
        out.As.push_back(a);
        out.Bs.push_back(b);
    });
    return out;
}

ABCurve solve_ab_on_grid(const AffineModel& m, std::span<const double> grid, double tol) {
    m.require_valid();
    check_tol(tol);
    if (grid.empty()) throw Error(ErrorCode::InvalidArgument, "empty maturity grid");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const bool bad = !(grid[i] > 0.0) || !std::isfinite(grid[i]) ||
                         (i > 0 && !(grid[i] > grid[i - 1]));
        if (bad) {
            throw Error(ErrorCode::InvalidArgument,
                        "maturity grid must be positive and strictly increasing");
        }
    }
    ABCurve out;
    out.xs.reserve(grid.size() + 1);
    out.As.reserve(grid.size() + 1);
    out.Bs.reserve(grid.size() + 1);
    out.xs.push_back(0.0);
    out.As.push_back(0.0);
    out.Bs.push_back(0.0);
    RiccatiStepper stepper(m, tol, grid.back());
    for (double x : grid) {
        double a_at = 0.0, b_at = 0.0;
        stepper.advance_to(x, [&](double, double a, double b) {
            a_at = a;
            b_at = b;
        });
        out.xs.push_back(x);
        out.As.push_back(a_at);
        out.Bs.push_back(b_at);
    }
    return out;
}

double closed_form_b(const AffineModel& m, double x) {
    if (const auto* v = std::get_if<VasicekParams>(&m.params())) {
        return std::expm1(-v->lambda * x) / v->lambda;
    }
    if (const auto* c = std::get_if<CirParams>(&m.params())) {
        const double g = c->gamma();
        if (std::isinf(x)) return -2.0 / (c->a + g);
        const double e = std::expm1(g * x);
        return -2.0 * e / ((c->a + g) * e + 2.0 * g);
    }
    throw Error(ErrorCode::UnsupportedModel,
                "closed-form B is available for vasicek and cir only, not " + m.describe());
}

std::vector<double> geometric_grid(double x_min, double x_max, std::size_t n) {
    if (!(x_min > 0.0) || !(x_max > x_min) || !std::isfinite(x_max) || n < 2) {
        throw Error(ErrorCode::InvalidArgument,
                    "geometric grid needs 0 < x_min < x_max and at least 2 points");
    }
    std::vector<double> xs(n);
    const double step = std::log(x_max / x_min) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) xs[i] = x_min * std::exp(step * static_cast<double>(i));
    xs.front() = x_min;
    xs.back() = x_max;
    return xs;
}

Curve yield_curve(const AffineModel&, double r, const ABCurve& ab) {
    Curve out{{}, {}, CurveKind::Yield};
    out.xs.reserve(ab.size());
    out.values.reserve(ab.size());
    for (std::size_t i = 0; i < ab.size(); ++i) {
        const double x = ab.xs[i];
        if (x <= 0.0) continue;
        out.xs.push_back(x);
        out.values.push_back(-(ab.As[i] + r * ab.Bs[i]) / x);
    }
    return out;
}

Curve forward_curve(const AffineModel& m, double r, const ABCurve& ab) {
    Curve out{ab.xs, {}, CurveKind::Forward};
    out.values.reserve(ab.size());
    for (double b : ab.Bs) out.values.push_back(-m.F(b) - r * (m.R(b) - 1.0));
    return out;
}

void write_csv(std::ostream& os, const Curve& curve) {
    os << "x,value\n";
    for (std::size_t i = 0; i < curve.xs.size(); ++i) {
        os << detail::sig17(curve.xs[i]) << ',' << detail::sig17(curve.values[i]) << '\n';
    }
}

}  // namespace affcurve
