#include "affcurve/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

#include "affcurve/error.hpp"
#include "format.hpp"

namespace affcurve {

namespace {

// Kronrod nodes (positive half, descending) and weights; odd indices are
// the embedded Gauss points.
constexpr std::array<double, 8> kNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kKronrod = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kGauss = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
    double a;
    double b;
    double value;
    double error;

    bool operator<(const Segment& o) const { return error < o.error; }
};

Segment gk15(const std::function<double(double)>& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(center);
    double kronrod = fc * kKronrod[7];
    double gauss = fc * kGauss[3];
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kNodes[j];
        const double pair = f(center - dx) + f(center + dx);
        kronrod += kKronrod[j] * pair;
        if (j % 2 == 1) gauss += kGauss[j / 2] * pair;
    }
    kronrod *= half;
    gauss *= half;
    if (!std::isfinite(kronrod)) {
        throw Error(ErrorCode::QuadratureFailure,
                    "integrand not finite on [" + detail::shortest(a) + ", " +
                        detail::shortest(b) + "]");
    }
    const double roundoff = 50.0 * std::numeric_limits<double>::epsilon() * std::abs(kronrod);
    return {a, b, kronrod, std::max(std::abs(kronrod - gauss), roundoff)};
}

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           double abs_tol, std::size_t max_intervals) {
    if (!(abs_tol > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "quadrature tolerance must be positive");
    }
    if (a == b) return {0.0, 0.0, 0};
    std::priority_queue<Segment> heap;
    Segment first = gk15(f, a, b);
    double total = first.value;
    double error = first.error;
    heap.push(first);
    // Below ~100 ulp of the integral the Kronrod/Gauss gap is rounding noise.
    auto target = [abs_tol](double value) {
        return std::max(abs_tol, 100.0 * std::numeric_limits<double>::epsilon() * std::abs(value));
    };
    while (error > target(total)) {
        if (heap.size() >= max_intervals) {
            throw Error(ErrorCode::QuadratureFailure,
                        "subdivision cap reached with error estimate " +
                            detail::shortest(error));
        }
        Segment worst = heap.top();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            // Interval can no longer be split in floating point; the
            // remaining error is rounding noise.
            break;
        }
        heap.pop();
        Segment left = gk15(f, worst.a, mid);
        Segment right = gk15(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        if (error <= target(total)) {
            // Re-sum to shed accumulated update drift before accepting.
            total = 0.0;
            error = 0.0;
            auto copy = heap;
            while (!copy.empty()) {
                total += copy.top().value;
                error += copy.top().error;
                copy.pop();
            }
        }
    }
    return {total, error, heap.size()};
}

}  // namespace affcurve
