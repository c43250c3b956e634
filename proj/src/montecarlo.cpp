#include "affcurve/montecarlo.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "affcurve/error.hpp"
#include "affcurve/random.hpp"
#include "affcurve/riccati.hpp"
#include "format.hpp"

namespace affcurve {

namespace {

constexpr std::uint64_t kRetrySalt = 0x9e3779b97f4a7c15ull;

// Welford accumulator; samples are added in a fixed order.
class Moments {
public:
    void add(double v) {
        ++n_;
        const double delta = v - mean_;
        mean_ += delta / static_cast<double>(n_);
        m2_ += delta * (v - mean_);
    }
    std::size_t count() const { return n_; }
    double mean() const { return mean_; }
    double variance() const { return n_ > 1 ? m2_ / static_cast<double>(n_ - 1) : 0.0; }

private:
    std::size_t n_ = 0;
    double mean_ = 0.0;
    double m2_ = 0.0;
};

// CIR antithetic pair: full-truncation Euler, trapezoid on max(r, 0).
std::array<double, 2> cir_pair_integrals(double r0, const CirParams& p, double dt,
                                         std::size_t n_steps, StreamRng& rng) {
    double up = r0, down = r0;
    double int_up = 0.0, int_down = 0.0;
    for (std::size_t i = 0; i < n_steps; ++i) {
        const double z = rng.normal();
        const double next_up = cir_full_truncation_step(up, p, dt, z);
        const double next_down = cir_full_truncation_step(down, p, dt, -z);
        int_up += 0.5 * dt * (std::max(up, 0.0) + std::max(next_up, 0.0));
        int_down += 0.5 * dt * (std::max(down, 0.0) + std::max(next_down, 0.0));
        up = next_up;
        down = next_down;
    }
    return {int_up, int_down};
}

// Vasicek antithetic pair from the exact joint transition of (r, integral r).
std::array<double, 2> vasicek_pair_integrals(double r0, const VasicekParams& p, double dt,
                                             std::size_t n_steps, StreamRng& rng) {
    const VasicekStepMoments mom = vasicek_step_moments(p, dt);
    double up = r0, down = r0;
    double int_up = 0.0, int_down = 0.0;
    for (std::size_t i = 0; i < n_steps; ++i) {
        const double z1 = rng.normal();
        const double z2 = rng.normal();
        const double noise_r = mom.sd_rate * z1;
        const double noise_i = mom.integral_on_rate * z1 + mom.integral_residual_sd * z2;
        const double mean_up = up - p.theta, mean_down = down - p.theta;
        int_up += p.theta * dt + mean_up * mom.integral_weight + noise_i;
        int_down += p.theta * dt + mean_down * mom.integral_weight - noise_i;
        up = p.theta + mean_up * mom.decay + noise_r;
        down = p.theta + mean_down * mom.decay - noise_r;
    }
    return {int_up, int_down};
}

double gamma_ou_integral(double r0, const GammaOuParams& p, double x, StreamRng& rng) {
    const double decay = p.lambda;
    double integral = r0 * -std::expm1(-decay * x) / decay;
    const double mean_gap = 1.0 / (p.lambda * p.k);
    double t = rng.exponential(mean_gap);
    while (t < x) {
        const double jump = rng.exponential(p.theta);
        integral += jump * -std::expm1(-decay * (x - t)) / decay;
        t += rng.exponential(mean_gap);
    }
    return integral;
}

}  // namespace

double cir_full_truncation_step(double r, const CirParams& p, double dt, double z) {
    const double rp = std::max(r, 0.0);
    return r + p.a * (p.theta - rp) * dt + p.sigma * std::sqrt(rp * dt) * z;
}

VasicekStepMoments vasicek_step_moments(const VasicekParams& p, double dt) {
    const double l = p.lambda;
    const double s2 = p.sigma * p.sigma;
    const double y = l * dt;
    VasicekStepMoments mom{};
    mom.decay = std::exp(-y);
    mom.integral_weight = -std::expm1(-y) / l;
    const double var_rate = s2 * -std::expm1(-2.0 * y) / (2.0 * l);
    // g(y) = y - 2(1 - e^-y) + (1 - e^-2y)/2 cancels badly for small y.
    const double g = y < 1e-3 ? y * y * y * (1.0 / 3 - y / 4 + 7 * y * y / 60 - y * y * y / 24)
                              : y + 2.0 * std::expm1(-y) - 0.5 * std::expm1(-2.0 * y);
    const double var_int = s2 * g / (l * l * l);
    const double cov = 0.5 * s2 * std::expm1(-y) * std::expm1(-y) / (l * l);
    mom.sd_rate = std::sqrt(var_rate);
    mom.integral_on_rate = cov / mom.sd_rate;
    mom.integral_residual_sd = std::sqrt(std::max(0.0, var_int - cov * cov / var_rate));
    return mom;
}

double vasicek_exact_step(double r, const VasicekParams& p, double dt, double z) {
    const VasicekStepMoments mom = vasicek_step_moments(p, dt);
    return p.theta + (r - p.theta) * mom.decay + mom.sd_rate * z;
}

std::size_t min_steps(double x) {
    return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(50.0 * x)));
}

McEstimate mc_bond_price(const AffineModel& m, double r0, double x, std::size_t n_paths,
                         std::size_t n_steps, std::uint64_t seed) {
    const bool builtin = m.kind() == ModelKind::Vasicek || m.kind() == ModelKind::Cir ||
                         m.kind() == ModelKind::GammaOu;
    if (!builtin) {
        throw Error(ErrorCode::UnsupportedModel,
                    "Monte Carlo supports vasicek, cir and gamma_ou, not " + m.describe());
    }
    if (!m.contains(r0)) {
        throw Error(ErrorCode::OutOfStateSpace,
                    "r0 = " + detail::shortest(r0) + " is outside the state space");
    }
    if (!(x > 0.0) || !std::isfinite(x)) {
        throw Error(ErrorCode::InvalidArgument, "maturity must be positive and finite");
    }
    if (n_paths < kMinPaths) {
        throw Error(ErrorCode::InvalidArgument,
                    "need at least " + std::to_string(kMinPaths) + " paths");
    }
    if (n_steps < min_steps(x)) {
        throw Error(ErrorCode::InvalidArgument,
                    "need at least " + std::to_string(min_steps(x)) + " steps for maturity " +
                        detail::shortest(x));
    }

    const double dt = x / static_cast<double>(n_steps);
    Moments acc;
    std::size_t simulated = 0;

    if (const auto* g = std::get_if<GammaOuParams>(&m.params())) {
        for (std::size_t batch = 0; simulated < n_paths; ++batch) {
            StreamRng rng(seed, batch);
            const std::size_t n = std::min(kPathsPerBatch, n_paths - simulated);
            for (std::size_t i = 0; i < n; ++i) acc.add(std::exp(-gamma_ou_integral(r0, *g, x, rng)));
            simulated += n;
        }
        return {acc.mean(), std::sqrt(acc.variance() / static_cast<double>(acc.count())),
                simulated, n_steps, seed};
    }

    const std::size_t n_pairs = (n_paths + 1) / 2;
    const std::size_t pairs_per_batch = kPathsPerBatch / 2;
    std::size_t done = 0;
    for (std::size_t batch = 0; done < n_pairs; ++batch) {
        StreamRng rng(seed, batch);
        const std::size_t n = std::min(pairs_per_batch, n_pairs - done);
        for (std::size_t i = 0; i < n; ++i) {
            const auto* v = std::get_if<VasicekParams>(&m.params());
            const std::array<double, 2> ints =
                v ? vasicek_pair_integrals(r0, *v, dt, n_steps, rng)
                  : cir_pair_integrals(r0, std::get<CirParams>(m.params()), dt, n_steps, rng);
            acc.add(std::exp(-ints[0]));
            acc.add(std::exp(-ints[1]));
        }
        done += n;
    }
    return {acc.mean(), std::sqrt(acc.variance() / static_cast<double>(acc.count())),
            2 * n_pairs, n_steps, seed};
}

double affine_bond_price(const AffineModel& m, double r0, double x) {
    const std::array<double, 1> grid = {x};
    const ABCurve ab = solve_ab_on_grid(m, grid, 1e-12);
    return std::exp(ab.As.back() + r0 * ab.Bs.back());
}

bool McCheck::passed() const { return std::abs(z_score) <= 3.0; }

McCheck mc_check(const AffineModel& m, double r0, double x, std::size_t n_paths,
                 std::size_t n_steps, std::uint64_t seed) {
    const double reference = affine_bond_price(m, r0, x);
    McCheck out{mc_bond_price(m, r0, x, n_paths, n_steps, seed), reference, 0.0, 1};
    out.z_score = (out.estimate.price - reference) / out.estimate.std_error;
    if (!out.passed()) {
        out.estimate = mc_bond_price(m, r0, x, n_paths, n_steps, seed ^ kRetrySalt);
        out.z_score = (out.estimate.price - reference) / out.estimate.std_error;
        out.attempts = 2;
    }
    return out;
}

}  // namespace affcurve
