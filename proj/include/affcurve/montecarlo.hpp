#pragma once

#include <cstdint>

#include "affcurve/affine_model.hpp"

namespace affcurve {

struct McEstimate {
    double price;
    double std_error;
    std::size_t n_paths;
    std::size_t n_steps;
    std::uint64_t seed;
};

inline constexpr std::size_t kMinPaths = 1000;
inline constexpr std::size_t kPathsPerBatch = 10000;

/// Monte Carlo estimate of E[exp(-integral_0^x r_s ds)] for a built-in model.
///
/// Vasicek samples the exact joint Gaussian transition of (r, integral of r)
/// over each step. CIR uses full-truncation Euler with the trapezoid rule on
/// max(r, 0). Both use antithetic pairs (n_paths is rounded up to even).
/// The gamma-OU model is simulated
/// exactly: jump times and sizes are drawn per path and the integral is the
/// closed form of the piecewise exponential decay, so n_steps is only
/// checked, not used.
///
/// std_error is the sample standard deviation of the individual discount
/// factors over sqrt(n_paths), antithetic partners included.
/// Paths are generated in batches of kPathsPerBatch, batch i drawing from
/// stream i of `seed`, and reduced in batch order.
McEstimate mc_bond_price(const AffineModel& m, double r0, double x, std::size_t n_paths,
                         std::size_t n_steps, std::uint64_t seed);

/// Smallest admissible step count for maturity x (50 per year, at least 1).
std::size_t min_steps(double x);

/// exp(A(x) + r0 B(x)) from the Riccati solver.
double affine_bond_price(const AffineModel& m, double r0, double x);

struct McCheck {
    McEstimate estimate;
    double affine_price;
    double z_score;
    int attempts;

    bool passed() const;
};

/// mc_bond_price against the affine price; one retry on a fresh seed when
/// |z| > 3.
McCheck mc_check(const AffineModel& m, double r0, double x, std::size_t n_paths,
                 std::size_t n_steps, std::uint64_t seed);

/// One full-truncation Euler step of the CIR short rate. Only max(r, 0)
/// enters drift and diffusion, so the square root never sees a negative.
double cir_full_truncation_step(double r, const CirParams& p, double dt, double z);

/// Moments of the Vasicek step (r_t, r_{t+dt}, integral over the step):
/// r_{t+dt} = theta + (r_t - theta) decay + sd_rate Z1 and
/// integral = theta dt + (r_t - theta) integral_weight
///            + integral_on_rate Z1 + integral_residual_sd Z2.
struct VasicekStepMoments {
    double decay;
    double integral_weight;
    double sd_rate;
    double integral_on_rate;
    double integral_residual_sd;
};

VasicekStepMoments vasicek_step_moments(const VasicekParams& p, double dt);

/// Exact transition of the Vasicek short rate over dt.
double vasicek_exact_step(double r, const VasicekParams& p, double dt, double z);

}  // namespace affcurve
