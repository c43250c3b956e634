#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "affcurve/classifier.hpp"

namespace affcurve {

enum class Sign { Negative = -1, Positive = 1 };

/// Signs taken by a sampled function between its zeros, after dropping
/// samples with |v| < tol * max|v| (the dead zones).
struct SignSequence {
    std::vector<Sign> signs;
    /// Estimated zero between consecutive runs; size() == signs.size() - 1.
    std::vector<double> crossings;
    /// Maximal runs of dead samples as [first x, last x].
    std::vector<std::pair<double, double>> dead_zones;
};

inline constexpr double kDefaultDeadZoneTol = 1e-9;

/// Throws Error(InvalidArgument) for fewer than 16 points or a grid that is
/// not strictly increasing, Error(AllDead) when every sample is dead.
SignSequence sign_sequence(std::span<const double> xs, std::span<const double> vs,
                           double tol = kDefaultDeadZoneTol);

/// Slope estimates on a non-uniform grid: centered differences inside,
/// one-sided at the ends.
std::vector<double> finite_difference_slopes(std::span<const double> xs,
                                             std::span<const double> vs);

/// Numerical shape of a sampled curve from the sign sequence of its slope:
/// (+) normal, (-) inverse, (+-) humped, anything else indeterminate.
/// Needs at least 400 points.
ShapeClass classify_numeric(const Curve& curve, double tol = kDefaultDeadZoneTol);

/// Deterministic random admissible model. `kind` restricts the draw to
/// vasicek, cir or gamma_ou; otherwise the kind is drawn uniformly. Draw
/// attempt i uses stream i of `seed`; draws failing validation are retried
/// up to 100 times, then Error(GenerationExhausted).
AffineModel random_model(std::uint64_t seed, std::optional<ModelKind> kind = std::nullopt);

struct VerifyOptions {
    std::size_t n_r = 20;
    /// Rates within exclusion * max(1, |threshold|) of a threshold are skipped.
    double exclusion = 1e-4;
    std::size_t grid_points = 2000;
    double grid_start = 1e-7;
    double tol = 1e-12;
    double dead_zone_tol = kDefaultDeadZoneTol;
    /// Jitters r inside each stratum when set; midpoints otherwise.
    std::optional<std::uint64_t> jitter_seed;
};

struct VerificationRow {
    double r;
    Shape theorem_yield;
    Shape oracle_yield;
    Shape theorem_forward;
    Shape oracle_forward;
    std::optional<double> yield_hump;
    std::optional<double> forward_hump;
    bool agree;
};

struct VerificationReport {
    std::string model;
    std::vector<VerificationRow> rows;
    std::vector<double> skipped;

    std::size_t disagreements() const;
    bool passed() const { return disagreements() == 0; }
};

/// Compares theorem labels with oracle labels from ODE-generated curves on
/// a geometric grid up to max(30, 30/lambda), for rates covering every
/// theorem region (below b_fw_norm, between the thresholds, above b_inv)
/// that the state space allows.
VerificationReport verify_model(const AffineModel& m, const VerifyOptions& opts = {});

/// Throws Error(Disagreement) naming the first failing row.
void require_agreement(const VerificationReport& report);

/// One JSON object per row.
void write_json_lines(std::ostream& os, const VerificationReport& report);

}  // namespace affcurve
