#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "affcurve/affine_model.hpp"
#include "affcurve/classifier.hpp"
#include "affcurve/montecarlo.hpp"
#include "affcurve/thresholds.hpp"

namespace affcurve {

/// Builds a model from {"kind": ..., "params": {...}}. Kinds are vasicek,
/// cir, gamma_ou and quadratic; parameter names match the param structs.
/// Unknown or missing keys throw Error(InvalidArgument).
AffineModel model_from_json(const nlohmann::json& spec);
AffineModel load_model_spec(const std::filesystem::path& path);

nlohmann::ordered_json model_to_json(const AffineModel& m);

/// {"c", "lambda", "b_asymp", "b_fw_norm", "b_y_norm", "b_inv"}; b_inv is
/// the string "inf" when infinite.
nlohmann::ordered_json thresholds_to_json(const Thresholds& th);

/// {"r", "yield_shape", "forward_shape", "thresholds"}.
nlohmann::ordered_json classification_to_json(const Thresholds& th, double r,
                                              const ShapeClass& yield, const ShapeClass& forward);

/// {"price", "std_error", "affine_price", "z_score"}.
nlohmann::ordered_json mc_check_to_json(const McCheck& check);

}  // namespace affcurve
