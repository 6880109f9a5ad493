// SPDX-License-Identifier: Apache-2.0

#ifndef ZGP_MODEL_IO_HPP
#define ZGP_MODEL_IO_HPP

#include <string>

#include "zgp/linear_fit.hpp"

namespace zgp {

/// Serializes a fitted model to a self-contained JSON document. Weights,
/// scaler parameters and ephemeral constants are stored as hexadecimal
/// float literals and the fusion weights as their exact 32-bit fractions,
/// so a reloaded model predicts bit-for-bit identically.
void save_model(const FittedModel& model, const std::string& path);
std::string model_to_json(const FittedModel& model);

/// Inverse of save_model. Throws std::runtime_error on malformed input.
FittedModel load_model(const std::string& path);
FittedModel model_from_json(const std::string& text);

} // namespace zgp

#endif
