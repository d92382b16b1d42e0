#pragma once

#include <nlohmann/json.hpp>

#include "wavequanta/em_field.hpp"
#include "wavequanta/helicity.hpp"
#include "wavequanta/photon.hpp"

namespace wq::em {

void to_json(nlohmann::json& j, const MediumParams& m);
void from_json(const nlohmann::json& j, MediumParams& m);

/// {"box_length", "medium", "real_field", "modes": [{"index", "k", "A", "Adot", "basis"}]};
/// complex vectors are [[re, im] x 3]. "k" and "basis" are written for readers and ignored on input.
void to_json(nlohmann::json& j, const PhotonModeSet& modes);
void from_json(const nlohmann::json& j, PhotonModeSet& modes);

void to_json(nlohmann::json& j, const PhotonActionWave& psi);
void from_json(const nlohmann::json& j, PhotonActionWave& psi);

void to_json(nlohmann::json& j, const Residual& r);

} // namespace wq::em

namespace wq::helicity {

void to_json(nlohmann::json& j, const PdeResidual& r);
/// Stencil sizes, residuals per level and the observed orders.
void to_json(nlohmann::json& j, const ConvergenceStudy& study);

} // namespace wq::helicity
