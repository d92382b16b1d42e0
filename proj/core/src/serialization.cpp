#include "wavequanta/serialization.hpp"

#include "wavequanta/error.hpp"

namespace wq::em {

namespace {

nlohmann::json complex_vector(const CVec3& v) {
    auto out = nlohmann::json::array();
    for (int c = 0; c < 3; ++c) out.push_back({v[c].real(), v[c].imag()});
    return out;
}

CVec3 complex_vector(const nlohmann::json& j) {
    if (!j.is_array() || j.size() != 3) throw ValidationError("mode set: complex vector needs 3 entries");
    CVec3 out;
    for (int c = 0; c < 3; ++c) {
        const auto& z = j.at(static_cast<std::size_t>(c));
        if (!z.is_array() || z.size() != 2) throw ValidationError("mode set: complex entry must be [re, im]");
        out[c] = cd(z.at(0).get<double>(), z.at(1).get<double>());
    }
    return out;
}

nlohmann::json real_vector(const Vec3& v) { return {v[0], v[1], v[2]}; }

} // namespace

void to_json(nlohmann::json& j, const MediumParams& m) {
    j = {{"epsilon", m.epsilon}, {"mu", m.mu}, {"c", m.c}};
}

void from_json(const nlohmann::json& j, MediumParams& m) {
    MediumParams out;
    for (const auto& [key, value] : j.items()) {
        if (key == "epsilon") out.epsilon = value.get<double>();
        else if (key == "mu") out.mu = value.get<double>();
        else if (key == "c") out.c = value.get<double>();
        else throw ValidationError("medium: unknown key '" + key + "'");
    }
    out.validate();
    m = out;
}

void to_json(nlohmann::json& j, const PhotonModeSet& modes) {
    auto list = nlohmann::json::array();
    for (const auto& m : modes.modes) {
        const Vec3 k = modes.wavevector(m.index);
        const auto basis = polarization_basis(k);
        list.push_back({{"index", m.index},
                        {"k", real_vector(k)},
                        {"A", complex_vector(m.A)},
                        {"Adot", complex_vector(m.Adot)},
                        {"basis", {real_vector(basis[0]), real_vector(basis[1])}}});
    }
    j = {{"box_length", modes.box_length},
         {"medium", modes.medium},
         {"real_field", modes.real_field},
         {"modes", list}};
}

void from_json(const nlohmann::json& j, PhotonModeSet& modes) {
    PhotonModeSet out;
    out.box_length = j.at("box_length").get<double>();
    out.medium = j.at("medium").get<MediumParams>();
    out.real_field = j.value("real_field", true);
    for (const auto& m : j.at("modes")) {
        PhotonMode mode;
        mode.index = m.at("index").get<Index3>();
        mode.A = complex_vector(m.at("A"));
        mode.Adot = complex_vector(m.at("Adot"));
        out.modes.push_back(mode);
    }
    out.validate();
    modes = std::move(out);
}

void to_json(nlohmann::json& j, const PhotonActionWave& psi) {
    auto list = nlohmann::json::array();
    for (std::size_t i = 0; i < psi.modes.size(); ++i) {
        const auto& m = psi.modes[i];
        list.push_back({{"index", m.index},
                        {"k", real_vector(psi.wavevector(m.index))},
                        {"psi", complex_vector(m.psi)},
                        {"eta", psi.eta_linear(i)},
                        {"eta_helical", psi.eta_helical(i)}});
    }
    j = {{"box_length", psi.box_length}, {"medium", psi.medium}, {"hbar", psi.hbar}, {"modes", list}};
}

void from_json(const nlohmann::json& j, PhotonActionWave& psi) {
    PhotonActionWave out;
    out.box_length = j.at("box_length").get<double>();
    out.medium = j.at("medium").get<MediumParams>();
    out.hbar = j.at("hbar").get<double>();
    for (const auto& m : j.at("modes")) out.modes.push_back({m.at("index").get<Index3>(), complex_vector(m.at("psi"))});
    psi = std::move(out);
}

void to_json(nlohmann::json& j, const Residual& r) { j = {{"absolute", r.absolute}, {"relative", r.relative}}; }

} // namespace wq::em

namespace wq::helicity {

void to_json(nlohmann::json& j, const PdeResidual& r) {
    j = {{"evolution", r.evolution}, {"divergence", r.divergence}};
}

void to_json(nlohmann::json& j, const ConvergenceStudy& study) {
    auto levels = nlohmann::json::array();
    for (const auto& l : study.levels) levels.push_back({{"h", l.h}, {"dt", l.dt}, {"residual", l.residual}});
    j = {{"levels", levels},
         {"evolution_order", study.evolution_order},
         {"divergence_order", study.divergence_order},
         {"evolution_ratio", study.evolution_ratio},
         {"divergence_ratio", study.divergence_ratio}};
}

} // namespace wq::helicity
