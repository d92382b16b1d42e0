#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "wavequanta/units.hpp"

namespace wq::harness {

inline constexpr int kSchemaVersion = 1;

/// Malformed config text or a value of the wrong JSON type.
class ParseError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct LatticeBlock {
    std::size_t sites = 256;
    double mass = 1.0;
    double omega0 = 0.0;
    double kappa = 1.0;
    double spacing = 1.0;
    /// leapfrog dt as a fraction of 1 / omega_max
    double dt_fraction = 0.01;
    std::size_t steps = 10000;
    std::size_t record_every = 100;
    /// "gaussian", "traveling" or "random"
    std::string initial = "gaussian";
    double packet_width = 10.0;
    double band_fraction = 0.5;
    bool operator==(const LatticeBlock&) const = default;
};

struct WignerBlock {
    double k0 = 0.5;
    double width = 100.0;
    int quanta = 1;
    /// group velocity of the linear dispersion; omitted means the lattice sound speed
    std::optional<double> group_velocity;
    std::vector<double> times{0.0, 20.0};
    bool write_csv = true;
    bool operator==(const WignerBlock&) const = default;
};

struct FieldBlock {
    double box_length = 1.0;
    std::size_t grid_points = 16;
    double epsilon = 1.0;
    double mu = 1.0;
    int modes = 8;
    int reach = 3;
    int quanta = 1;
    bool operator==(const FieldBlock&) const = default;
};

struct HelicityBlock {
    double k = 1.3;
    double h0 = 0.1;
    int levels = 4;
    int points = 20;
    double extent = 1.0;
    std::vector<double> times{0.0, 0.4, 1.1};
    double dt_per_h = 1.0;
    /// plane-wave index along z for the Riemann-Silberstein check
    int plane_index = 2;
    bool operator==(const HelicityBlock&) const = default;
};

struct KineticsBlock {
    double temperature = 1.0;
    double gamma = 1.0;
    std::string model = "wien-stimulated";
    std::size_t cells = 512;
    double x_min = 1e-3;
    double x_max = 30.0;
    /// t_end in units of 1 / gamma
    double t_end_gamma = 30.0;
    std::size_t samples = 100;
    std::size_t wavelength_points = 200;
    bool operator==(const KineticsBlock&) const = default;
};

struct ScenarioConfig {
    int schema_version = kSchemaVersion;
    std::string scenario = "default";
    std::string units = "natural";
    std::uint64_t seed = 1;
    std::string output_dir = "out";
    /// module suite run by `verify`: lattice, wigner, field, helicity or kinetics
    std::string suite = "lattice";
    /// "none" or "wrong_dispersion"
    std::string fault_injection = "none";
    LatticeBlock lattice;
    WignerBlock wigner;
    FieldBlock field;
    HelicityBlock helicity;
    KineticsBlock kinetics;

    UnitSystem unit_system() const { return UnitSystem::from_name(units); }
    /// Checks every block against the owning module's invariants; throws ValidationError.
    void validate() const;
    bool operator==(const ScenarioConfig&) const = default;
};

/// Throws ParseError for bad JSON or wrong types and ValidationError for unknown keys,
/// schema mismatches and physically invalid values.
ScenarioConfig parse_config(std::string_view text);
ScenarioConfig load_config(const std::string& path);

/// Every field with defaults filled in; parse_config(dump) gives back an equal value.
nlohmann::json effective_config(const ScenarioConfig& config);

} // namespace wq::harness
