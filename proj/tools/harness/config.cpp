#include "harness/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "wavequanta/em_field.hpp"
#include "wavequanta/error.hpp"
#include "wavequanta/lattice.hpp"
#include "wavequanta/thermal.hpp"
#include "wavequanta/wigner.hpp"

namespace wq::harness {

namespace {

using nlohmann::json;

/// Reads the keys of one JSON object and rejects whatever is left over.
class ObjectReader {
  public:
    ObjectReader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
        if (!j_.is_object()) throw ParseError(where() + "must be a JSON object");
    }

    template <class T>
    void read(const char* key, T& field) {
        seen_.insert(key);
        const auto it = j_.find(key);
        if (it == j_.end()) return;
        field = convert<T>(*it, key);
    }

    template <class T>
    void read(const char* key, std::optional<T>& field) {
        seen_.insert(key);
        const auto it = j_.find(key);
        if (it == j_.end() || it->is_null()) return;
        field = convert<T>(*it, key);
    }

    const json* child(const char* key) {
        seen_.insert(key);
        const auto it = j_.find(key);
        return it == j_.end() ? nullptr : &*it;
    }

    std::string sub(const char* key) const { return path_.empty() ? key : path_ + "." + key; }

    void finish() const {
        for (const auto& [key, value] : j_.items())
            if (!seen_.count(key)) throw ValidationError("config: unknown key '" + sub(key.c_str()) + "'");
    }

  private:
    std::string where() const { return "config: " + (path_.empty() ? std::string("top level") : path_) + " "; }

    template <class T>
    T convert(const json& value, const char* key) const {
        if constexpr (std::is_same_v<T, bool>) {
            if (!value.is_boolean()) throw ParseError("config: '" + sub(key) + "' must be a boolean");
            return value.get<bool>();
        } else if constexpr (std::is_same_v<T, std::string>) {
            if (!value.is_string()) throw ParseError("config: '" + sub(key) + "' must be a string");
            return value.get<std::string>();
        } else if constexpr (std::is_same_v<T, std::vector<double>>) {
            if (!value.is_array()) throw ParseError("config: '" + sub(key) + "' must be an array of numbers");
            std::vector<double> out;
            for (const auto& v : value) {
                if (!v.is_number()) throw ParseError("config: '" + sub(key) + "' must be an array of numbers");
                out.push_back(v.get<double>());
            }
            return out;
        } else if constexpr (std::is_floating_point_v<T>) {
            if (!value.is_number()) throw ParseError("config: '" + sub(key) + "' must be a number");
            const double d = value.get<double>();
            if (!std::isfinite(d)) throw ValidationError("config: '" + sub(key) + "' must be finite");
            return d;
        } else {
            static_assert(std::is_integral_v<T>);
            if (!value.is_number_integer()) throw ParseError("config: '" + sub(key) + "' must be an integer");
            if constexpr (std::is_unsigned_v<T>) {
                if (value.is_number_unsigned()) return value.get<T>();
                throw ValidationError("config: '" + sub(key) + "' must be non-negative");
            } else {
                return value.get<T>();
            }
        }
    }

    const json& j_;
    std::string path_;
    std::set<std::string> seen_;
};

void read_block(const json* j, const char* name, LatticeBlock& b) {
    if (!j) return;
    ObjectReader r(*j, name);
    r.read("sites", b.sites);
    r.read("mass", b.mass);
    r.read("omega0", b.omega0);
    r.read("kappa", b.kappa);
    r.read("spacing", b.spacing);
    r.read("dt_fraction", b.dt_fraction);
    r.read("steps", b.steps);
    r.read("record_every", b.record_every);
    r.read("initial", b.initial);
    r.read("packet_width", b.packet_width);
    r.read("band_fraction", b.band_fraction);
    r.finish();
}

void read_block(const json* j, const char* name, WignerBlock& b) {
    if (!j) return;
    ObjectReader r(*j, name);
    r.read("k0", b.k0);
    r.read("width", b.width);
    r.read("quanta", b.quanta);
    r.read("group_velocity", b.group_velocity);
    r.read("times", b.times);
    r.read("write_csv", b.write_csv);
    r.finish();
}

void read_block(const json* j, const char* name, FieldBlock& b) {
    if (!j) return;
    ObjectReader r(*j, name);
    r.read("box_length", b.box_length);
    r.read("grid_points", b.grid_points);
    r.read("epsilon", b.epsilon);
    r.read("mu", b.mu);
    r.read("modes", b.modes);
    r.read("reach", b.reach);
    r.read("quanta", b.quanta);
    r.finish();
}

void read_block(const json* j, const char* name, HelicityBlock& b) {
    if (!j) return;
    ObjectReader r(*j, name);
    r.read("k", b.k);
    r.read("h0", b.h0);
    r.read("levels", b.levels);
    r.read("points", b.points);
    r.read("extent", b.extent);
    r.read("times", b.times);
    r.read("dt_per_h", b.dt_per_h);
    r.read("plane_index", b.plane_index);
    r.finish();
}

void read_block(const json* j, const char* name, KineticsBlock& b) {
    if (!j) return;
    ObjectReader r(*j, name);
    r.read("temperature", b.temperature);
    r.read("gamma", b.gamma);
    r.read("model", b.model);
    r.read("cells", b.cells);
    r.read("x_min", b.x_min);
    r.read("x_max", b.x_max);
    r.read("t_end_gamma", b.t_end_gamma);
    r.read("samples", b.samples);
    r.read("wavelength_points", b.wavelength_points);
    r.finish();
}

void require(bool ok, const std::string& message) {
    if (!ok) throw ValidationError("config: " + message);
}

} // namespace

void ScenarioConfig::validate() const {
    require(schema_version == kSchemaVersion, "schema_version must be " + std::to_string(kSchemaVersion));
    require(!scenario.empty(), "scenario must not be empty");
    (void)unit_system();
    require(suite == "lattice" || suite == "wigner" || suite == "field" || suite == "helicity" || suite == "kinetics",
            "suite must be one of lattice|wigner|field|helicity|kinetics");
    require(fault_injection == "none" || fault_injection == "wrong_dispersion",
            "fault_injection must be none|wrong_dispersion");

    lattice::LatticeParams lp{lattice.mass, lattice.omega0, lattice.kappa, lattice.spacing, lattice.sites};
    lp.validate();
    require(lattice.dt_fraction > 0.0 && lattice.dt_fraction < 2.0, "lattice.dt_fraction must be in (0, 2)");
    require(lattice.steps >= 1, "lattice.steps must be >= 1");
    require(lattice.record_every >= 1, "lattice.record_every must be >= 1");
    require(lattice.initial == "gaussian" || lattice.initial == "traveling" || lattice.initial == "random",
            "lattice.initial must be gaussian|traveling|random");
    require(lattice.packet_width > 0.0, "lattice.packet_width must be positive");
    require(lattice.band_fraction > 0.0 && lattice.band_fraction <= 1.0, "lattice.band_fraction must be in (0, 1]");

    wigner::GaussianEtaParams gp{wigner.k0, wigner.width, wigner.quanta, wigner.group_velocity.value_or(1.0)};
    gp.validate();
    require(!wigner.times.empty(), "wigner.times must not be empty");
    for (double t : wigner.times) require(t >= 0.0, "wigner.times must be non-negative");

    em::MediumParams{field.epsilon, field.mu, 1.0}.validate();
    require(field.box_length > 0.0, "field.box_length must be positive");
    require(field.grid_points >= 2 && field.grid_points % 2 == 0, "field.grid_points must be even and >= 2");
    require(field.modes >= 1, "field.modes must be >= 1");
    require(field.reach >= 1 && 2 * field.reach < static_cast<int>(field.grid_points),
            "field.reach must be >= 1 and below grid_points / 2");
    require(field.modes <= (2 * field.reach + 1) * (2 * field.reach + 1) * (2 * field.reach + 1) - 1,
            "field.modes exceeds the number of distinct indices within reach");
    require(field.quanta >= 1, "field.quanta must be >= 1");

    require(helicity.k != 0.0, "helicity.k must be nonzero");
    require(helicity.h0 > 0.0, "helicity.h0 must be positive");
    require(helicity.levels >= 2, "helicity.levels must be >= 2");
    require(helicity.points >= 1, "helicity.points must be >= 1");
    require(helicity.extent > 0.0, "helicity.extent must be positive");
    require(!helicity.times.empty(), "helicity.times must not be empty");
    require(helicity.dt_per_h > 0.0, "helicity.dt_per_h must be positive");
    require(helicity.plane_index >= 1, "helicity.plane_index must be >= 1");

    thermal::KineticParams kp;
    kp.temperature = kinetics.temperature;
    kp.gamma = kinetics.gamma;
    kp.units = unit_system();
    kp.validate();
    (void)thermal::source_model_from_string(kinetics.model);
    require(kinetics.cells >= 2, "kinetics.cells must be >= 2");
    require(kinetics.x_min > 0.0 && kinetics.x_max > kinetics.x_min, "kinetics needs 0 < x_min < x_max");
    require(kinetics.t_end_gamma > 0.0, "kinetics.t_end_gamma must be positive");
    require(kinetics.samples >= 1, "kinetics.samples must be >= 1");
    require(kinetics.wavelength_points >= 2, "kinetics.wavelength_points must be >= 2");
}

ScenarioConfig parse_config(std::string_view text) {
    json j;
    try {
        j = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("config: invalid JSON: ") + e.what());
    }
    ScenarioConfig c;
    ObjectReader r(j, "");
    if (!j.contains("schema_version")) throw ValidationError("config: schema_version is required");
    r.read("schema_version", c.schema_version);
    r.read("scenario", c.scenario);
    r.read("units", c.units);
    r.read("seed", c.seed);
    r.read("output_dir", c.output_dir);
    r.read("suite", c.suite);
    r.read("fault_injection", c.fault_injection);
    read_block(r.child("lattice"), "lattice", c.lattice);
    read_block(r.child("wigner"), "wigner", c.wigner);
    read_block(r.child("field"), "field", c.field);
    read_block(r.child("helicity"), "helicity", c.helicity);
    read_block(r.child("kinetics"), "kinetics", c.kinetics);
    r.finish();
    c.validate();
    return c;
}

ScenarioConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("config: cannot open '" + path + "'");
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str());
}

nlohmann::json effective_config(const ScenarioConfig& c) {
    json wigner = {{"k0", c.wigner.k0},       {"width", c.wigner.width}, {"quanta", c.wigner.quanta},
                   {"times", c.wigner.times}, {"write_csv", c.wigner.write_csv}};
    wigner["group_velocity"] = c.wigner.group_velocity ? json(*c.wigner.group_velocity) : json(nullptr);
    return {
        {"schema_version", c.schema_version},
        {"scenario", c.scenario},
        {"units", c.units},
        {"seed", c.seed},
        {"output_dir", c.output_dir},
        {"suite", c.suite},
        {"fault_injection", c.fault_injection},
        {"lattice",
         {{"sites", c.lattice.sites},
          {"mass", c.lattice.mass},
          {"omega0", c.lattice.omega0},
          {"kappa", c.lattice.kappa},
          {"spacing", c.lattice.spacing},
          {"dt_fraction", c.lattice.dt_fraction},
          {"steps", c.lattice.steps},
          {"record_every", c.lattice.record_every},
          {"initial", c.lattice.initial},
          {"packet_width", c.lattice.packet_width},
          {"band_fraction", c.lattice.band_fraction}}},
        {"wigner", wigner},
        {"field",
         {{"box_length", c.field.box_length},
          {"grid_points", c.field.grid_points},
          {"epsilon", c.field.epsilon},
          {"mu", c.field.mu},
          {"modes", c.field.modes},
          {"reach", c.field.reach},
          {"quanta", c.field.quanta}}},
        {"helicity",
         {{"k", c.helicity.k},
          {"h0", c.helicity.h0},
          {"levels", c.helicity.levels},
          {"points", c.helicity.points},
          {"extent", c.helicity.extent},
          {"times", c.helicity.times},
          {"dt_per_h", c.helicity.dt_per_h},
          {"plane_index", c.helicity.plane_index}}},
        {"kinetics",
         {{"temperature", c.kinetics.temperature},
          {"gamma", c.kinetics.gamma},
          {"model", c.kinetics.model},
          {"cells", c.kinetics.cells},
          {"x_min", c.kinetics.x_min},
          {"x_max", c.kinetics.x_max},
          {"t_end_gamma", c.kinetics.t_end_gamma},
          {"samples", c.kinetics.samples},
          {"wavelength_points", c.kinetics.wavelength_points}}},
    };
}

} // namespace wq::harness
