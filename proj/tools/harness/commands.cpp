#include "harness/commands.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "harness/measurements.hpp"
#include "harness/scenarios.hpp"
#include "wavequanta/grid_io.hpp"
#include "wavequanta/serialization.hpp"

namespace wq::harness {

namespace {

using nlohmann::json;

constexpr std::array<std::pair<Command, std::string_view>, 6> kNames{{
    {Command::PhononSim, "phonon-sim"},
    {Command::Wigner, "wigner"},
    {Command::PhotonField, "photon-field"},
    {Command::HelicityCheck, "helicity-check"},
    {Command::ThermalRelax, "thermal-relax"},
    {Command::Verify, "verify"},
}};

void say(const Logger& log, std::string_view line) {
    if (log) log(line);
}

Outcome phonon_sim(const ScenarioConfig& c, const Logger& log) {
    say(log, "phonon-sim: integrating " + std::to_string(c.lattice.steps) + " leapfrog steps");
    const LatticeRun run = run_lattice(c);
    const lattice::LatticeParams p = lattice_params(c);

    io::CsvWriter energy({"t", "energy", "relative_drift"});
    for (std::size_t i = 0; i < run.times.size(); ++i)
        energy.row({run.times[i], run.energies[i], (run.energies[i] - run.initial_energy) / run.initial_energy});

    io::CsvWriter modes({"k", "omega", "group_velocity", "eta", "phase", "mode_energy"});
    const std::vector<double> eta = run.initial_psi.eta();
    const std::vector<double> phase = run.initial_psi.phase();
    const std::vector<double> h = lattice::mode_energy(run.initial_modes);
    for (std::size_t j = 0; j < p.sites; ++j) {
        const double k = p.wavenumber(j);
        modes.row({k, lattice::dispersion(k, p), lattice::group_velocity(k, p), eta[j], phase[j], h[j]});
    }

    Outcome out;
    out.report = {
        {"scenario", c.scenario},
        {"sites", p.sites},
        {"dt", run.dt},
        {"steps", c.lattice.steps},
        {"initial_energy", run.initial_energy},
        {"max_relative_drift", run.max_relative_drift},
        {"parseval_error", run.parseval_error},
        {"eta_invariance", run.eta_invariance},
        {"action_normalization", run.action_normalization},
        {"wigner_total_error", run.wigner_total_error},
        {"leapfrog_vs_exact", run.leapfrog_vs_exact},
        {"leapfrog_error_bound", run.leapfrog_error_bound},
        {"out_of_band_fraction", run.out_of_band_fraction},
    };
    out.artifacts.add("energy.csv", energy.str());
    out.artifacts.add("modes.csv", modes.str());
    out.artifacts.add_json("phonon_report.json", out.report);
    return out;
}

Outcome wigner_command(const ScenarioConfig& c, const Logger& log) {
    Outcome out;
    json snapshots = json::array();
    for (std::size_t i = 0; i < c.wigner.times.size(); ++i) {
        const double t = c.wigner.times[i];
        say(log, "wigner: evaluating t = " + io::format_double(t));
        const WignerComparison cmp = compare_gaussian(c, t);
        const std::string stem = "wigner_t" + std::to_string(i);
        if (c.wigner.write_csv) out.artifacts.add(stem + ".csv", io::wigner_csv(cmp.grid));
        out.artifacts.add(stem + ".wqg", io::encode_grid(io::to_grid_file(cmp.grid)));
        snapshots.push_back({
            {"t", t},
            {"max_normalized_error", cmp.max_error},
            {"peak", cmp.peak},
            {"peak_expected", cmp.peak_expected},
            {"peak_relative_error", std::abs(cmp.peak - cmp.peak_expected) / cmp.peak_expected},
            {"total", cmp.total},
            {"marginal_error", cmp.marginal_error},
            {"imag_residual", cmp.grid.imag_residual},
        });
    }
    const wigner::GaussianEtaParams gp = gaussian_params(c);
    out.report = {
        {"scenario", c.scenario},
        {"sites", c.lattice.sites},
        {"k0", gp.k0},
        {"width", gp.width},
        {"quanta", gp.quanta},
        {"group_velocity", gp.group_velocity},
        {"snapshots", snapshots},
    };
    out.artifacts.add_json("wigner_report.json", out.report);
    return out;
}

Outcome photon_field(const ScenarioConfig& c, const Logger& log) {
    say(log, "photon-field: building " + std::to_string(c.field.modes) + " random transverse modes");
    const em::PhotonActionWave psi = random_photon_wave(c);
    const em::PhotonModeSet modes = em::modes_from_psi(psi);
    const em::Grid3 grid = em::Grid3::cube(c.field.grid_points, c.field.box_length);
    const FieldChecks fc = run_field(c);

    Outcome out;
    out.report = {
        {"scenario", c.scenario},
        {"energy_x_space", fc.energy_x},
        {"energy_k_space", fc.energy_k},
        {"energy_phase_space", fc.energy_phase},
        {"energy_spread", fc.energy_spread},
        {"photon_number", fc.photon_number},
        {"wigner_total", fc.wigner_total},
        {"transversality_violation", psi.transversality_violation()},
    };
    out.artifacts.add_json("modes.json", modes);
    out.artifacts.add_json("action_wave.json", psi);
    out.artifacts.add("field_F.wqg", io::encode_grid(io::to_grid_file(em::snapshot_from_modes(modes, grid).F, psi.hbar)));
    out.artifacts.add_json("photon_report.json", out.report);
    return out;
}

Outcome helicity_check(const ScenarioConfig& c, const Logger& log) {
    say(log, "helicity-check: convergence study over " + std::to_string(c.helicity.levels) + " levels");
    const HelicityChecks hc = run_helicity(c);
    io::CsvWriter conv({"h", "dt", "evolution_residual", "divergence_residual"});
    for (const auto& level : hc.study.levels)
        conv.row({level.h, level.dt, level.residual.evolution, level.residual.divergence});

    Outcome out;
    out.report = {
        {"scenario", c.scenario},
        {"convergence", hc.study},
        {"plane_residual", hc.plane},
        {"rs_residual", hc.rs_residual},
        {"eigencheck", hc.eigencheck},
    };
    out.artifacts.add("convergence.csv", conv.str());
    out.artifacts.add_json("helicity_report.json", out.report);
    return out;
}

Outcome thermal_relax(const ScenarioConfig& c, const Logger& log) {
    say(log, "thermal-relax: relaxing " + std::to_string(c.kinetics.cells) + " momentum cells");
    const KineticsChecks kc = run_kinetics(c);
    const thermal::KineticParams kp = kinetic_params(c);

    io::CsvWriter relax({"t", "max_distance"});
    for (std::size_t i = 0; i < kc.relaxation.times.size(); ++i)
        relax.row({kc.relaxation.times[i], kc.relaxation.max_distance[i]});

    io::CsvWriter dist({"p", "x", "f_final", "f_equilibrium", "distance"});
    for (std::size_t i = 0; i < kc.p.size(); ++i) {
        const double q = kc.p[i];
        dist.row({q, kp.reduced_energy(q), kc.relaxation.final_state.f[i], thermal::equilibrium_f(kc.model, q, kp),
                  kc.relaxation.final_distance[i]});
    }

    // log-spaced wavelengths over two decades around the peak
    io::CsvWriter spectrum({"lambda", "U_lambda"});
    const std::size_t n = c.kinetics.wavelength_points;
    for (std::size_t i = 0; i < n; ++i) {
        const double s = n > 1 ? static_cast<double>(i) / static_cast<double>(n - 1) : 0.5;
        const double lambda = kc.lambda_m * std::pow(10.0, 2.0 * s - 1.0);
        spectrum.row({lambda, thermal::spectral_energy_density(c.kinetics.temperature, lambda, kp)});
    }

    Outcome out;
    out.report = {
        {"scenario", c.scenario},
        {"model", std::string(thermal::to_string(kc.model))},
        {"temperature", c.kinetics.temperature},
        {"gamma", c.kinetics.gamma},
        {"t_end", kc.relaxation.times.back()},
        {"residual_norm", kc.residual_norm},
        {"monotone", kc.relaxation.monotone},
        {"converged", kc.residual_norm < 1e-10},
        {"substitution_residual", kc.substitution_residual},
        {"lambda_m", kc.lambda_m},
        {"lambda_m_p_T_over_hbar", kc.product},
        {"photon_count", kc.photon_count},
        {"photon_count_closed_form", kc.photon_count_closed},
    };
    out.artifacts.add("relaxation.csv", relax.str());
    out.artifacts.add("distribution.csv", dist.str());
    out.artifacts.add("spectrum.csv", spectrum.str());
    out.artifacts.add_json("equilibrium_report.json", out.report);
    return out;
}

Outcome verify(const ScenarioConfig& c, const Logger& log) {
    Outcome out;
    out.checks = run_suite(c, log);
    json checks = json::array();
    json failed = json::array();
    for (const Check& ch : out.checks) {
        checks.push_back(to_json(ch));
        if (!ch.passed) failed.push_back(ch.name);
    }
    out.report = {
        {"scenario", c.scenario},
        {"suite", c.suite},
        {"fault_injection", c.fault_injection},
        {"passed", failed.empty()},
        {"failed", failed},
        {"checks", checks},
    };
    out.exit_status = failed.empty() ? exit_code::ok : exit_code::check_failed;
    out.artifacts.add_json("verify_report.json", out.report);
    return out;
}

} // namespace

std::string_view to_string(Command command) {
    for (const auto& [c, name] : kNames)
        if (c == command) return name;
    return "unknown";
}

std::optional<Command> command_from_string(std::string_view name) {
    for (const auto& [c, n] : kNames)
        if (n == name) return c;
    return std::nullopt;
}

const std::vector<std::string>& command_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto& entry : kNames) v.emplace_back(entry.second);
        return v;
    }();
    return names;
}

json to_json(const Check& check) {
    json j{{"name", check.name}, {"value", check.value}, {"relation", check.relation}, {"threshold", check.threshold}};
    if (check.relation == "in") j["upper"] = check.upper;
    j["passed"] = check.passed;
    return j;
}

Outcome run_command(Command command, const ScenarioConfig& config, const Logger& log) {
    config.validate();
    Outcome out;
    switch (command) {
    case Command::PhononSim: out = phonon_sim(config, log); break;
    case Command::Wigner: out = wigner_command(config, log); break;
    case Command::PhotonField: out = photon_field(config, log); break;
    case Command::HelicityCheck: out = helicity_check(config, log); break;
    case Command::ThermalRelax: out = thermal_relax(config, log); break;
    case Command::Verify: out = verify(config, log); break;
    }
    out.artifacts.add_json("effective_config.json", effective_config(config));
    return out;
}

} // namespace wq::harness
