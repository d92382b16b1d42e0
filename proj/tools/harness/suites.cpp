#include <cmath>

#include "harness/commands.hpp"
#include "harness/measurements.hpp"
#include "harness/scenarios.hpp"
#include "wavequanta/error.hpp"
#include "wavequanta/grid_io.hpp"

namespace wq::harness {

namespace {

// NaN values fail every relation.
Check at_most(std::string name, double value, double threshold) {
    return {std::move(name), value, threshold, "<=", 0.0, value <= threshold};
}

Check at_least(std::string name, double value, double threshold) {
    return {std::move(name), value, threshold, ">=", 0.0, value >= threshold};
}

Check within(std::string name, double value, double lo, double hi) {
    return {std::move(name), value, lo, "in", hi, value >= lo && value <= hi};
}

double relative(double value, double expected) { return std::abs(value - expected) / std::abs(expected); }

std::vector<Check> lattice_suite(const ScenarioConfig& c) {
    const LatticeRun run = run_lattice(c);
    return {
        at_most("energy_drift", run.max_relative_drift, 1e-6),
        at_most("parseval", run.parseval_error, 1e-12),
        at_most("eta_invariance", run.eta_invariance, 1e-12),
        at_most("action_normalization", run.action_normalization, 1e-12),
        at_most("wigner_total", run.wigner_total_error, 1e-8),
        at_most("dispersion_consistency", run.leapfrog_vs_exact, run.leapfrog_error_bound),
    };
}

std::vector<Check> wigner_suite(const ScenarioConfig& c) {
    std::vector<Check> out;
    const int quanta = c.wigner.quanta;
    for (double t : c.wigner.times) {
        const WignerComparison cmp = compare_gaussian(c, t);
        const std::string at = "[t=" + io::format_double(t) + "]";
        out.push_back(at_most("closed_form" + at, cmp.max_error, 1e-6));
        out.push_back(at_most("peak" + at, relative(cmp.peak, cmp.peak_expected), 1e-6));
        out.push_back(at_most("total" + at, relative(cmp.total, quanta), 1e-8));
        out.push_back(at_most("x_marginal" + at, cmp.marginal_error, 1e-10));
        out.push_back(at_most("imag_residual" + at, cmp.grid.imag_residual, 1e-10));
    }
    return out;
}

std::vector<Check> field_suite(const ScenarioConfig& c) {
    const FieldChecks fc = run_field(c);
    const double quanta = c.field.quanta;
    return {
        at_most("rs_evolution", fc.rs_residual, 1e-6),
        at_most("energy_routes", fc.energy_spread, 1e-6),
        at_most("photon_number", relative(fc.photon_number, quanta), 1e-12),
        at_most("wigner_total", relative(fc.wigner_total, quanta), 1e-8),
        at_most("energy_flux_dual", fc.dual_error, 1e-12),
        at_most("circular_identity", fc.circular_identity, 1e-12),
        at_most("basis_completeness", fc.basis_completeness, 1e-13),
        at_most("ohmic_balance", fc.ohmic_balance, 1e-6),
    };
}

std::vector<Check> helicity_suite(const ScenarioConfig& c) {
    const HelicityChecks hc = run_helicity(c);
    return {
        at_least("evolution_order", hc.study.evolution_order, 1.9),
        at_least("divergence_order", hc.study.divergence_order, 1.9),
        at_most("plane_evolution", hc.plane.evolution, 1e-5),
        at_most("plane_divergence", hc.plane.divergence, 1e-12),
        at_most("rs_evolution", hc.rs_residual, 1e-6),
        at_most("helicity_eigencheck", hc.eigencheck, 1e-12),
    };
}

std::vector<Check> kinetics_suite(const ScenarioConfig& c) {
    const KineticsChecks kc = run_kinetics(c);
    return {
        within("wien_product", kc.product, 1.25, 1.27),
        at_most("wien_product_vs_root", std::abs(kc.product - kc.product_root), 1e-4),
        within("photon_count", kc.photon_count, 0.47, 0.50),
        at_most("photon_count_vs_series", relative(kc.photon_count, kc.photon_count_closed), 1e-6),
        at_most("planck_substitution", kc.substitution_residual, 1e-13),
        at_most("equilibrium_ordering", kc.bound_violation, 0.0),
        at_most("decay_rates", kc.rate_error, 1e-8),
        at_most("damping_only", kc.damping_error, 1e-10),
        at_most("planck_relaxation", kc.residual_norm, 1e-10),
    };
}

} // namespace

std::vector<Check> run_suite(const ScenarioConfig& c, const Logger& log) {
    std::vector<Check> checks;
    if (c.suite == "lattice") checks = lattice_suite(c);
    else if (c.suite == "wigner") checks = wigner_suite(c);
    else if (c.suite == "field") checks = field_suite(c);
    else if (c.suite == "helicity") checks = helicity_suite(c);
    else if (c.suite == "kinetics") checks = kinetics_suite(c);
    else throw ValidationError("unknown suite '" + c.suite + "'");
    if (log)
        for (const Check& ch : checks)
            log((ch.passed ? "PASS " : "FAIL ") + ch.name + " = " + io::format_double(ch.value));
    return checks;
}

} // namespace wq::harness
