#pragma once

// Numbers computed from a scenario, shared by the subcommand reports and the verify suites.
// Every function honours config.fault_injection where a dispersion relation is involved.

#include <string>
#include <vector>

#include "harness/config.hpp"
#include "wavequanta/helicity.hpp"
#include "wavequanta/lattice.hpp"
#include "wavequanta/thermal.hpp"
#include "wavequanta/wigner.hpp"

namespace wq::harness {

struct LatticeRun {
    double dt = 0.0;
    std::vector<double> times;
    std::vector<double> energies;
    double initial_energy = 0.0;
    double max_relative_drift = 0.0;
    /// |sum dk (|u'|^2 + |v'|^2) - sum (u^2 + v^2)| relative to the site sum
    double parseval_error = 0.0;
    /// max |eta(T) - eta(0)| / max eta(0) under exact evolution to the final time
    double eta_invariance = 0.0;
    /// |A_D - N h| / (N h) after normalizing to wigner.quanta
    double action_normalization = 0.0;
    /// |integral of f_N - N| / N for the normalized wave
    double wigner_total_error = 0.0;
    /// rms(leapfrog - exact) / rms(exact) at the final time, exact built from the dispersion relation
    double leapfrog_vs_exact = 0.0;
    /// leading leapfrog phase error omega_max^3 dt^2 T / 24, doubled
    double leapfrog_error_bound = 0.0;
    double out_of_band_fraction = 0.0;
    lattice::ModeSpectrum initial_modes;
    lattice::ActionWave initial_psi;
    lattice::LatticeState final_state;
};

LatticeRun run_lattice(const ScenarioConfig& config);

struct WignerComparison {
    double t = 0.0;
    wigner::WignerGrid grid;
    /// max |f - f_closed| / (N / pi hbar) over the half-ring around the packet centre
    double max_error = 0.0;
    double peak = 0.0;
    double peak_expected = 0.0;
    double total = 0.0;
    /// max |x_marginal - |psi(x)|^2 / hbar| relative to its maximum
    double marginal_error = 0.0;
};

/// Gaussian action wave on the configured lattice, evolved with linear dispersion to time t.
WignerComparison compare_gaussian(const ScenarioConfig& config, double t);

struct FieldChecks {
    double energy_x = 0.0;
    double energy_k = 0.0;
    double energy_phase = 0.0;
    /// (max - min) / energy_k over the three routes
    double energy_spread = 0.0;
    double photon_number = 0.0;
    double wigner_total = 0.0;
    /// relative residual of dF/dt + i v curl F for a sampled circular wave
    double rs_residual = 0.0;
    /// max |w_F - w_direct| and |Y_F - Y_direct| relative to the largest w
    double dual_error = 0.0;
    /// max |A - sqrt(mu) Re U| relative to A_perp at 100 seeded points
    double circular_identity = 0.0;
    double basis_completeness = 0.0;
    double ohmic_balance = 0.0;
};

FieldChecks run_field(const ScenarioConfig& config);

struct HelicityChecks {
    helicity::ConvergenceStudy study;
    helicity::PdeResidual plane;
    double rs_residual = 0.0;
    /// largest eigencheck over both helicities of a seeded wavevector
    double eigencheck = 0.0;
};

HelicityChecks run_helicity(const ScenarioConfig& config);

struct KineticsChecks {
    thermal::SourceModel model = thermal::SourceModel::WienStimulated;
    thermal::RelaxationReport relaxation;
    std::vector<double> p;
    double residual_norm = 0.0;
    double substitution_residual = 0.0;
    double lambda_m = 0.0;
    double product = 0.0;
    /// 2 pi / x* with x* the root of x = 5 (1 - exp(-x))
    double product_root = 0.0;
    double photon_count = 0.0;
    /// 16 pi zeta(3) (lambda_m k_B T / h v)^3
    double photon_count_closed = 0.0;
    /// largest pointwise violation of f_W <= f_P <= f_RJ, relative to f_P
    double bound_violation = 0.0;
    /// max relative deviation of measured decay rates from gamma and gamma (1 - exp(-x))
    double rate_error = 0.0;
    /// |N(t) / N(0) - exp(-gamma t)| under damping only
    double damping_error = 0.0;
};

KineticsChecks run_kinetics(const ScenarioConfig& config);

} // namespace wq::harness
