#pragma once

// Builders shared by the subcommands and the verify suites.

#include "harness/config.hpp"
#include "wavequanta/lattice.hpp"
#include "wavequanta/photon.hpp"
#include "wavequanta/thermal.hpp"
#include "wavequanta/wigner.hpp"

namespace wq::harness {

lattice::LatticeParams lattice_params(const ScenarioConfig& config);

struct InitialLattice {
    lattice::LatticeState state;
    /// Only meaningful for the traveling initial condition.
    double out_of_band_fraction = 0.0;
};

/// gaussian: standing packet u_n = exp(-(n - N/2)^2 / 2 w^2); traveling: the same profile
/// launched to the right; random: seeded normal deviates with the mean removed.
InitialLattice initial_lattice(const ScenarioConfig& config);

double leapfrog_dt(const ScenarioConfig& config);

wigner::GaussianEtaParams gaussian_params(const ScenarioConfig& config);

/// Medium of the field block with the speed of light of the unit preset.
em::MediumParams medium(const ScenarioConfig& config);

/// Seeded transverse mode set with config.field.modes distinct indices, normalized to field.quanta photons.
em::PhotonActionWave random_photon_wave(const ScenarioConfig& config);

thermal::KineticParams kinetic_params(const ScenarioConfig& config);

/// 1.05 under the wrong_dispersion fault, else 1.
double dispersion_fault(const ScenarioConfig& config);

} // namespace wq::harness
