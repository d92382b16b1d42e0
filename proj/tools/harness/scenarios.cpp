#include "harness/scenarios.hpp"

#include <cmath>
#include <random>

namespace wq::harness {

lattice::LatticeParams lattice_params(const ScenarioConfig& c) {
    lattice::LatticeParams p;
    p.mass = c.lattice.mass;
    p.omega0 = c.lattice.omega0;
    p.kappa = c.lattice.kappa;
    p.spacing = c.lattice.spacing;
    p.sites = c.lattice.sites;
    p.validate();
    return p;
}

InitialLattice initial_lattice(const ScenarioConfig& c) {
    const lattice::LatticeParams p = lattice_params(c);
    const double w = c.lattice.packet_width;
    std::vector<double> profile(p.sites);
    for (std::size_t n = 0; n < p.sites; ++n) {
        const double d = static_cast<double>(n) - static_cast<double>(p.sites / 2);
        profile[n] = std::exp(-d * d / (2.0 * w * w));
    }
    InitialLattice out{lattice::LatticeState::zeros(p), 0.0};
    if (c.lattice.initial == "gaussian") {
        out.state.u = profile;
    } else if (c.lattice.initial == "traveling") {
        const lattice::TravelingWave tw = lattice::traveling_wave_init(profile, +1, p, c.lattice.band_fraction);
        out.state = tw.state;
        out.out_of_band_fraction = tw.out_of_band_fraction;
    } else {
        std::mt19937_64 rng(c.seed);
        std::normal_distribution<double> normal;
        double mu = 0.0, mv = 0.0;
        for (auto& u : out.state.u) mu += (u = normal(rng));
        for (auto& v : out.state.v) mv += (v = normal(rng));
        // a massless chain cannot hold energy in the k = 0 cell of its action wave
        const double n = static_cast<double>(p.sites);
        for (auto& u : out.state.u) u -= mu / n;
        for (auto& v : out.state.v) v -= mv / n;
    }
    return out;
}

double leapfrog_dt(const ScenarioConfig& c) { return c.lattice.dt_fraction / lattice_params(c).max_frequency(); }

wigner::GaussianEtaParams gaussian_params(const ScenarioConfig& c) {
    wigner::GaussianEtaParams g;
    g.k0 = c.wigner.k0;
    g.width = c.wigner.width;
    g.quanta = c.wigner.quanta;
    g.group_velocity = c.wigner.group_velocity.value_or(lattice_params(c).sound_speed());
    g.validate();
    return g;
}

em::MediumParams medium(const ScenarioConfig& c) {
    em::MediumParams m{c.field.epsilon, c.field.mu, c.unit_system().c};
    m.validate();
    return m;
}

em::PhotonActionWave random_photon_wave(const ScenarioConfig& c) {
    std::mt19937_64 rng(c.seed);
    std::uniform_int_distribution<int> index(-c.field.reach, c.field.reach);
    std::normal_distribution<double> normal;
    em::PhotonActionWave psi;
    psi.box_length = c.field.box_length;
    psi.medium = medium(c);
    psi.hbar = c.unit_system().hbar;
    while (static_cast<int>(psi.modes.size()) < c.field.modes) {
        const em::Index3 idx{index(rng), index(rng), index(rng)};
        if (idx == em::Index3{0, 0, 0}) continue;
        bool seen = false;
        for (const auto& m : psi.modes) seen = seen || m.index == idx;
        if (seen) continue;
        const auto basis = em::polarization_basis(psi.wavevector(idx));
        const em::cd a(normal(rng), normal(rng));
        const em::cd b(normal(rng), normal(rng));
        psi.modes.push_back({idx, a * basis[0].cast<em::cd>() + b * basis[1].cast<em::cd>()});
    }
    return em::normalize_photons(psi, c.field.quanta);
}

thermal::KineticParams kinetic_params(const ScenarioConfig& c) {
    thermal::KineticParams k;
    k.temperature = c.kinetics.temperature;
    k.gamma = c.kinetics.gamma;
    k.medium = medium(c);
    k.units = c.unit_system();
    k.validate();
    return k;
}

double dispersion_fault(const ScenarioConfig& c) { return c.fault_injection == "wrong_dispersion" ? 1.05 : 1.0; }

} // namespace wq::harness
