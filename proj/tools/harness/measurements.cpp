#include "harness/measurements.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <boost/math/special_functions/zeta.hpp>
#include <boost/math/tools/roots.hpp>

#include "harness/scenarios.hpp"
#include "wavequanta/error.hpp"
#include "wavequanta/photon.hpp"

namespace wq::harness {

namespace {

constexpr double kPi = std::numbers::pi;

/// sum (a - b)^2; adds sum b^2 to norm.
double squared_difference(std::span<const double> a, std::span<const double> b, double& norm) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        d += (a[i] - b[i]) * (a[i] - b[i]);
        norm += b[i] * b[i];
    }
    return d;
}

std::vector<em::Vec3> sample_points(std::uint64_t seed, int count, double extent) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coord(-extent, extent);
    std::vector<em::Vec3> out;
    for (int i = 0; i < count; ++i) {
        const double x = coord(rng), y = coord(rng), z = coord(rng);
        out.emplace_back(x, y, z);
    }
    return out;
}

} // namespace

LatticeRun run_lattice(const ScenarioConfig& c) {
    const lattice::LatticeParams p = lattice_params(c);
    const double hbar = c.unit_system().hbar;
    const InitialLattice init = initial_lattice(c);
    LatticeRun run;
    run.dt = leapfrog_dt(c);
    run.out_of_band_fraction = init.out_of_band_fraction;

    lattice::LatticeState s = init.state;
    run.initial_energy = lattice::hamiltonian_energy(s, p);
    if (!(run.initial_energy > 0.0)) throw NumericError("phonon-sim: initial state carries no energy");
    run.times.push_back(s.t);
    run.energies.push_back(run.initial_energy);
    for (std::size_t done = 0; done < c.lattice.steps;) {
        const std::size_t n = std::min(c.lattice.record_every, c.lattice.steps - done);
        lattice::leapfrog_advance(s, p, run.dt, n);
        done += n;
        const double e = lattice::hamiltonian_energy(s, p);
        if (!std::isfinite(e)) throw NumericError("phonon-sim: energy became non-finite");
        run.times.push_back(s.t);
        run.energies.push_back(e);
        run.max_relative_drift = std::max(run.max_relative_drift, std::abs(e - run.initial_energy) / run.initial_energy);
    }
    run.final_state = s;

    run.initial_modes = lattice::dft_to_modes(init.state, p);
    const double dk = p.wavenumber_step();
    double mode_sum = 0.0, site_sum = 0.0;
    for (std::size_t j = 0; j < p.sites; ++j) {
        mode_sum += dk * (std::norm(run.initial_modes.uk[j]) + std::norm(run.initial_modes.vk[j]));
        site_sum += init.state.u[j] * init.state.u[j] + init.state.v[j] * init.state.v[j];
    }
    run.parseval_error = std::abs(mode_sum - site_sum) / site_sum;

    const double t_end = s.t;
    run.initial_psi = lattice::psi_from_modes(run.initial_modes, hbar);
    const lattice::ActionWave psi_end = lattice::psi_from_modes(lattice::evolve_modes_exact(run.initial_modes, t_end), hbar);
    const std::vector<double> eta0 = run.initial_psi.eta();
    const std::vector<double> eta1 = psi_end.eta();
    double eta_max = 0.0, eta_diff = 0.0;
    for (std::size_t j = 0; j < eta0.size(); ++j) {
        eta_max = std::max(eta_max, eta0[j]);
        eta_diff = std::max(eta_diff, std::abs(eta1[j] - eta0[j]));
    }
    run.eta_invariance = eta_diff / eta_max;

    const int quanta = c.wigner.quanta;
    const lattice::ActionWave normalized = lattice::normalize_action(run.initial_psi, quanta);
    const double nh = quanta * c.unit_system().h();
    run.action_normalization = std::abs(lattice::action_area(normalized) - nh) / nh;
    run.wigner_total_error = std::abs(wigner::wigner_1d(normalized).total() - quanta) / quanta;

    // omega0 -> s omega0 and kappa -> s^2 kappa scale the whole dispersion relation by s
    const double scale = dispersion_fault(c);
    lattice::ModeSpectrum reference = run.initial_modes;
    reference.params.omega0 *= scale;
    reference.params.kappa *= scale * scale;
    const lattice::LatticeState exact = lattice::idft_from_modes(lattice::evolve_modes_exact(reference, t_end));
    double norm = 0.0;
    const double diff = squared_difference(s.u, exact.u, norm) + squared_difference(s.v, exact.v, norm);
    run.leapfrog_vs_exact = std::sqrt(diff / norm);
    const double wdt = p.max_frequency() * run.dt;
    run.leapfrog_error_bound = 2.0 * (wdt * wdt * p.max_frequency() * t_end / 24.0 + wdt * wdt / 4.0);
    return run;
}

WignerComparison compare_gaussian(const ScenarioConfig& c, double t) {
    const lattice::LatticeParams p = lattice_params(c);
    const wigner::GaussianEtaParams gp = gaussian_params(c);
    const double hbar = c.unit_system().hbar;
    const double scale = dispersion_fault(c);
    const lattice::ActionWave psi = wigner::gaussian_action_wave(gp, p.sites, p.spacing, hbar);
    const lattice::ActionWave moved =
        lattice::evolve_action_wave(psi, [&](double k) { return scale * gp.group_velocity * k; }, t);

    WignerComparison out;
    out.t = t;
    out.grid = wigner::wigner_1d(moved);
    const wigner::WignerGrid& g = out.grid;
    out.peak_expected = gp.quanta / (kPi * hbar);
    out.total = g.total();
    const double centre = gp.group_velocity * t;
    const double ring = g.ring_length();
    double worst = 0.0;
    for (std::size_t ix = 0; ix < g.nx(); ++ix) {
        const double offset = wigner::ring_offset(g.x[ix], centre, ring);
        const bool principal = std::abs(offset) < 0.25 * ring;
        for (std::size_t ip = 0; ip < g.np(); ++ip) {
            out.peak = std::max(out.peak, g.at(ip, ix));
            if (principal)
                worst = std::max(worst,
                                 std::abs(g.at(ip, ix) - wigner::wigner_gaussian_closed(gp, centre + offset, g.p[ip], t, hbar)));
        }
    }
    out.max_error = worst / out.peak_expected;

    const std::vector<lattice::cd> sites = lattice::site_representation(moved);
    const std::vector<double> marginal = g.x_marginal();
    const std::size_t n = sites.size();
    double diff = 0.0, largest = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double expected = std::norm(sites[(i + n / 2) % n]) / hbar;
        diff = std::max(diff, std::abs(marginal[i] - expected));
        largest = std::max(largest, expected);
    }
    out.marginal_error = diff / largest;
    return out;
}

FieldChecks run_field(const ScenarioConfig& c) {
    FieldChecks out;
    const em::MediumParams m = medium(c);
    const double box = c.field.box_length;
    const em::PhotonActionWave psi = random_photon_wave(c);
    const em::PhotonModeSet modes = em::modes_from_psi(psi);
    const em::Grid3 grid = em::Grid3::cube(c.field.grid_points, box);
    out.energy_k = em::energy_k_space(psi);
    out.energy_x = em::energy_x_space(modes, grid);
    const em::PhotonWigner fw = em::wigner_3d(psi);
    out.energy_phase = em::energy_phase_space(fw, m);
    const double hi = std::max({out.energy_k, out.energy_x, out.energy_phase});
    const double lo = std::min({out.energy_k, out.energy_x, out.energy_phase});
    out.energy_spread = (hi - lo) / out.energy_k;
    out.photon_number = em::photon_number(psi);
    out.wigner_total = fw.total();

    const em::FieldSnapshot snap = em::snapshot_from_modes(modes, grid);
    const em::EnergyFlow rs = em::energy_and_poynting(snap.F, m);
    const em::EnergyFlow direct = em::energy_and_poynting_direct(snap, m);
    double diff = 0.0, ref = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        diff = std::max({diff, std::abs(rs.w[i] - direct.w[i]), (rs.Y.values[i] - direct.Y.values[i]).norm()});
        ref = std::max({ref, std::abs(direct.w[i]), direct.Y.values[i].norm()});
    }
    out.dual_error = diff / ref;

    // plane waves along z on a thin periodic slab
    const em::Grid3 slab{{4, 4, 16}, {box, box, box}};
    const double k = 2.0 * kPi / box;
    const double dt = 1e-3 * 2.0 * kPi / (m.v() * k);
    std::vector<em::ComplexField> series;
    for (int i = 0; i < 5; ++i)
        series.push_back(em::circular_plane_wave_snapshot(slab, 1, 1.0, 1, m, i * dt, dispersion_fault(c)).F);
    out.rs_residual = em::curl_evolution_residual(series, dt, m).relative;

    std::mt19937_64 rng(c.seed);
    std::uniform_real_distribution<double> z(0.0, box), t(0.0, 10.0 * box);
    std::normal_distribution<double> normal;
    for (int i = 0; i < 100; ++i) {
        const int sigma = i % 2 == 0 ? 1 : -1;
        const double x3 = z(rng), ti = t(rng);
        const em::CircularPlaneWave w = em::circular_plane_wave(k, 1.0, sigma, m, x3, ti);
        out.circular_identity = std::max(out.circular_identity, (w.A - std::sqrt(m.mu) * w.U.real()).norm());
    }
    for (int i = 0; i < 50; ++i) {
        const double kx = normal(rng), ky = normal(rng), kz = normal(rng);
        const em::Vec3 kv(kx, ky, kz);
        const auto e = em::polarization_basis(kv);
        const em::Vec3 khat = kv.normalized();
        const Eigen::Matrix3d sum = khat * khat.transpose() + e[0] * e[0].transpose() + e[1] * e[1].transpose();
        out.basis_completeness = std::max(out.basis_completeness, (sum - Eigen::Matrix3d::Identity()).norm());
    }

    const double sigma_q = c.kinetics.gamma * m.epsilon;
    std::vector<em::ScalarField> w;
    std::vector<em::RealField> Y, E, j;
    for (int i = 0; i < 5; ++i) {
        const em::FieldSnapshot s = em::ohmic_plane_wave_snapshot(slab, 1, 1.0, sigma_q, m, i * dt);
        em::EnergyFlow ef = em::energy_and_poynting(s.F, m);
        w.push_back(std::move(ef.w));
        Y.push_back(std::move(ef.Y));
        E.push_back(s.E);
        em::RealField cur = s.E;
        for (auto& v : cur.values) v *= sigma_q;
        j.push_back(std::move(cur));
    }
    out.ohmic_balance = em::energy_flow_residual(w, Y, dt, E, j).relative;
    return out;
}

HelicityChecks run_helicity(const ScenarioConfig& c) {
    const HelicityBlock& h = c.helicity;
    const em::MediumParams m = medium(c);
    const double v = m.v();
    const double v_check = v * dispersion_fault(c);
    const std::vector<em::Vec3> points = sample_points(c.seed, h.points, h.extent);

    HelicityChecks out;
    out.study = helicity::convergence_study(helicity::cylindrical_potential(h.k, v), v_check, points, h.times, h.h0,
                                            h.levels, h.dt_per_h);
    out.plane = helicity::potential_equation_residual(helicity::plane_helical_potential(h.k, 1.0, 1, m), v_check, points,
                                                      h.times, 1e-3, 1e-3);

    em::MediumParams m_check = m;
    m_check.c *= dispersion_fault(c);
    const double box = c.field.box_length;
    const em::Grid3 slab{{4, 4, 16}, {box, box, box}};
    const double k = 2.0 * kPi * h.plane_index / box;
    const double dt = 1e-3 * 2.0 * kPi / (v * k);
    std::mt19937_64 rng(c.seed);
    std::normal_distribution<double> normal;
    const double kx = normal(rng), ky = normal(rng), kz = normal(rng);
    const em::Vec3 kv(kx, ky, kz);
    for (int sigma : {1, -1}) {
        const helicity::PotentialEval U = helicity::plane_helical_potential(k, 1.0, sigma, m);
        std::vector<em::ComplexField> series;
        for (int i = 0; i < 5; ++i) series.push_back(helicity::field_from_potential(helicity::sample_potential(U, slab, i * dt)));
        out.rs_residual = std::max(out.rs_residual, em::curl_evolution_residual(series, dt, m_check).relative);
        const helicity::ComplexPotentialMode mode{kv, em::helical_vector(kv, sigma), sigma};
        out.eigencheck = std::max(out.eigencheck, helicity::helicity_eigencheck(mode));
    }
    return out;
}

KineticsChecks run_kinetics(const ScenarioConfig& c) {
    using thermal::SourceModel;
    const KineticsBlock& kb = c.kinetics;
    const thermal::KineticParams kp = kinetic_params(c);
    KineticsChecks out;
    out.model = thermal::source_model_from_string(kb.model);
    out.p = thermal::log_momentum_grid(kp, kb.cells, kb.x_min, kb.x_max);
    const double t_end = kb.t_end_gamma / kb.gamma;
    out.relaxation = thermal::relax_to_equilibrium(thermal::homogeneous_state(out.p, 0.0), kp, out.model, t_end, kb.samples);
    out.residual_norm = out.relaxation.max_distance.back();

    thermal::KineticParams shifted = kp;
    shifted.medium.c *= dispersion_fault(c);
    for (double q : out.p) {
        const double f = thermal::planck_f(q, shifted);
        const double rhs = thermal::relaxation_rhs(SourceModel::WienStimulated, q, kp, f);
        out.substitution_residual = std::max(out.substitution_residual, std::abs(rhs) / (kp.gamma * f));
    }

    const thermal::WienPeak peak = thermal::wien_peak(kb.temperature, kp);
    out.lambda_m = peak.lambda_m;
    out.product = peak.product;
    boost::uintmax_t iterations = 100;
    const auto root = boost::math::tools::toms748_solve([](double x) { return x - 5.0 * -std::expm1(-x); }, 4.0, 6.0,
                                                        boost::math::tools::eps_tolerance<double>(52), iterations);
    out.product_root = 2.0 * kPi / (0.5 * (root.first + root.second));
    out.photon_count = thermal::thermal_photon_count(kb.temperature, kp);
    const double scaled = peak.lambda_m * kp.units.k_B * kb.temperature / (kp.units.h() * kp.medium.v());
    out.photon_count_closed = 16.0 * kPi * boost::math::zeta(3.0) * scaled * scaled * scaled;

    for (double q : out.p) {
        const double fp = thermal::planck_f(q, kp);
        const double frj = thermal::equilibrium_f(SourceModel::RayleighJeans, q, kp);
        const double fw = thermal::equilibrium_f(SourceModel::Wien, q, kp);
        out.bound_violation = std::max({out.bound_violation, (fw - fp) / fp, (fp - frj) / fp});
    }

    const double rate_time = 5.0 / kb.gamma;
    for (SourceModel model : {SourceModel::RayleighJeans, SourceModel::Wien, SourceModel::WienStimulated}) {
        const thermal::RelaxationReport r =
            thermal::relax_to_equilibrium(thermal::homogeneous_state(out.p, 0.0), kp, model, rate_time, 10);
        for (std::size_t i = 0; i < out.p.size(); ++i) {
            const double expected = thermal::effective_rate(model, out.p[i], kp);
            const double err = std::abs(r.measured_rate[i] - expected) / expected;
            out.rate_error = std::isfinite(err) ? std::max(out.rate_error, err) : HUGE_VAL;
        }
    }

    thermal::KineticState s = thermal::homogeneous_state(out.p, 0.0);
    for (std::size_t i = 0; i < s.np(); ++i) s.f[i] = thermal::planck_f(s.p[i], kp);
    const double n0 = s.total();
    const double dt = rate_time / 10.0;
    for (int i = 0; i < 10; ++i) {
        s = thermal::kinetic_step(s, kp, out.model, dt, {thermal::Physics::DampingOnly, 1.0});
        out.damping_error = std::max(out.damping_error, std::abs(s.total() / n0 - std::exp(-kb.gamma * s.t)));
    }
    return out;
}

} // namespace wq::harness
