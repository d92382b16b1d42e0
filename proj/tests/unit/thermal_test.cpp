#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "wavequanta/error.hpp"
#include "wavequanta/thermal.hpp"

using namespace wq;
using namespace wq::thermal;
using wq::testing::kPi;

namespace {

KineticParams natural(double temperature = 1.0, double gamma = 1.0) {
    KineticParams p;
    p.temperature = temperature;
    p.gamma = gamma;
    return p;
}

KineticParams mev(double temperature) {
    KineticParams p;
    p.temperature = temperature;
    p.gamma = 0.5;
    p.units = UnitSystem::mev_ps();
    p.medium.c = p.units.c;
    return p;
}

} // namespace

TEST_CASE("validation and names") {
    KineticParams p = natural();
    CHECK_NOTHROW(p.validate());
    p.temperature = 0.0;
    CHECK_THROWS_AS(p.validate(), ValidationError);
    p = natural(1.0, -1.0);
    CHECK_THROWS_AS(p.validate(), ValidationError);
    for (SourceModel m : {SourceModel::RayleighJeans, SourceModel::Wien, SourceModel::WienStimulated})
        CHECK(source_model_from_string(to_string(m)) == m);
    CHECK_THROWS_AS(source_model_from_string("planck"), ValidationError);
    CHECK_THROWS_AS(planck_f(0.0, natural()), ValidationError);
}

TEST_CASE("hand values") {
    const KineticParams p = natural(2.0, 0.5);
    const double h = p.units.h();
    const double p1 = p.momentum_for(1.0);
    CHECK(planck_f(p1, p) == doctest::Approx(2.0 / (h * h * h) / (std::numbers::e - 1.0)).epsilon(1e-15));
    const double kT = p.units.k_B * p.temperature;
    CHECK(source_q(SourceModel::RayleighJeans, p1, p, 0.0) == doctest::Approx(2.0 * p.sigma_q() * kT));
    CHECK(source_q(SourceModel::Wien, p1, p, 0.0) == doctest::Approx(2.0 * p.sigma_q() * kT / std::numbers::e));
    const double f = 0.3;
    CHECK(source_q(SourceModel::WienStimulated, p1, p, f) ==
          doctest::Approx(2.0 * p.sigma_q() * kT / std::numbers::e * (1.0 + h * h * h * f / 2.0)));
    CHECK(effective_rate(SourceModel::Wien, p1, p) == doctest::Approx(0.5));
    CHECK(effective_rate(SourceModel::WienStimulated, p1, p) == doctest::Approx(0.5 * (1.0 - std::exp(-1.0))));
}

TEST_CASE("limits and ordering of the equilibria") {
    const KineticParams p = natural();
    for (double x : {1e-4, 1e-3}) {
        const double q = p.momentum_for(x);
        CHECK(equilibrium_f(SourceModel::RayleighJeans, q, p) / planck_f(q, p) == doctest::Approx(1.0).epsilon(x));
    }
    for (double x : {20.0, 30.0}) {
        const double q = p.momentum_for(x);
        CHECK(equilibrium_f(SourceModel::Wien, q, p) / planck_f(q, p) == doctest::Approx(1.0).epsilon(2.0 * std::exp(-x)));
    }
    for (double x = 0.01; x < 40.0; x *= 1.3) {
        const double q = p.momentum_for(x);
        const double w = equilibrium_f(SourceModel::Wien, q, p);
        const double pl = planck_f(q, p);
        const double rj = equilibrium_f(SourceModel::RayleighJeans, q, p);
        CHECK(w < pl);
        CHECK(pl < rj);
    }
}

TEST_CASE("equilibria are fixed points of their sources") {
    const KineticParams p = natural(1.3, 0.7);
    for (SourceModel m : {SourceModel::RayleighJeans, SourceModel::Wien, SourceModel::WienStimulated})
        for (double x : {0.01, 0.5, 3.0, 20.0}) {
            const double q = p.momentum_for(x);
            const double feq = equilibrium_f(m, q, p);
            CHECK(std::abs(relaxation_rhs(m, q, p, feq)) <= 1e-13 * p.gamma * feq);
        }
    const auto grid = log_momentum_grid(p, 512);
    CHECK(planck_substitution_residual(grid, p) < 1e-13);
}

TEST_CASE("homogeneous relaxation follows the exact exponential") {
    const KineticParams p = natural(1.0, 0.8);
    const auto grid = log_momentum_grid(p, 64);
    KineticState s = homogeneous_state(grid, 0.0);
    for (std::size_t i = 0; i < s.f.size(); ++i) s.f[i] = 3.0 * planck_f(grid[i], p);
    const double t = 2.5;
    for (SourceModel m : {SourceModel::RayleighJeans, SourceModel::Wien, SourceModel::WienStimulated}) {
        KineticState x = s;
        for (int i = 0; i < 25; ++i) x = kinetic_step(x, p, m, t / 25.0);
        CHECK(x.t == doctest::Approx(t));
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const double feq = equilibrium_f(m, grid[i], p);
            const double expected = feq + (s.f[i] - feq) * std::exp(-effective_rate(m, grid[i], p) * t);
            CHECK(std::abs(x.f[i] - expected) <= 1e-12 * std::abs(expected));
        }
    }
}

TEST_CASE("measured relaxation rates") {
    const KineticParams p = natural(1.0, 1.2);
    const auto grid = log_momentum_grid(p, 64);
    KineticState s = homogeneous_state(grid, 0.0);
    for (std::size_t i = 0; i < s.f.size(); ++i) s.f[i] = 0.5 * planck_f(grid[i], p);
    for (SourceModel m : {SourceModel::RayleighJeans, SourceModel::Wien, SourceModel::WienStimulated}) {
        const RelaxationReport r = relax_to_equilibrium(s, p, m, 3.0, 30);
        CHECK(r.monotone);
        CHECK(r.times.size() == r.max_distance.size());
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const double rate = effective_rate(m, grid[i], p);
            CHECK(std::abs(r.measured_rate[i] - rate) <= 1e-8 * rate);
        }
    }
}

TEST_CASE("damping only decays as exp(-gamma t)") {
    const KineticParams p = natural(1.0, 0.9);
    const auto grid = log_momentum_grid(p, 32);
    KineticState s = homogeneous_state(grid, 1.0);
    StepOptions opt;
    opt.physics = Physics::DampingOnly;
    for (int i = 0; i < 10; ++i) s = kinetic_step(s, p, SourceModel::WienStimulated, 0.3, opt);
    for (double f : s.f) CHECK(f == doctest::Approx(std::exp(-0.9 * 3.0)).epsilon(1e-10));
}

TEST_CASE("transport conserves the photon count and respects the CFL limit") {
    const KineticParams p = natural();
    KineticState s = homogeneous_state(log_momentum_grid(p, 16), 0.0);
    s.nx = 32;
    s.dx = 0.1;
    s.f.assign(s.nx * s.np(), 0.0);
    for (std::size_t ix = 0; ix < s.nx; ++ix)
        for (std::size_t ip = 0; ip < s.np(); ++ip)
            s.f[ix * s.np() + ip] = std::exp(-0.1 * std::pow(static_cast<double>(ix) - 10.0, 2));
    const double total = s.total();
    StepOptions opt;
    opt.physics = Physics::TransportOnly;
    opt.direction = -0.7;
    KineticState x = s;
    for (int i = 0; i < 200; ++i) x = kinetic_step(x, p, SourceModel::Wien, 0.1, opt);
    CHECK(std::abs(x.total() - total) <= 1e-10 * total);
    // unit Courant number moves the profile by exactly one cell per step
    opt.direction = 1.0;
    const KineticState shifted = kinetic_step(s, p, SourceModel::Wien, 0.1, opt);
    for (std::size_t ix = 0; ix < s.nx; ++ix)
        CHECK(shifted.at((ix + 1) % s.nx, 3) == doctest::Approx(s.at(ix, 3)).epsilon(1e-14));
    CHECK_THROWS_AS(kinetic_step(s, p, SourceModel::Wien, 0.11, opt), ValidationError);
    CHECK_THROWS_AS(kinetic_step(s, p, SourceModel::Wien, 0.0, opt), ValidationError);
}

TEST_CASE("integrated spectral density") {
    for (const KineticParams& p : {natural(1.0), natural(3.0), mev(300.0)}) {
        const double kT = p.units.k_B * p.temperature;
        const double hv = p.units.h() * p.medium.v();
        const double oracle = 8.0 * kPi * std::pow(kT, 4) / std::pow(hv, 3) * std::pow(kPi, 4) / 15.0;
        CHECK(integrated_energy_density(p.temperature, p) == doctest::Approx(oracle).epsilon(1e-8));
    }
    CHECK(spectral_energy_density(1.0, 1e-6, natural()) == 0.0);
}

TEST_CASE("Wien displacement") {
    const double x_star = wq::testing::wien_root();
    for (const KineticParams& p : {natural(1.0), natural(7.0), mev(3.0), mev(300.0), mev(6000.0)}) {
        const WienPeak w = wien_peak(p.temperature, p);
        CHECK(w.product == doctest::Approx(2.0 * kPi / x_star).epsilon(1e-6));
        // the peak really is a maximum of U_lambda
        const double u = spectral_energy_density(p.temperature, w.lambda_m, p);
        CHECK(u >= spectral_energy_density(p.temperature, w.lambda_m * 1.01, p));
        CHECK(u >= spectral_energy_density(p.temperature, w.lambda_m * 0.99, p));
        const double n = thermal_photon_count(p.temperature, p);
        CHECK(n == doctest::Approx(16.0 * kPi * wq::testing::zeta3() / std::pow(x_star, 3)).epsilon(1e-6));
    }
}
