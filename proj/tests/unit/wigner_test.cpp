#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "oracles.hpp"
#include "wavequanta/error.hpp"
#include "wavequanta/wigner.hpp"

using namespace wq;
using namespace wq::wigner;
using wq::lattice::ActionWave;
using wq::testing::kPi;
using wq::testing::Rng;

namespace {

ActionWave random_wave(Rng& rng, std::size_t n, double spacing, double hbar) {
    ActionWave psi;
    psi.hbar = hbar;
    psi.spacing = spacing;
    psi.dk = 2.0 * kPi / (spacing * static_cast<double>(n));
    psi.psik.resize(n);
    for (auto& z : psi.psik) z = rng.complex_normal();
    return psi;
}

double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

} // namespace

TEST_CASE("grid layout") {
    Rng rng(1);
    const ActionWave psi = random_wave(rng, 16, 0.5, 1.0);
    const WignerGrid g = wigner_1d(psi);
    CHECK(g.nx() == 16);
    CHECK(g.np() == 32);
    CHECK(g.x.front() == doctest::Approx(-4.0));
    CHECK(g.dp == doctest::Approx(0.5 * psi.dk));
    CHECK(g.p.front() == doctest::Approx(-16.0 * g.dp));
    CHECK(g.imag_residual < 1e-13);
}

TEST_CASE("agrees with the direct pair sum") {
    Rng rng(42);
    for (std::size_t n : {8u, 32u}) {
        const ActionWave psi = random_wave(rng, n, 0.8, 0.6);
        const WignerGrid g = wigner_1d(psi);
        const double scale = max_abs(g.f);
        double worst = 0.0;
        for (std::size_t ip = 0; ip < g.np(); ++ip) {
            const long long s = static_cast<long long>(ip) - static_cast<long long>(n);
            for (std::size_t ix = 0; ix < g.nx(); ++ix)
                worst = std::max(worst, std::abs(g.at(ip, ix) - wq::testing::wigner_pair_sum(psi, g.x[ix], s)));
        }
        CHECK(worst <= 1e-12 * scale);
    }
}

TEST_CASE("single mode is a uniform line at its momentum") {
    ActionWave psi;
    psi.hbar = 1.0;
    psi.spacing = 1.0;
    psi.dk = 2.0 * kPi / 32.0;
    psi.psik.assign(32, lattice::cd(0.0));
    const std::size_t j = 20;  // q = 4
    psi.psik[j] = lattice::cd(0.6, 0.8);
    const WignerGrid g = wigner_1d(psi);
    const std::size_t row = 32 + 8;  // s = 2q
    for (std::size_t ip = 0; ip < g.np(); ++ip)
        for (std::size_t ix = 0; ix < g.nx(); ++ix) {
            const double expected = ip == row ? psi.dk / kPi : 0.0;
            CHECK(g.at(ip, ix) == doctest::Approx(expected).epsilon(1e-13).scale(1.0));
        }
    CHECK(g.p[row] == doctest::Approx(psi.wavenumber(j)));
}

TEST_CASE("property: marginals and total") {
    Rng rng(77);
    for (int trial = 0; trial < 10; ++trial) {
        const std::size_t n = 2 * static_cast<std::size_t>(rng.integer(2, 64));
        const double hbar = rng.uniform(0.2, 2.0);
        const ActionWave psi = random_wave(rng, n, rng.uniform(0.3, 2.0), hbar);
        const WignerGrid g = wigner_1d(psi);

        double area = lattice::action_area(psi);
        CHECK(g.total() == doctest::Approx(area / (2.0 * kPi * hbar)).epsilon(1e-10));

        const auto pm = g.p_marginal_on_mode_grid();
        for (std::size_t j = 0; j < n; ++j)
            CHECK(std::abs(pm[j] - std::norm(psi.psik[j]) / (hbar * hbar)) <= 1e-8 * max_abs(pm));

        const auto sites = lattice::site_representation(psi);
        const auto xm = g.x_marginal();
        for (std::size_t i = 0; i < n; ++i)
            CHECK(std::abs(xm[i] - std::norm(sites[(i + n / 2) % n]) / hbar) <= 1e-8 * max_abs(xm));
    }
}

TEST_CASE("property: half-ring translation flips odd rows") {
    Rng rng(3);
    const std::size_t n = 24;
    const WignerGrid g = wigner_1d(random_wave(rng, n, 1.0, 1.0));
    const double scale = max_abs(g.f);
    for (std::size_t ip = 0; ip < g.np(); ++ip) {
        const double sign = ((ip + n) % 2 == 0) ? 1.0 : -1.0;
        for (std::size_t ix = 0; ix < n / 2; ++ix)
            CHECK(std::abs(g.at(ip, ix + n / 2) - sign * g.at(ip, ix)) <= 1e-12 * scale);
    }
}

TEST_CASE("site samples give the same grid as modes") {
    Rng rng(8);
    const ActionWave psi = random_wave(rng, 32, 0.5, 1.0);
    const auto sites = lattice::site_representation(psi);
    std::vector<double> x(sites.size());
    for (std::size_t n = 0; n < x.size(); ++n) x[n] = 0.5 * static_cast<double>(n);
    const WignerGrid a = wigner_1d(psi);
    const WignerGrid b = wigner_1d_from_samples(x, sites, 1.0);
    for (std::size_t i = 0; i < a.f.size(); ++i) CHECK(std::abs(a.f[i] - b.f[i]) <= 1e-12 * max_abs(a.f));

    std::vector<double> bad = x;
    bad[5] += 0.01;
    CHECK_THROWS_AS(wigner_1d_from_samples(bad, sites, 1.0), ValidationError);
    CHECK_THROWS_AS(wigner_1d_from_samples(std::span<const double>(x).first(4), sites, 1.0), ValidationError);
}

TEST_CASE("gaussian matches the closed form in the principal window") {
    GaussianEtaParams gp;
    gp.k0 = 0.5;
    gp.width = 100.0;
    gp.quanta = 2;
    const double hbar = 0.9;
    const ActionWave psi = gaussian_action_wave(gp, 256, 1.0, hbar);
    CHECK(lattice::action_area(psi) == doctest::Approx(gp.quanta * 2.0 * kPi * hbar).epsilon(1e-12));
    const WignerGrid g = wigner_1d(psi);
    const double peak = gp.quanta / (kPi * hbar);
    double worst = 0.0;
    for (std::size_t ip = 0; ip < g.np(); ++ip)
        for (std::size_t ix = 0; ix < g.nx(); ++ix) {
            if (std::abs(ring_offset(g.x[ix], 0.0, g.ring_length())) >= 0.25 * g.ring_length()) continue;
            worst = std::max(worst, std::abs(g.at(ip, ix) - wigner_gaussian_closed(gp, g.x[ix], g.p[ip], 0.0, hbar)));
        }
    CHECK(worst <= 1e-6 * peak);
    CHECK(g.total() == doctest::Approx(gp.quanta).epsilon(1e-10));
}

TEST_CASE("linear dispersion translates the gaussian") {
    GaussianEtaParams gp;
    gp.k0 = 0.6;
    gp.width = 64.0;
    gp.group_velocity = 1.5;
    const double hbar = 1.0;
    const ActionWave psi = gaussian_action_wave(gp, 256, 1.0, hbar);
    const double t = 20.0;
    const ActionWave moved = lattice::evolve_action_wave(psi, [&](double k) { return gp.group_velocity * k; }, t);
    const WignerGrid direct = wigner_1d(moved);
    const WignerGrid shifted =
        evolve_wigner_group_velocity(wigner_1d(psi), [&](double) { return gp.group_velocity; }, t);
    const double peak = gp.quanta / (kPi * hbar);
    double worst_shift = 0.0, worst_closed = 0.0;
    for (std::size_t ip = 0; ip < direct.np(); ++ip)
        for (std::size_t ix = 0; ix < direct.nx(); ++ix) {
            worst_shift = std::max(worst_shift, std::abs(direct.at(ip, ix) - shifted.at(ip, ix)));
            const double x = direct.x[ix];
            if (std::abs(ring_offset(x, gp.group_velocity * t, direct.ring_length())) >= 0.25 * direct.ring_length())
                continue;
            worst_closed =
                std::max(worst_closed, std::abs(direct.at(ip, ix) - wigner_gaussian_closed(gp, x, direct.p[ip], t, hbar)));
        }
    CHECK(worst_shift <= 1e-10 * peak);
    CHECK(worst_closed <= 1e-6 * peak);

    const WignerGrid same = evolve_wigner_group_velocity(direct, [](double) { return 3.0; }, 0.0);
    CHECK(same.f == direct.f);
}

TEST_CASE("gaussian parameter validation") {
    GaussianEtaParams gp;
    gp.width = 0.0;
    CHECK_THROWS_AS(gp.validate(), ValidationError);
    gp.width = 1.0;
    gp.quanta = 0;
    CHECK_THROWS_AS(gaussian_action_wave(gp, 16, 1.0, 1.0), ValidationError);
}

TEST_CASE("quasi-energy density integrates to the lattice energy") {
    Rng rng(12);
    for (int trial = 0; trial < 5; ++trial) {
        lattice::LatticeParams p;
        p.sites = 64;
        p.omega0 = rng.uniform(0.2, 1.0);
        p.kappa = rng.uniform(0.5, 2.0);
        const auto spectrum = lattice::dft_to_modes(wq::testing::random_state(p, rng), p);
        const QuasiEnergy qe = quasi_energy_density(spectrum, 0.7);
        const double h = lattice::total_mode_energy(spectrum);
        CHECK(std::abs(qe.total - h) <= 1e-8 * h);
    }
}

TEST_CASE("ring offset") {
    CHECK(ring_offset(1.0, 0.0, 10.0) == doctest::Approx(1.0));
    CHECK(ring_offset(9.0, 0.0, 10.0) == doctest::Approx(-1.0));
    CHECK(ring_offset(-6.0, 0.0, 10.0) == doctest::Approx(4.0));
    CHECK(ring_offset(5.0, 0.0, 10.0) == doctest::Approx(-5.0));
}
