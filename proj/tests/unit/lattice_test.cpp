#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "oracles.hpp"
#include "wavequanta/error.hpp"
#include "wavequanta/lattice.hpp"

using namespace wq;
using namespace wq::lattice;
using wq::testing::Rng;

namespace {

LatticeParams chain(std::size_t sites, double omega0 = 0.5, double kappa = 1.0) {
    LatticeParams p;
    p.sites = sites;
    p.omega0 = omega0;
    p.kappa = kappa;
    return p;
}

LatticeState single_mode(const LatticeParams& p, int q, double amplitude) {
    LatticeState s = LatticeState::zeros(p);
    for (std::size_t n = 0; n < p.sites; ++n)
        s.u[n] = amplitude * std::cos(2.0 * wq::testing::kPi * q * static_cast<double>(n) / static_cast<double>(p.sites));
    return s;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
}

} // namespace

TEST_CASE("params validation") {
    LatticeParams p = chain(64);
    CHECK_NOTHROW(p.validate());
    p.sites = 63;
    CHECK_THROWS_AS(p.validate(), ValidationError);
    p = chain(64);
    p.kappa = 0.0;
    CHECK_THROWS_AS(p.validate(), ValidationError);
    p = chain(64);
    p.omega0 = -1.0;
    CHECK_THROWS_AS(p.validate(), ValidationError);
}

TEST_CASE("hamiltonian energy hand values") {
    LatticeParams p = chain(4, 0.0, 1.0);
    CHECK(hamiltonian_energy(LatticeState::zeros(p), p) == 0.0);
    LatticeState s = LatticeState::zeros(p);
    s.u[0] = 1.0;
    CHECK(hamiltonian_energy(s, p) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("eigenmode energy matches the mode formula") {
    for (std::size_t n : {64u, 256u}) {
        LatticeParams p = chain(n);
        const LatticeState s = single_mode(p, 1, 1.0);
        const double h = hamiltonian_energy(s, p);
        CHECK(std::abs(total_mode_energy(dft_to_modes(s, p)) - h) <= 1e-12 * h);
    }
}

TEST_CASE("dft matches the direct sum and round-trips") {
    Rng rng(11);
    for (std::size_t n : {8u, 64u, 256u}) {
        LatticeParams p = chain(n);
        p.spacing = 0.7;
        const LatticeState s = wq::testing::random_state(p, rng);
        const ModeSpectrum spec = dft_to_modes(s, p);
        const auto uk = wq::testing::brute_modes(s.u, p.spacing, +1);
        const auto vk = wq::testing::brute_modes(s.v, p.spacing, -1);
        double worst = 0.0;
        for (std::size_t j = 0; j < n; ++j)
            worst = std::max({worst, std::abs(uk[j] - spec.uk[j]), std::abs(vk[j] - spec.vk[j])});
        CHECK(worst < 1e-11);
        const LatticeState back = idft_from_modes(spec);
        CHECK(max_abs_diff(back.u, s.u) < 1e-12);
        CHECK(max_abs_diff(back.v, s.v) < 1e-12);
        CHECK(spec.reality_violation() < 1e-12);
    }
}

TEST_CASE("delta displacement has a flat spectrum") {
    LatticeParams p = chain(64);
    LatticeState s = LatticeState::zeros(p);
    s.u[0] = 1.0;
    const ModeSpectrum spec = dft_to_modes(s, p);
    const double expected = std::sqrt(p.spacing / (2.0 * wq::testing::kPi));
    for (const cd& z : spec.uk) CHECK(std::abs(z) == doctest::Approx(expected).epsilon(1e-14));
}

TEST_CASE("dispersion values") {
    LatticeParams p = chain(64, 0.3, 1.0);
    CHECK(dispersion(0.0, p) == doctest::Approx(0.3));
    p.omega0 = 0.0;
    CHECK(dispersion(wq::testing::kPi, p) == doctest::Approx(2.0).epsilon(1e-15));
    for (double k : {1e-3, 1e-2, 5e-2}) {
        const double rel = std::abs(dispersion(k, p) - p.sound_speed() * k) / (p.sound_speed() * k);
        CHECK(rel <= 0.05 * k * k);  // (k l)^2 / 24
    }
    // group velocity is the derivative of the dispersion
    p.omega0 = 0.4;
    for (double k : {-2.0, -0.3, 0.7, 2.5}) {
        const double h = 1e-6;
        const double fd = (dispersion(k + h, p) - dispersion(k - h, p)) / (2.0 * h);
        CHECK(group_velocity(k, p) == doctest::Approx(fd).epsilon(1e-8));
    }
}

TEST_CASE("property: Parseval and reality for random states") {
    Rng rng(2024);
    for (int trial = 0; trial < 40; ++trial) {
        LatticeParams p = chain(2 * static_cast<std::size_t>(rng.integer(1, 128)), rng.uniform(0.0, 2.0),
                                rng.uniform(0.1, 3.0));
        p.mass = rng.uniform(0.2, 5.0);
        p.spacing = rng.uniform(0.1, 3.0);
        const LatticeState s = wq::testing::random_state(p, rng);
        const ModeSpectrum spec = dft_to_modes(s, p);
        const double h = hamiltonian_energy(s, p);
        CHECK(std::abs(total_mode_energy(spec) - h) <= 1e-10 * h);
        CHECK(spec.reality_violation() < 1e-12);
        for (double e : mode_energy(spec)) CHECK(e >= 0.0);
    }
}

TEST_CASE("mode energy rejects non-real spectra and handles zero") {
    LatticeParams p = chain(16);
    ModeSpectrum zero = dft_to_modes(LatticeState::zeros(p), p);
    for (double e : mode_energy(zero)) CHECK(e == 0.0);
    zero.uk[3] = cd(1.0, 0.0);
    CHECK_THROWS_AS(mode_energy(zero), ValidationError);
}

TEST_CASE("leapfrog basics") {
    LatticeParams p = chain(64);
    const LatticeState z = LatticeState::zeros(p);
    const LatticeState z1 = leapfrog_step(z, p, 0.01);
    CHECK(max_abs_diff(z1.u, z.u) == 0.0);
    CHECK(z1.t == doctest::Approx(0.01));
    CHECK_THROWS_AS(leapfrog_step(z, p, 2.0 / p.max_frequency()), ValidationError);
    CHECK_THROWS_AS(leapfrog_step(z, p, 0.0), ValidationError);
}

TEST_CASE("leapfrog period return converges at second order") {
    LatticeParams p = chain(64);
    const int q = 3;
    const LatticeState s0 = single_mode(p, q, 1.0);
    const double w = dispersion(2.0 * wq::testing::kPi * q / p.length(), p);
    const double period = 2.0 * wq::testing::kPi / w;
    auto error_for = [&](std::size_t steps) {
        LatticeState s = s0;
        leapfrog_advance(s, p, period / static_cast<double>(steps), steps);
        // u starts at a turning point, so the phase error shows up first in v
        return max_abs_diff(s.v, s0.v);
    };
    const double e1 = error_for(500);
    const double e2 = error_for(1000);
    CHECK(e1 < 1e-3);
    CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.05));
}

TEST_CASE("leapfrog energy error is bounded and scales with dt^2") {
    Rng rng(7);
    LatticeParams p = chain(64);
    const LatticeState s0 = wq::testing::random_state(p, rng);
    const double h0 = hamiltonian_energy(s0, p);
    auto drift = [&](double dt, std::size_t steps, double& first_half, double& second_half) {
        LatticeState s = s0;
        first_half = second_half = 0.0;
        for (std::size_t i = 0; i < steps; ++i) {
            leapfrog_advance(s, p, dt, 1);
            const double d = std::abs(hamiltonian_energy(s, p) - h0) / h0;
            (i < steps / 2 ? first_half : second_half) = std::max(i < steps / 2 ? first_half : second_half, d);
        }
        return std::max(first_half, second_half);
    };
    const double dt = 0.01 / p.max_frequency();
    double a1, a2, b1, b2;
    const double d1 = drift(dt, 10000, a1, a2);
    const double d2 = drift(dt / 2.0, 20000, b1, b2);
    // no secular growth: the second half is not worse than the first beyond noise
    CHECK(a2 <= 1.5 * a1);
    CHECK(d1 / d2 == doctest::Approx(4.0).epsilon(0.15));
}

TEST_CASE("exact evolution") {
    Rng rng(5);
    LatticeParams p = chain(64);
    const LatticeState s = wq::testing::random_state(p, rng);
    const ModeSpectrum spec = dft_to_modes(s, p);

    const ModeSpectrum same = evolve_modes_exact(spec, 0.0);
    for (std::size_t j = 0; j < spec.uk.size(); ++j) CHECK(std::abs(same.uk[j] - spec.uk[j]) == 0.0);

    const double h = total_mode_energy(spec);
    const ModeSpectrum later = evolve_modes_exact(spec, 13.7);
    CHECK(std::abs(total_mode_energy(later) - h) <= 1e-13 * h);
    CHECK(std::abs(hamiltonian_energy(idft_from_modes(later), p) - h) <= 1e-12 * h);

    // single mode returns after one period
    const int q = 5;
    const ModeSpectrum one = dft_to_modes(single_mode(p, q, 1.0), p);
    const double period = 2.0 * wq::testing::kPi / dispersion(2.0 * wq::testing::kPi * q / p.length(), p);
    const ModeSpectrum back = evolve_modes_exact(one, period);
    for (std::size_t j = 0; j < one.uk.size(); ++j) CHECK(std::abs(back.uk[j] - one.uk[j]) < 1e-12);

    // leapfrog converges to the exact trajectory at second order
    auto error_for = [&](std::size_t steps) {
        LatticeState x = s;
        leapfrog_advance(x, p, 2.0 / static_cast<double>(steps), steps);
        return max_abs_diff(x.u, idft_from_modes(evolve_modes_exact(spec, 2.0)).u);
    };
    CHECK(error_for(400) / error_for(800) == doctest::Approx(4.0).epsilon(0.1));
}

TEST_CASE("action variables are constant under exact evolution") {
    Rng rng(9);
    LatticeParams p = chain(256);
    const LatticeState s = wq::testing::random_state(p, rng);
    const ModeSpectrum spec = dft_to_modes(s, p);
    const ActionWave psi = psi_from_modes(spec, 1.0);
    const double t = 3.3;
    const ActionWave later = psi_from_modes(evolve_modes_exact(spec, t), 1.0);
    const auto eta0 = psi.eta();
    const auto eta1 = later.eta();
    const double scale = *std::max_element(eta0.begin(), eta0.end());
    for (std::size_t j = 0; j < eta0.size(); ++j) {
        CHECK(std::abs(eta1[j] - eta0[j]) <= 1e-12 * scale);
        const double w = dispersion(psi.wavenumber(j), p);
        const cd expected = psi.psik[j] * std::polar(1.0, -w * t);
        CHECK(std::abs(later.psik[j] - expected) <= 1e-12 * std::sqrt(scale));
    }
    CHECK(std::abs(action_area(later) - action_area(psi)) <= 1e-12 * action_area(psi));
}

TEST_CASE("action wave round trip and mode energy split") {
    Rng rng(31);
    for (int trial = 0; trial < 10; ++trial) {
        LatticeParams p = chain(64, rng.uniform(0.1, 1.0), rng.uniform(0.5, 2.0));
        const ModeSpectrum spec = dft_to_modes(wq::testing::random_state(p, rng), p);
        const ActionWave psi = psi_from_modes(spec, 0.5);
        const ModeSpectrum back = modes_from_psi(psi, p);
        double scale = 0.0, worst = 0.0;
        for (std::size_t j = 0; j < spec.uk.size(); ++j) {
            scale = std::max({scale, std::abs(spec.uk[j]), std::abs(spec.vk[j])});
            worst = std::max({worst, std::abs(back.uk[j] - spec.uk[j]), std::abs(back.vk[j] - spec.vk[j])});
        }
        CHECK(worst <= 1e-12 * scale);
        const auto h = mode_energy(spec);
        for (std::size_t j = 0; j < h.size(); ++j) {
            const std::size_t jp = p.partner(j);
            const double w = dispersion(psi.wavenumber(j), p);
            const double split = 0.5 * w * (std::norm(psi.psik[j]) + std::norm(psi.psik[jp]));
            // H'_k pairs with H'_{-k}; their sums agree
            CHECK(std::abs(split - 0.5 * (h[j] + h[jp])) <= 1e-10 * (h[j] + h[jp] + 1e-300));
        }
    }
}

TEST_CASE("zero-frequency energy is rejected in the massless chain") {
    LatticeParams p = chain(32, 0.0, 1.0);
    LatticeState s = LatticeState::zeros(p);
    for (auto& v : s.v) v = 1.0;
    CHECK_THROWS_AS(psi_from_modes(dft_to_modes(s, p), 1.0), ValidationError);
    const ActionWave zero = psi_from_modes(dft_to_modes(LatticeState::zeros(p), p), 1.0);
    for (const cd& z : zero.psik) CHECK(z == cd(0.0));
}

TEST_CASE("traveling waves") {
    LatticeParams p = chain(256, 0.0, 1.0);
    std::vector<double> u0(p.sites);
    const double center = 100.0, width = 6.0;
    for (std::size_t n = 0; n < p.sites; ++n) {
        const double d = static_cast<double>(n) - center;
        u0[n] = std::exp(-d * d / (2.0 * width * width));
    }

    LatticeParams massive = p;
    massive.omega0 = 0.1;
    CHECK_THROWS_AS(traveling_wave_init(u0, 1, massive), ValidationError);

    const TravelingWave right = traveling_wave_init(u0, 1, p);
    const TravelingWave left = traveling_wave_init(u0, -1, p);
    CHECK(right.out_of_band_fraction < 1e-10);

    // chirality: eta lives on k > 0 for the right mover
    const ActionWave psi = psi_from_modes(dft_to_modes(right.state, p), 1.0);
    double pos = 0.0, neg = 0.0;
    for (std::size_t j = 0; j < psi.size(); ++j) (psi.wavenumber(j) > 0.0 ? pos : neg) += std::norm(psi.psik[j]);
    CHECK(neg <= 1e-10 * pos);

    // peak moves by v t within one spacing
    const double t = 40.0;
    const LatticeState moved = idft_from_modes(evolve_modes_exact(dft_to_modes(right.state, p), t));
    const auto peak = std::max_element(moved.u.begin(), moved.u.end()) - moved.u.begin();
    CHECK(std::abs(static_cast<double>(peak) - (center + p.sound_speed() * t)) <= 1.0);

    // parity: the left mover is the mirror image of the right mover under n -> 2c - n
    const LatticeState l = idft_from_modes(evolve_modes_exact(dft_to_modes(left.state, p), t));
    const auto lpeak = std::max_element(l.u.begin(), l.u.end()) - l.u.begin();
    CHECK(std::abs(static_cast<double>(lpeak) - (center - p.sound_speed() * t)) <= 1.0);
    for (int d = -20; d <= 20; ++d) {
        const auto a = static_cast<std::size_t>(peak + d);
        const auto b = static_cast<std::size_t>(lpeak - d);
        CHECK(moved.u[a] == doctest::Approx(l.u[b]).epsilon(1e-10).scale(1.0));
    }
}

TEST_CASE("d'Alembert solution") {
    auto u0 = [](double x) { return std::exp(-x * x); };
    auto du_zero = [](double) { return 0.0; };
    const double v = 1.3;
    for (double x : {-1.0, 0.0, 0.4, 2.0}) {
        CHECK(dalembert_solution(u0, du_zero, x, 0.0, v) == doctest::Approx(u0(x)));
        const double t = 0.7;
        CHECK(dalembert_solution(u0, du_zero, x, t, v) ==
              doctest::Approx(0.5 * (u0(x - v * t) + u0(x + v * t))).epsilon(1e-14));
        // right mover: du0 = -v u0'
        auto du_right = [v](double s) { return 2.0 * v * s * std::exp(-s * s); };
        CHECK(dalembert_solution(u0, du_right, x, t, v) == doctest::Approx(u0(x - v * t)).epsilon(1e-12));
    }
}

TEST_CASE("action area and normalization") {
    ActionWave zero{std::vector<cd>(16, cd(0.0)), 1.0, 0.1, 1.0};
    CHECK(action_area(zero) == 0.0);
    CHECK_THROWS_AS(normalize_action(zero, 1), ValidationError);

    // Gaussian eta with C_N = N hbar has A_D = N h
    const double hbar = 0.7, g = 40.0, k0 = 0.8;
    const int quanta = 3;
    ActionWave psi;
    psi.hbar = hbar;
    psi.spacing = 1.0;
    psi.psik.resize(256);
    psi.dk = 2.0 * wq::testing::kPi / 256.0;
    for (std::size_t j = 0; j < psi.size(); ++j) {
        const double d = psi.wavenumber(j) - k0;
        psi.psik[j] = std::sqrt(quanta * hbar * std::sqrt(g / wq::testing::kPi) * std::exp(-g * d * d));
    }
    CHECK(action_area(psi) == doctest::Approx(quanta * 2.0 * wq::testing::kPi * hbar).epsilon(1e-12));

    const ActionWave scaled = normalize_action(psi, 5);
    CHECK(action_area(scaled) == doctest::Approx(5.0 * 2.0 * wq::testing::kPi * hbar).epsilon(1e-13));
}

TEST_CASE("site representation") {
    Rng rng(3);
    ActionWave psi;
    psi.hbar = 1.0;
    psi.spacing = 0.5;
    psi.psik.resize(64);
    psi.dk = 2.0 * wq::testing::kPi / (0.5 * 64.0);
    for (auto& z : psi.psik) z = rng.complex_normal();
    const auto sites = site_representation(psi);
    double norm_k = 0.0;
    for (const cd& z : psi.psik) norm_k += std::norm(z);
    CHECK(site_norm(sites, psi.spacing) == doctest::Approx(norm_k * psi.dk).epsilon(1e-12));
    for (std::size_t n : {0u, 7u, 31u})
        CHECK(std::abs(sites[n] - wq::testing::site_value(psi, psi.spacing * static_cast<double>(n))) < 1e-12);
    const ActionWave back = action_wave_from_sites(sites, psi.spacing, psi.hbar);
    for (std::size_t j = 0; j < psi.size(); ++j) CHECK(std::abs(back.psik[j] - psi.psik[j]) < 1e-12);
}
