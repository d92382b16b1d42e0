#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>

#include "wavequanta/lattice.hpp"
#include "wavequanta/photon.hpp"
#include "wavequanta/thermal.hpp"
#include "wavequanta/wigner.hpp"

namespace {

using namespace wq;

void BM_Leapfrog(benchmark::State& state) {
    lattice::LatticeParams p;
    p.sites = static_cast<std::size_t>(state.range(0));
    lattice::LatticeState s = lattice::LatticeState::zeros(p);
    for (std::size_t i = 0; i < p.sites; ++i) s.u[i] = std::sin(0.1 * static_cast<double>(i));
    const double dt = 0.01 / p.max_frequency();
    for (auto _ : state) {
        lattice::leapfrog_advance(s, p, dt, 100);
        benchmark::DoNotOptimize(s.u.data());
    }
    state.SetItemsProcessed(state.iterations() * 100 * state.range(0));
}
BENCHMARK(BM_Leapfrog)->RangeMultiplier(4)->Range(64, 4096);

void BM_Wigner1d(benchmark::State& state) {
    wigner::GaussianEtaParams gp;
    gp.k0 = 0.5;
    gp.width = 100.0;
    const auto psi = wigner::gaussian_action_wave(gp, static_cast<std::size_t>(state.range(0)), 1.0, 1.0);
    for (auto _ : state) benchmark::DoNotOptimize(wigner::wigner_1d(psi).f.data());
}
BENCHMARK(BM_Wigner1d)->RangeMultiplier(2)->Range(128, 1024)->Unit(benchmark::kMillisecond);

void BM_ModeTransform(benchmark::State& state) {
    lattice::LatticeParams p;
    p.sites = static_cast<std::size_t>(state.range(0));
    lattice::LatticeState s = lattice::LatticeState::zeros(p);
    for (std::size_t i = 0; i < p.sites; ++i) s.u[i] = std::cos(0.3 * static_cast<double>(i));
    for (auto _ : state) benchmark::DoNotOptimize(lattice::dft_to_modes(s, p).uk.data());
}
BENCHMARK(BM_ModeTransform)->RangeMultiplier(4)->Range(64, 16384);

void BM_PhotonEnergyRoutes(benchmark::State& state) {
    em::PhotonActionWave psi;
    psi.box_length = 1.0;
    const int reach = static_cast<int>(state.range(0));
    for (int i = 1; i <= reach; ++i) {
        const em::Index3 idx{i, 0, 1};
        psi.modes.push_back({idx, em::helical_vector(psi.wavevector(idx), 1)});
    }
    const em::Grid3 grid = em::Grid3::cube(4 * static_cast<std::size_t>(reach), 1.0);
    const em::PhotonModeSet modes = em::modes_from_psi(psi);
    for (auto _ : state) {
        benchmark::DoNotOptimize(em::energy_x_space(modes, grid));
        benchmark::DoNotOptimize(em::energy_phase_space(em::wigner_3d(psi), psi.medium));
    }
}
BENCHMARK(BM_PhotonEnergyRoutes)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_PlanckRelaxation(benchmark::State& state) {
    thermal::KineticParams kp;
    const auto p = thermal::log_momentum_grid(kp, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        const auto r = thermal::relax_to_equilibrium(thermal::homogeneous_state(p, 0.0), kp,
                                                     thermal::SourceModel::WienStimulated, 30.0, 100);
        benchmark::DoNotOptimize(r.max_distance.back());
    }
}
BENCHMARK(BM_PlanckRelaxation)->Arg(512)->Arg(4096);

void BM_WienPeak(benchmark::State& state) {
    thermal::KineticParams kp;
    for (auto _ : state) benchmark::DoNotOptimize(thermal::wien_peak(1.0, kp).product);
}
BENCHMARK(BM_WienPeak);

} // namespace

BENCHMARK_MAIN();
