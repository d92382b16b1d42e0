#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace wq::lattice {

using cd = std::complex<double>;

/// Periodic chain of n_sites oscillators with on-site frequency omega0 and coupling kappa.
struct LatticeParams {
    double mass = 1.0;
    double omega0 = 0.0;
    double kappa = 1.0;    ///< 1/time^2
    double spacing = 1.0;  ///< lattice constant
    std::size_t sites = 64;

    /// Throws ValidationError unless m, kappa, spacing > 0, omega0 >= 0 and sites is even and >= 2.
    void validate() const;

    /// sqrt(omega0^2 + 4 kappa), the zone-edge frequency.
    double max_frequency() const;
    /// spacing * sqrt(kappa).
    double sound_speed() const;
    double wavenumber_step() const;
    double length() const { return spacing * static_cast<double>(sites); }

    /// Wavenumber of array slot j; slots run over (2 pi / L) * {-N/2, ..., N/2 - 1}.
    double wavenumber(std::size_t j) const;
    /// Slot holding -k for slot j. The Nyquist slot (j = 0) is its own partner.
    std::size_t partner(std::size_t j) const { return (sites - j) % sites; }
};

struct LatticeState {
    std::vector<double> u;  ///< displacements u_n
    std::vector<double> v;  ///< momenta v_n
    double t = 0.0;

    static LatticeState zeros(const LatticeParams& params);
};

/// Complex mode coordinates on the centered k-grid. uk carries exp(+i k l n), vk exp(-i k l n),
/// both scaled by sqrt(l / 2 pi) so that sum_k dk |u'_k|^2 = sum_n u_n^2.
struct ModeSpectrum {
    std::vector<cd> uk;
    std::vector<cd> vk;
    LatticeParams params;

    /// max over k of |conj(u'_k) - u'_{-k}| and the same for v', relative to the largest amplitude.
    double reality_violation() const;
};

/// Action wave psi'_k with its action-angle view eta_k = |psi'_k|^2, phi_k = arg psi'_k.
struct ActionWave {
    std::vector<cd> psik;
    double hbar = 1.0;
    double dk = 1.0;
    double spacing = 1.0;

    std::size_t size() const { return psik.size(); }
    double wavenumber(std::size_t j) const;
    std::vector<double> eta() const;
    std::vector<double> phase() const;
};

double hamiltonian_energy(const LatticeState& state, const LatticeParams& params);

/// Force on every site: -m omega0^2 u_n + m kappa (u_{n+1} + u_{n-1} - 2 u_n).
std::vector<double> forces(std::span<const double> u, const LatticeParams& params);

/// One kick-drift-kick step. Rejects dt <= 0 or dt >= 2 / max_frequency().
LatticeState leapfrog_step(const LatticeState& state, const LatticeParams& params, double dt);

/// In-place variant for long runs; same arithmetic as repeated leapfrog_step.
void leapfrog_advance(LatticeState& state, const LatticeParams& params, double dt, std::size_t steps);

ModeSpectrum dft_to_modes(const LatticeState& state, const LatticeParams& params);
LatticeState idft_from_modes(const ModeSpectrum& spectrum);

/// omega_k = sqrt(omega0^2 + 4 kappa sin^2(k l / 2)).
double dispersion(double k, const LatticeParams& params);
double group_velocity(double k, const LatticeParams& params);

/// H'_k = |v'_k|^2 / 2m + m omega_k^2 |u'_k|^2 / 2 per slot. Throws if the reality constraint fails.
std::vector<double> mode_energy(const ModeSpectrum& spectrum);
/// sum_k dk H'_k; equals hamiltonian_energy of the corresponding state.
double total_mode_energy(const ModeSpectrum& spectrum);

/// Exact rotation of every (u'_k, v'_{-k}) pair by omega_k t. Zero-frequency cells drift freely.
ModeSpectrum evolve_modes_exact(const ModeSpectrum& spectrum, double t);

struct TravelingWave {
    LatticeState state;
    /// Share of sum |u'_k|^2 (k != 0) lying outside |k| <= band_fraction * pi / l.
    double out_of_band_fraction = 0.0;
};

/// Massless-chain state that translates rigidly along direction (+1 or -1) up to dispersion.
/// The Nyquist component of u0 is removed (it cannot carry a one-way wave).
TravelingWave traveling_wave_init(std::span<const double> u0, int direction, const LatticeParams& params,
                                  double band_fraction = 0.5);

/// 1/2 [u0(x - vt) + u0(x + vt)] + (1 / 2v) int_{x - vt}^{x + vt} du0(s) ds.
double dalembert_solution(const std::function<double(double)>& u0, const std::function<double(double)>& du0,
                          double x, double t, double v);

/// psi'_k = sqrt(m omega_k / 2) (conj(u'_k) + i v'_k / (m omega_k)).
/// A zero-frequency cell is left at psi' = 0; it must hold at most 1e-12 of the total energy.
ActionWave psi_from_modes(const ModeSpectrum& spectrum, double hbar);
ModeSpectrum modes_from_psi(const ActionWave& psi, const LatticeParams& params);

/// psi'_k(t) = psi'_k exp(-i omega(k) t) for an arbitrary dispersion relation.
ActionWave evolve_action_wave(const ActionWave& psi, const std::function<double(double)>& omega, double t);

/// A_D = 2 pi sum_k dk eta_k.
double action_area(const ActionWave& psi);
/// Rescales psi so that A_D = quanta * h. Throws for a zero wave or quanta < 1.
ActionWave normalize_action(const ActionWave& psi, int quanta);

/// psi_{n l} = (2 pi)^{-1/2} sum_k dk exp(i k l n) psi'_k, with n running over 0..N-1.
std::vector<cd> site_representation(const ActionWave& psi);
/// Inverse of site_representation.
ActionWave action_wave_from_sites(std::span<const cd> sites, double spacing, double hbar);

/// l sum_n |psi_{n l}|^2.
double site_norm(std::span<const cd> sites, double spacing);

} // namespace wq::lattice
