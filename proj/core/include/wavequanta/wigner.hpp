#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "wavequanta/lattice.hpp"

namespace wq::wigner {

/// Phase-space distribution on the ring of N sites and the doubled momentum grid.
///
/// For a wave with N modes (spacing dk) the half-sum momenta p_s = hbar s dk / 2,
/// s = -N..N-1, are the rows; the sites x_n = (n - N/2) l are the columns. Because the
/// x-grid covers the whole ring, every grid satisfies f(x + L/2, p_s) = (-1)^s f(x, p_s)
/// exactly: only the half-ring |x - x_c| < L/4 around a localized packet carries information,
/// and comparisons with continuum distributions are made there.
struct WignerGrid {
    std::vector<double> x;
    std::vector<double> p;
    double dx = 0.0;
    double dp = 0.0;
    double hbar = 1.0;
    std::vector<double> f;  ///< row-major, f[ip * x.size() + ix]
    /// max |Im| of the raw transform divided by max |f|.
    double imag_residual = 0.0;

    std::size_t nx() const { return x.size(); }
    std::size_t np() const { return p.size(); }
    double at(std::size_t ip, std::size_t ix) const { return f[ip * x.size() + ix]; }
    double ring_length() const { return dx * static_cast<double>(x.size()); }

    /// sum_x sum_p f dx dp.
    double total() const;
    /// sum_p f(x, p) dp for every column; equals |psi(x)|^2 / hbar.
    std::vector<double> x_marginal() const;
    /// sum_x f(x, p) dx for every row.
    std::vector<double> p_marginal() const;
    /// Row pairs (2q, 2q + 1) merged onto the mode grid: entry q equals |psi'_q|^2 / hbar^2.
    std::vector<double> p_marginal_on_mode_grid() const;
    /// sum f(x, p) energy(p) dx dp.
    double weighted_total(const std::function<double(double)>& energy) const;
};

struct GaussianEtaParams {
    double k0 = 0.0;
    double width = 1.0;  ///< g, length^2
    int quanta = 1;      ///< N
    double group_velocity = 1.0;

    void validate() const;
};

/// k-space evaluation; the wave's own hbar is used.
WignerGrid wigner_1d(const lattice::ActionWave& psi);

/// Site samples psi(x_n) on a uniform, even-length grid; non-uniform spacing is rejected.
WignerGrid wigner_1d_from_samples(std::span<const double> x, std::span<const lattice::cd> psi, double hbar);

/// (N / pi hbar) exp(-g (p - hbar k0)^2 / hbar^2 - (x - v_g t)^2 / g).
double wigner_gaussian_closed(const GaussianEtaParams& params, double x, double p, double t, double hbar);

/// psi'_k = sqrt(eta_k) with eta_k = N hbar sqrt(g / pi) exp(-g (k - k0)^2) on the N-site ring.
lattice::ActionWave gaussian_action_wave(const GaussianEtaParams& params, std::size_t sites, double spacing,
                                         double hbar);

/// Translates every momentum row by group_velocity(p) * t with a spectral shift.
/// Exact for rows whose spatial harmonics stay below the Nyquist index, i.e. waves
/// occupying less than half the zone.
WignerGrid evolve_wigner_group_velocity(const WignerGrid& grid, const std::function<double(double)>& group_velocity,
                                        double t);

struct QuasiEnergy {
    WignerGrid grid;
    double total = 0.0;
};

/// f_E built from Phi'_k = sqrt(omega_k) psi'_k; its integral is the lattice energy.
QuasiEnergy quasi_energy_density(const lattice::ModeSpectrum& spectrum, double hbar);

/// Signed distance of x from center on a ring of the given length, in [-L/2, L/2).
double ring_offset(double x, double center, double length);

} // namespace wq::wigner
