#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <vector>

#include "wavequanta/em_field.hpp"

namespace wq::em {

/// Integer wavevector label: k = (2 pi / L) * index.
using Index3 = std::array<int, 3>;

Index3 negate(const Index3& index);

/// Transverse potential mode A'_k with its time derivative. Field convention:
/// A(x) = (2 pi)^{-3/2} sum_k dk^3 exp(-i k.x) A'_k.
struct PhotonMode {
    Index3 index{};
    CVec3 A = CVec3::Zero();
    CVec3 Adot = CVec3::Zero();
};

struct PhotonModeSet {
    double box_length = 1.0;
    MediumParams medium;
    /// When set, every mode must have a partner at -k with conjugate amplitudes.
    bool real_field = true;
    std::vector<PhotonMode> modes;

    double wavenumber_step() const;
    Vec3 wavevector(const Index3& index) const;
    double omega(const Index3& index) const;

    /// max |k.A'| / (|k| |A'|) over modes, also covering Adot.
    double transversality_violation() const;
    /// max |conj(A'_k) - A'_{-k}| relative to the largest amplitude; missing partners count fully.
    double reality_violation() const;
    /// Throws ValidationError for k = 0, duplicate indices, non-transverse amplitudes
    /// (tolerance 1e-12) or, with real_field set, a reality violation above 1e-12.
    void validate() const;
};

struct PhotonPsiMode {
    Index3 index{};
    CVec3 psi = CVec3::Zero();
};

/// Vector action wave psi'_k over a sparse set of modes.
struct PhotonActionWave {
    double box_length = 1.0;
    MediumParams medium;
    double hbar = 1.0;
    std::vector<PhotonPsiMode> modes;

    double wavenumber_step() const;
    Vec3 wavevector(const Index3& index) const;
    double omega(const Index3& index) const;

    /// |e_tau . psi'|^2 for the two real polarization vectors of mode i.
    std::array<double, 2> eta_linear(std::size_t i) const;
    /// |conj(e_sigma) . psi'|^2 for sigma = +1 (entry 0) and sigma = -1 (entry 1).
    std::array<double, 2> eta_helical(std::size_t i) const;
    double transversality_violation() const;
};

/// psi'_k = sqrt(omega / (2 mu v^2)) (conj(A'_k) + (i / omega) conj(Adot'_k)).
PhotonActionWave photon_action_wave(const PhotonModeSet& modes, double hbar);

/// Inverse of photon_action_wave. The result holds every index of psi and its negative,
/// so the reconstructed field is real; a missing psi'_{-k} counts as zero.
PhotonModeSet modes_from_psi(const PhotonActionWave& psi);

/// Harmonic evolution A'' = -omega^2 A' of every mode.
PhotonModeSet evolve_modes(const PhotonModeSet& modes, double t);
/// psi'_k(t) = psi'_k exp(-i omega_k t).
PhotonActionWave evolve_psi(const PhotonActionWave& psi, double t);

/// A(x) = c (2 pi)^{-3/2} sum dk^3 (2 eps omega)^{-1/2} (exp(i k.x) psi'_k + c.c.).
Vec3 potential_at(const PhotonActionWave& psi, const Vec3& x);
RealField potential_from_psi(const PhotonActionWave& psi, const Grid3& grid);
RealField potential_rate_from_psi(const PhotonActionWave& psi, const Grid3& grid);

/// Projects sampled A and dA/dt on a cubic grid of side box_length back onto modes.
/// Bins whose amplitude is below threshold times the largest one are dropped, as are Nyquist bins.
PhotonModeSet modes_from_potential(const RealField& A, const RealField& Adot, const MediumParams& medium,
                                   double threshold = 1e-13);

/// E = -Adot / c, B = curl A, evaluated mode by mode at every grid point.
FieldSnapshot snapshot_from_modes(const PhotonModeSet& modes, const Grid3& grid);

/// A_W = 2 pi sum dk^3 |psi'_k|^2.
double action_area_3d(const PhotonActionWave& psi);
/// A_W / h.
double photon_number(const PhotonActionWave& psi);
/// Rescales psi so that A_W = quanta * h. Throws for a zero wave or quanta < 1.
PhotonActionWave normalize_photons(const PhotonActionWave& psi, int quanta);

/// Photon quasi-density stored per momentum cell p = hbar dk s / 2 (s = k1 + k2 in index units)
/// as a sparse Fourier series in x over the differences d = k1 - k2:
/// f(x, p_s) = P sum_d Re(c_{s,d} exp(i dk d.x)), P = (2 dk)^3 / ((2 pi)^3 hbar^4).
struct PhotonWignerCell {
    Index3 sum{};
    std::vector<std::pair<Index3, cd>> harmonics;
};

struct PhotonWigner {
    double box_length = 1.0;
    double hbar = 1.0;
    double prefactor = 0.0;
    std::vector<PhotonWignerCell> cells;

    double wavenumber_step() const;
    double dp() const { return 0.5 * hbar * wavenumber_step(); }
    Vec3 momentum(std::size_t cell) const;
    double value(std::size_t cell, const Vec3& x) const;
    /// Integral over the box and every momentum cell.
    double total() const;
    /// Integral of f(x, p) energy(p) over the box and every momentum cell.
    double weighted_total(const std::function<double(const Vec3&)>& energy) const;
    /// sum_p f(x, p) dp^3 at every grid point; equals |psi(x)|^2 / hbar.
    ScalarField x_marginal(const Grid3& grid) const;
};

PhotonWigner wigner_3d(const PhotonActionWave& psi);

/// Wave-field energy three ways: box integral of w, mode sum sum dk^3 omega |psi'|^2,
/// and the phase-space integral of f_N v |p|.
double energy_x_space(const PhotonModeSet& modes, const Grid3& grid);
double energy_k_space(const PhotonActionWave& psi);
double energy_phase_space(const PhotonWigner& wigner, const MediumParams& medium);

} // namespace wq::em
