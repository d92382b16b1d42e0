#pragma once

// Independent reference implementations used only by tests. Nothing here calls the FFT
// wrapper or the quadrature backends of the library.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <span>
#include <vector>

#include "wavequanta/lattice.hpp"
#include "wavequanta/photon.hpp"

namespace wq::testing {

using cd = std::complex<double>;
inline constexpr double kPi = std::numbers::pi;

/// Deterministic generator wrapper; every property test seeds its own instance.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}
    double uniform(double lo = 0.0, double hi = 1.0) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
    double normal() { return std::normal_distribution<double>(0.0, 1.0)(engine_); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }
    cd complex_normal() { return {normal(), normal()}; }

  private:
    std::mt19937_64 engine_;
};

/// out[m] = sum_n in[n] exp(sign i 2 pi m n / N), O(N^2).
inline std::vector<cd> brute_dft(std::span<const cd> in, int sign) {
    const std::size_t n = in.size();
    std::vector<cd> out(n, cd(0.0));
    for (std::size_t m = 0; m < n; ++m)
        for (std::size_t j = 0; j < n; ++j)
            out[m] += in[j] * std::polar(1.0, sign * 2.0 * kPi * static_cast<double>((m * j) % n) / static_cast<double>(n));
    return out;
}

/// u'_k = sqrt(l / 2 pi) sum_n exp(+i k l n) u_n at the centred wavenumbers.
inline std::vector<cd> brute_modes(std::span<const double> u, double spacing, int sign) {
    const std::size_t n = u.size();
    const double dk = 2.0 * kPi / (spacing * static_cast<double>(n));
    std::vector<cd> out(n, cd(0.0));
    for (std::size_t j = 0; j < n; ++j) {
        const double k = (static_cast<double>(j) - static_cast<double>(n / 2)) * dk;
        for (std::size_t s = 0; s < n; ++s) out[j] += u[s] * std::polar(1.0, sign * k * spacing * static_cast<double>(s));
        out[j] *= std::sqrt(spacing / (2.0 * kPi));
    }
    return out;
}

inline lattice::LatticeState random_state(const lattice::LatticeParams& params, Rng& rng) {
    lattice::LatticeState s = lattice::LatticeState::zeros(params);
    for (auto& u : s.u) u = rng.normal();
    for (auto& v : s.v) v = rng.normal();
    return s;
}

/// Random state with zero mean displacement and momentum (no energy in a zero-frequency cell).
inline lattice::LatticeState random_state_zero_mean(const lattice::LatticeParams& params, Rng& rng) {
    lattice::LatticeState s = random_state(params, rng);
    double mu = 0.0, mv = 0.0;
    for (std::size_t i = 0; i < s.u.size(); ++i) {
        mu += s.u[i];
        mv += s.v[i];
    }
    mu /= static_cast<double>(s.u.size());
    mv /= static_cast<double>(s.v.size());
    for (std::size_t i = 0; i < s.u.size(); ++i) {
        s.u[i] -= mu;
        s.v[i] -= mv;
    }
    return s;
}

/// Wigner value at (x, p_s) by direct summation over pairs q1 + q2 = s.
inline double wigner_pair_sum(const lattice::ActionWave& psi, double x, long long s) {
    const auto n = static_cast<long long>(psi.psik.size());
    const long long half = n / 2;
    cd sum = 0.0;
    for (long long q2 = -half; q2 < half; ++q2) {
        const long long q1 = s - q2;
        if (q1 < -half || q1 >= half) continue;
        const double arg = static_cast<double>(q1 - q2) * psi.dk * x;
        sum += std::polar(1.0, arg) * psi.psik[static_cast<std::size_t>(q1 + half)] *
               std::conj(psi.psik[static_cast<std::size_t>(q2 + half)]);
    }
    return psi.dk / (kPi * psi.hbar * psi.hbar) * sum.real();
}

/// psi(x) = (2 pi)^{-1/2} sum_k dk exp(i k x) psi'_k by direct summation.
inline cd site_value(const lattice::ActionWave& psi, double x) {
    cd sum = 0.0;
    for (std::size_t j = 0; j < psi.psik.size(); ++j) sum += std::polar(1.0, psi.wavenumber(j) * x) * psi.psik[j];
    return psi.dk / std::sqrt(2.0 * kPi) * sum;
}

/// Root of x = 5 (1 - exp(-x)) by bisection on [1, 10].
inline double wien_root() {
    double lo = 1.0, hi = 10.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double g = mid - 5.0 * (1.0 - std::exp(-mid));
        (g > 0.0 ? hi : lo) = mid;
    }
    return 0.5 * (lo + hi);
}

/// zeta(3) from the partial sum plus the Euler-Maclaurin tail.
inline double zeta3() {
    const int n = 1000;
    double sum = 0.0;
    for (int k = n; k >= 1; --k) sum += 1.0 / (static_cast<double>(k) * k * k);
    const double nn = n;
    return sum + 1.0 / (2.0 * nn * nn) - 1.0 / (2.0 * nn * nn * nn) + 1.0 / (4.0 * nn * nn * nn * nn);
}

/// Random transverse complex vector orthogonal to k.
inline em::CVec3 random_transverse(const em::Vec3& k, Rng& rng) {
    const auto basis = em::polarization_basis(k);
    return rng.complex_normal() * basis[0].cast<cd>() + rng.complex_normal() * basis[1].cast<cd>();
}

/// Random action wave over `count` distinct nonzero indices with |index_a| <= reach.
inline em::PhotonActionWave random_photon_wave(Rng& rng, int count, int reach, double box, double hbar,
                                               const em::MediumParams& medium) {
    em::PhotonActionWave psi;
    psi.box_length = box;
    psi.medium = medium;
    psi.hbar = hbar;
    std::vector<em::Index3> used;
    while (static_cast<int>(psi.modes.size()) < count) {
        const em::Index3 idx{rng.integer(-reach, reach), rng.integer(-reach, reach), rng.integer(-reach, reach)};
        if (idx[0] == 0 && idx[1] == 0 && idx[2] == 0) continue;
        bool seen = false;
        for (const auto& u : used) seen = seen || u == idx;
        if (seen) continue;
        used.push_back(idx);
        psi.modes.push_back({idx, random_transverse(psi.wavevector(idx), rng)});
    }
    return psi;
}

} // namespace wq::testing
