#include "wavequanta/wigner.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "wavequanta/error.hpp"
#include "wavequanta/fft.hpp"
#include "wavequanta/parallel.hpp"

namespace wq::wigner {

using lattice::cd;

namespace {

WignerGrid transform_rows(std::span<const cd> amplitude, double dk, double spacing, double hbar, double prefactor) {
    const std::size_t n = amplitude.size();
    const auto half = static_cast<long long>(n / 2);
    const auto ln = static_cast<long long>(n);

    WignerGrid grid;
    grid.hbar = hbar;
    grid.dx = spacing;
    grid.dp = 0.5 * hbar * dk;
    grid.x.resize(n);
    for (std::size_t i = 0; i < n; ++i) grid.x[i] = (static_cast<double>(i) - static_cast<double>(half)) * spacing;
    grid.p.resize(2 * n);
    for (std::size_t r = 0; r < 2 * n; ++r) grid.p[r] = (static_cast<double>(r) - static_cast<double>(n)) * grid.dp;
    grid.f.assign(2 * n * n, 0.0);

    std::vector<double> row_imag(2 * n, 0.0);
    parallel_for(2 * n, [&](std::size_t r) {
        const long long s = static_cast<long long>(r) - ln;
        std::vector<cd> row(n, cd(0.0));
        // pairs q1 + q2 = s with both indices in [-N/2, N/2)
        const long long q2_lo = std::max(-half, s - (half - 1));
        const long long q2_hi = std::min(half - 1, s + half);
        for (long long q2 = q2_lo; q2 <= q2_hi; ++q2) {
            const long long q1 = s - q2;
            const long long d = q1 - q2;
            const cd term = amplitude[static_cast<std::size_t>(q1 + half)] *
                            std::conj(amplitude[static_cast<std::size_t>(q2 + half)]);
            // shift to x_n = (n - N/2) l multiplies harmonic d by (-1)^d
            const std::size_t m = static_cast<std::size_t>(((d % ln) + ln) % ln);
            row[m] += (d % 2 == 0) ? term : -term;
        }
        fft::transform(row, fft::Sign::Plus);
        double imag = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            grid.f[r * n + i] = prefactor * row[i].real();
            imag = std::max(imag, std::abs(prefactor * row[i].imag()));
        }
        row_imag[r] = imag;
    });

    double fmax = 0.0;
    for (double v : grid.f) fmax = std::max(fmax, std::abs(v));
    const double imax = *std::max_element(row_imag.begin(), row_imag.end());
    grid.imag_residual = fmax > 0.0 ? imax / fmax : 0.0;
    return grid;
}

} // namespace

double WignerGrid::total() const {
    double sum = 0.0;
    for (double v : f) sum += v;
    return sum * dx * dp;
}

std::vector<double> WignerGrid::x_marginal() const {
    std::vector<double> out(nx(), 0.0);
    for (std::size_t ip = 0; ip < np(); ++ip)
        for (std::size_t ix = 0; ix < nx(); ++ix) out[ix] += at(ip, ix);
    for (double& v : out) v *= dp;
    return out;
}

std::vector<double> WignerGrid::p_marginal() const {
    std::vector<double> out(np(), 0.0);
    for (std::size_t ip = 0; ip < np(); ++ip) {
        double sum = 0.0;
        for (std::size_t ix = 0; ix < nx(); ++ix) sum += at(ip, ix);
        out[ip] = sum * dx;
    }
    return out;
}

std::vector<double> WignerGrid::p_marginal_on_mode_grid() const {
    const std::vector<double> rows = p_marginal();
    std::vector<double> out(np() / 2, 0.0);
    // row r = s + N with s = 2q or 2q + 1; mode slot j = q + N/2, so rows 2j and 2j + 1
    for (std::size_t j = 0; j < out.size(); ++j) out[j] = 0.5 * (rows[2 * j] + rows[2 * j + 1]);
    return out;
}

double WignerGrid::weighted_total(const std::function<double(double)>& energy) const {
    double sum = 0.0;
    for (std::size_t ip = 0; ip < np(); ++ip) {
        double row = 0.0;
        for (std::size_t ix = 0; ix < nx(); ++ix) row += at(ip, ix);
        sum += row * energy(p[ip]);
    }
    return sum * dx * dp;
}

void GaussianEtaParams::validate() const {
    if (!(width > 0.0)) throw ValidationError("gaussian eta: width g must be positive");
    if (quanta < 1) throw ValidationError("gaussian eta: quanta must be >= 1");
}

WignerGrid wigner_1d(const lattice::ActionWave& psi) {
    const std::size_t n = psi.psik.size();
    if (n < 2 || n % 2 != 0) throw ValidationError("wigner_1d: need an even number of modes");
    if (!(psi.hbar > 0.0)) throw ValidationError("wigner_1d: hbar must be positive");
    // (1 / 2 pi hbar^2) times the k-measure 2 dk of the half-difference sum
    const double prefactor = psi.dk / (std::numbers::pi * psi.hbar * psi.hbar);
    return transform_rows(psi.psik, psi.dk, psi.spacing, psi.hbar, prefactor);
}

WignerGrid wigner_1d_from_samples(std::span<const double> x, std::span<const cd> psi, double hbar) {
    if (x.size() != psi.size()) throw ValidationError("wigner_1d: x and psi lengths differ");
    if (x.size() < 2) throw ValidationError("wigner_1d: need at least two samples");
    const double spacing = x[1] - x[0];
    if (!(spacing > 0.0)) throw ValidationError("wigner_1d: x must be increasing");
    for (std::size_t i = 1; i < x.size(); ++i) {
        const double step = x[i] - x[i - 1];
        if (std::abs(step - spacing) > 1e-9 * spacing) throw ValidationError("wigner_1d: non-uniform x grid");
    }
    // samples are taken at x_n = x0 + n l; the transform wants them indexed from the origin
    lattice::ActionWave wave = lattice::action_wave_from_sites(psi, spacing, hbar);
    for (std::size_t j = 0; j < wave.psik.size(); ++j)
        wave.psik[j] *= std::polar(1.0, -wave.wavenumber(j) * x[0]);
    WignerGrid grid = wigner_1d(wave);
    return grid;
}

double wigner_gaussian_closed(const GaussianEtaParams& params, double x, double p, double t, double hbar) {
    const double dp = p - hbar * params.k0;
    const double dx = x - params.group_velocity * t;
    return params.quanta / (std::numbers::pi * hbar) *
           std::exp(-params.width * dp * dp / (hbar * hbar) - dx * dx / params.width);
}

lattice::ActionWave gaussian_action_wave(const GaussianEtaParams& params, std::size_t sites, double spacing,
                                         double hbar) {
    params.validate();
    if (sites < 2 || sites % 2 != 0) throw ValidationError("gaussian_action_wave: sites must be even");
    lattice::ActionWave psi;
    psi.hbar = hbar;
    psi.spacing = spacing;
    psi.dk = 2.0 * std::numbers::pi / (spacing * static_cast<double>(sites));
    psi.psik.resize(sites);
    const double cn = params.quanta * hbar;
    for (std::size_t j = 0; j < sites; ++j) {
        const double dk = psi.wavenumber(j) - params.k0;
        const double eta = cn * std::sqrt(params.width / std::numbers::pi) * std::exp(-params.width * dk * dk);
        psi.psik[j] = std::sqrt(eta);
    }
    return psi;
}

WignerGrid evolve_wigner_group_velocity(const WignerGrid& grid, const std::function<double(double)>& group_velocity,
                                        double t) {
    WignerGrid out = grid;
    if (t == 0.0) return out;
    const std::size_t n = grid.nx();
    const double dk = 2.0 * std::numbers::pi / grid.ring_length();
    parallel_for(grid.np(), [&](std::size_t ip) {
        const double shift = group_velocity(grid.p[ip]) * t;
        std::vector<cd> row(n);
        for (std::size_t ix = 0; ix < n; ++ix) row[ix] = grid.at(ip, ix);
        fft::transform(row, fft::Sign::Minus);
        for (std::size_t m = 0; m < n; ++m) {
            if (2 * m == n) {
                row[m] *= std::cos(static_cast<double>(m) * dk * shift);
                continue;
            }
            const double d = 2 * m < n ? static_cast<double>(m) : static_cast<double>(m) - static_cast<double>(n);
            row[m] *= std::polar(1.0, -d * dk * shift);
        }
        fft::transform(row, fft::Sign::Plus);
        for (std::size_t ix = 0; ix < n; ++ix) out.f[ip * n + ix] = row[ix].real() / static_cast<double>(n);
    });
    return out;
}

QuasiEnergy quasi_energy_density(const lattice::ModeSpectrum& spectrum, double hbar) {
    const lattice::ActionWave psi = lattice::psi_from_modes(spectrum, hbar);
    lattice::ActionWave phi = psi;
    for (std::size_t j = 0; j < phi.psik.size(); ++j)
        phi.psik[j] *= std::sqrt(lattice::dispersion(phi.wavenumber(j), spectrum.params));

    QuasiEnergy out;
    // f_E carries 1 / 2 pi where the number density carries 1 / 2 pi hbar
    const double prefactor = phi.dk / (std::numbers::pi * hbar);
    out.grid = transform_rows(phi.psik, phi.dk, phi.spacing, hbar, prefactor);
    out.total = out.grid.total();
    return out;
}

double ring_offset(double x, double center, double length) {
    double d = std::fmod(x - center, length);
    if (d < -0.5 * length) d += length;
    if (d >= 0.5 * length) d -= length;
    return d;
}

} // namespace wq::wigner
