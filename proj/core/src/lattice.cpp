#include "wavequanta/lattice.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>
#include <string>

#include "wavequanta/error.hpp"
#include "wavequanta/fft.hpp"

namespace wq::lattice {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Slot j holds wavenumber index q = j - N/2; the FFT stores q at q mod N.
std::size_t fft_slot(std::size_t j, std::size_t n) { return (j + n / 2) % n; }

std::vector<cd> to_fft_order(std::span<const cd> centered) {
    const std::size_t n = centered.size();
    std::vector<cd> out(n);
    for (std::size_t j = 0; j < n; ++j) out[fft_slot(j, n)] = centered[j];
    return out;
}

std::vector<cd> to_centered_order(std::span<const cd> fft_order) {
    const std::size_t n = fft_order.size();
    std::vector<cd> out(n);
    for (std::size_t j = 0; j < n; ++j) out[j] = fft_order[fft_slot(j, n)];
    return out;
}

void check_state(const LatticeState& state, const LatticeParams& params) {
    if (state.u.size() != params.sites || state.v.size() != params.sites)
        throw ValidationError("lattice state length does not match the site count");
}

} // namespace

void LatticeParams::validate() const {
    if (!(mass > 0.0)) throw ValidationError("lattice: mass must be positive");
    if (!(kappa > 0.0)) throw ValidationError("lattice: kappa must be positive");
    if (!(omega0 >= 0.0)) throw ValidationError("lattice: omega0 must be non-negative");
    if (!(spacing > 0.0)) throw ValidationError("lattice: spacing must be positive");
    if (sites < 2 || sites % 2 != 0) throw ValidationError("lattice: sites must be even and >= 2");
}

double LatticeParams::max_frequency() const { return std::sqrt(omega0 * omega0 + 4.0 * kappa); }

double LatticeParams::sound_speed() const { return spacing * std::sqrt(kappa); }

double LatticeParams::wavenumber_step() const { return kTwoPi / length(); }

double LatticeParams::wavenumber(std::size_t j) const {
    const auto q = static_cast<double>(static_cast<long long>(j) - static_cast<long long>(sites / 2));
    return q * wavenumber_step();
}

LatticeState LatticeState::zeros(const LatticeParams& params) {
    return {std::vector<double>(params.sites, 0.0), std::vector<double>(params.sites, 0.0), 0.0};
}

double ModeSpectrum::reality_violation() const {
    double scale = 0.0;
    double worst = 0.0;
    for (std::size_t j = 0; j < uk.size(); ++j) {
        const std::size_t jp = params.partner(j);
        scale = std::max({scale, std::abs(uk[j]), std::abs(vk[j])});
        worst = std::max({worst, std::abs(std::conj(uk[j]) - uk[jp]), std::abs(std::conj(vk[j]) - vk[jp])});
    }
    return scale > 0.0 ? worst / scale : 0.0;
}

double ActionWave::wavenumber(std::size_t j) const {
    const auto q = static_cast<double>(static_cast<long long>(j) - static_cast<long long>(psik.size() / 2));
    return q * dk;
}

std::vector<double> ActionWave::eta() const {
    std::vector<double> out(psik.size());
    std::transform(psik.begin(), psik.end(), out.begin(), [](cd z) { return std::norm(z); });
    return out;
}

std::vector<double> ActionWave::phase() const {
    std::vector<double> out(psik.size());
    std::transform(psik.begin(), psik.end(), out.begin(), [](cd z) { return std::arg(z); });
    return out;
}

double hamiltonian_energy(const LatticeState& state, const LatticeParams& params) {
    check_state(state, params);
    const std::size_t n = params.sites;
    const double m = params.mass;
    double energy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double du = state.u[i] - state.u[(i + n - 1) % n];
        energy += state.v[i] * state.v[i] / (2.0 * m) +
                  0.5 * m * params.omega0 * params.omega0 * state.u[i] * state.u[i] +
                  0.5 * m * params.kappa * du * du;
    }
    return energy;
}

std::vector<double> forces(std::span<const double> u, const LatticeParams& params) {
    const std::size_t n = u.size();
    const double m = params.mass;
    std::vector<double> f(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double lap = u[(i + 1) % n] + u[(i + n - 1) % n] - 2.0 * u[i];
        f[i] = -m * params.omega0 * params.omega0 * u[i] + m * params.kappa * lap;
    }
    return f;
}

LatticeState leapfrog_step(const LatticeState& state, const LatticeParams& params, double dt) {
    LatticeState next = state;
    leapfrog_advance(next, params, dt, 1);
    return next;
}

void leapfrog_advance(LatticeState& state, const LatticeParams& params, double dt, std::size_t steps) {
    params.validate();
    check_state(state, params);
    const double limit = 2.0 / params.max_frequency();
    if (!(dt > 0.0) || !(dt < limit))
        throw ValidationError("leapfrog: dt = " + std::to_string(dt) + " outside stability bound (0, " +
                              std::to_string(limit) + ")");

    const double half = 0.5 * dt;
    const double inv_m = 1.0 / params.mass;
    std::vector<double> f = forces(state.u, params);
    for (std::size_t s = 0; s < steps; ++s) {
        for (std::size_t i = 0; i < f.size(); ++i) state.v[i] += half * f[i];
        for (std::size_t i = 0; i < f.size(); ++i) state.u[i] += dt * inv_m * state.v[i];
        f = forces(state.u, params);
        for (std::size_t i = 0; i < f.size(); ++i) state.v[i] += half * f[i];
        state.t += dt;
    }
}

ModeSpectrum dft_to_modes(const LatticeState& state, const LatticeParams& params) {
    params.validate();
    check_state(state, params);
    const std::size_t n = params.sites;
    const double scale = std::sqrt(params.spacing / kTwoPi);

    std::vector<cd> u(state.u.begin(), state.u.end());
    std::vector<cd> v(state.v.begin(), state.v.end());
    fft::transform(u, fft::Sign::Plus);
    fft::transform(v, fft::Sign::Minus);

    ModeSpectrum spec{to_centered_order(u), to_centered_order(v), params};
    for (std::size_t j = 0; j < n; ++j) {
        spec.uk[j] *= scale;
        spec.vk[j] *= scale;
    }
    return spec;
}

LatticeState idft_from_modes(const ModeSpectrum& spectrum) {
    const LatticeParams& params = spectrum.params;
    params.validate();
    const std::size_t n = params.sites;
    if (spectrum.uk.size() != n || spectrum.vk.size() != n)
        throw ValidationError("mode spectrum length does not match the site count");

    const double scale = std::sqrt(params.spacing / kTwoPi) * params.wavenumber_step();
    std::vector<cd> u = to_fft_order(spectrum.uk);
    std::vector<cd> v = to_fft_order(spectrum.vk);
    fft::transform(u, fft::Sign::Minus);
    fft::transform(v, fft::Sign::Plus);

    LatticeState state = LatticeState::zeros(params);
    for (std::size_t i = 0; i < n; ++i) {
        state.u[i] = scale * u[i].real();
        state.v[i] = scale * v[i].real();
    }
    return state;
}

double dispersion(double k, const LatticeParams& params) {
    const double s = std::sin(0.5 * k * params.spacing);
    return std::sqrt(params.omega0 * params.omega0 + 4.0 * params.kappa * s * s);
}

double group_velocity(double k, const LatticeParams& params) {
    const double w = dispersion(k, params);
    if (w == 0.0) return params.sound_speed();
    return params.kappa * params.spacing * std::sin(k * params.spacing) / w;
}

std::vector<double> mode_energy(const ModeSpectrum& spectrum) {
    const double violation = spectrum.reality_violation();
    if (violation > 1e-9)
        throw ValidationError("mode_energy: reality constraint violated (relative " + std::to_string(violation) +
                              ")");
    const LatticeParams& p = spectrum.params;
    std::vector<double> out(spectrum.uk.size());
    for (std::size_t j = 0; j < out.size(); ++j) {
        const double w = dispersion(p.wavenumber(j), p);
        out[j] = std::norm(spectrum.vk[j]) / (2.0 * p.mass) + 0.5 * p.mass * w * w * std::norm(spectrum.uk[j]);
    }
    return out;
}

double total_mode_energy(const ModeSpectrum& spectrum) {
    const std::vector<double> h = mode_energy(spectrum);
    double sum = 0.0;
    for (double e : h) sum += e;
    return sum * spectrum.params.wavenumber_step();
}

ModeSpectrum evolve_modes_exact(const ModeSpectrum& spectrum, double t) {
    const LatticeParams& p = spectrum.params;
    ModeSpectrum out = spectrum;
    for (std::size_t j = 0; j < spectrum.uk.size(); ++j) {
        const std::size_t jp = p.partner(j);
        const double w = dispersion(p.wavenumber(j), p);
        const cd u = spectrum.uk[j];
        const cd vm = spectrum.vk[jp];  // v'_{-k} is the momentum conjugate to u'_k
        if (w == 0.0) {
            out.uk[j] = u + vm * (t / p.mass);
            continue;
        }
        const double c = std::cos(w * t);
        const double s = std::sin(w * t);
        out.uk[j] = u * c + vm * (s / (p.mass * w));
        out.vk[jp] = vm * c - u * (p.mass * w * s);
    }
    out.params = p;
    return out;
}

TravelingWave traveling_wave_init(std::span<const double> u0, int direction, const LatticeParams& params,
                                  double band_fraction) {
    params.validate();
    if (params.omega0 != 0.0)
        throw ValidationError(
            "traveling_wave_init: omega0 must be 0; one-way waves exist only on the massless branch "
            "where omega_k ~ v |k|");
    if (direction != 1 && direction != -1) throw ValidationError("traveling_wave_init: direction must be +1 or -1");
    if (u0.size() != params.sites) throw ValidationError("traveling_wave_init: profile length != sites");
    if (!(band_fraction > 0.0 && band_fraction <= 1.0))
        throw ValidationError("traveling_wave_init: band_fraction must lie in (0, 1]");

    LatticeState initial = LatticeState::zeros(params);
    std::copy(u0.begin(), u0.end(), initial.u.begin());
    ModeSpectrum spec = dft_to_modes(initial, params);

    const std::size_t n = params.sites;
    const double edge = band_fraction * std::numbers::pi / params.spacing;
    double inside = 0.0;
    double outside = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        if (j == n / 2) continue;  // k = 0
        const double k = params.wavenumber(j);
        const double weight = std::norm(spec.uk[j]);
        if (j == 0 || std::abs(k) > edge) outside += weight; else inside += weight;
    }

    spec.uk[0] = 0.0;
    spec.vk[0] = 0.0;
    spec.vk[n / 2] = 0.0;
    const double d = static_cast<double>(direction);
    for (std::size_t j = 1; j < n; ++j) {
        if (j == n / 2) continue;
        const double k = params.wavenumber(j);
        const double sigma = k > 0.0 ? 1.0 : -1.0;
        const double w = dispersion(k, params);
        spec.vk[j] = cd(0.0, -d * params.mass * sigma * w) * spec.uk[params.partner(j)];
    }

    TravelingWave out;
    out.state = idft_from_modes(spec);
    out.out_of_band_fraction = (inside + outside) > 0.0 ? outside / (inside + outside) : 0.0;
    return out;
}

double dalembert_solution(const std::function<double(double)>& u0, const std::function<double(double)>& du0,
                          double x, double t, double v) {
    if (!(v > 0.0)) throw ValidationError("dalembert_solution: v must be positive");
    const double a = x - v * t;
    const double b = x + v * t;
    double value = 0.5 * (u0(a) + u0(b));
    if (a != b) {
        using boost::math::quadrature::gauss_kronrod;
        value += gauss_kronrod<double, 61>::integrate(du0, a, b, 15, 1e-14) / (2.0 * v);
    }
    return value;
}

ActionWave psi_from_modes(const ModeSpectrum& spectrum, double hbar) {
    if (!(hbar > 0.0)) throw ValidationError("psi_from_modes: hbar must be positive");
    const LatticeParams& p = spectrum.params;
    const std::vector<double> h = mode_energy(spectrum);
    double total = 0.0;
    for (double e : h) total += e;

    ActionWave psi;
    psi.hbar = hbar;
    psi.dk = p.wavenumber_step();
    psi.spacing = p.spacing;
    psi.psik.assign(spectrum.uk.size(), cd(0.0));
    for (std::size_t j = 0; j < psi.psik.size(); ++j) {
        const double w = dispersion(p.wavenumber(j), p);
        if (w == 0.0) {
            if (h[j] > 1e-12 * total && h[j] > 0.0)
                throw ValidationError(
                    "psi_from_modes: energy in a zero-frequency mode; remove the mean momentum first");
            continue;
        }
        const double a = std::sqrt(0.5 * p.mass * w);
        psi.psik[j] = a * (std::conj(spectrum.uk[j]) + cd(0.0, 1.0) * spectrum.vk[j] / (p.mass * w));
    }
    return psi;
}

ModeSpectrum modes_from_psi(const ActionWave& psi, const LatticeParams& params) {
    params.validate();
    if (psi.psik.size() != params.sites) throw ValidationError("modes_from_psi: size mismatch");
    ModeSpectrum spec;
    spec.params = params;
    spec.uk.assign(params.sites, cd(0.0));
    spec.vk.assign(params.sites, cd(0.0));
    for (std::size_t j = 0; j < params.sites; ++j) {
        const double w = dispersion(params.wavenumber(j), params);
        if (w == 0.0) continue;
        const double a = std::sqrt(0.5 * params.mass * w);
        const cd plus = psi.psik[j];
        const cd minus_conj = std::conj(psi.psik[params.partner(j)]);
        spec.uk[j] = std::conj(plus + minus_conj) / (2.0 * a);
        spec.vk[j] = params.mass * w * (plus - minus_conj) / (cd(0.0, 2.0) * a);
    }
    return spec;
}

ActionWave evolve_action_wave(const ActionWave& psi, const std::function<double(double)>& omega, double t) {
    ActionWave out = psi;
    for (std::size_t j = 0; j < out.psik.size(); ++j)
        out.psik[j] *= std::polar(1.0, -omega(psi.wavenumber(j)) * t);
    return out;
}

double action_area(const ActionWave& psi) {
    double sum = 0.0;
    for (const cd& z : psi.psik) sum += std::norm(z);
    return kTwoPi * psi.dk * sum;
}

ActionWave normalize_action(const ActionWave& psi, int quanta) {
    if (quanta < 1) throw ValidationError("normalize_action: quanta must be >= 1");
    const double area = action_area(psi);
    if (!(area > 0.0)) throw ValidationError("normalize_action: zero wave cannot be normalized");
    const double scale = std::sqrt(quanta * kTwoPi * psi.hbar / area);
    ActionWave out = psi;
    for (cd& z : out.psik) z *= scale;
    return out;
}

std::vector<cd> site_representation(const ActionWave& psi) {
    std::vector<cd> buf = to_fft_order(psi.psik);
    fft::transform(buf, fft::Sign::Plus);
    const double scale = psi.dk / std::sqrt(kTwoPi);
    for (cd& z : buf) z *= scale;
    return buf;
}

ActionWave action_wave_from_sites(std::span<const cd> sites, double spacing, double hbar) {
    const std::size_t n = sites.size();
    if (n < 2 || n % 2 != 0) throw ValidationError("action_wave_from_sites: need an even number of sites");
    if (!(spacing > 0.0) || !(hbar > 0.0)) throw ValidationError("action_wave_from_sites: bad spacing or hbar");
    std::vector<cd> buf(sites.begin(), sites.end());
    fft::transform(buf, fft::Sign::Minus);
    const double scale = spacing / std::sqrt(kTwoPi);
    for (cd& z : buf) z *= scale;
    ActionWave psi;
    psi.psik = to_centered_order(buf);
    psi.hbar = hbar;
    psi.spacing = spacing;
    psi.dk = kTwoPi / (spacing * static_cast<double>(n));
    return psi;
}

double site_norm(std::span<const cd> sites, double spacing) {
    double sum = 0.0;
    for (const cd& z : sites) sum += std::norm(z);
    return spacing * sum;
}

} // namespace wq::lattice
