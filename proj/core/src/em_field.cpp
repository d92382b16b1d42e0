#include "wavequanta/em_field.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "wavequanta/error.hpp"
#include "wavequanta/fft.hpp"
#include "wavequanta/parallel.hpp"

namespace wq::em {

namespace {

constexpr cd I{0.0, 1.0};

void require_same_grid(const Grid3& a, const Grid3& b, const char* what) {
    if (!(a == b)) throw ValidationError(std::string(what) + ": fields live on different grids");
}

template <class Series>
void require_series(const Series& series, std::size_t n, const char* what) {
    if (!series.empty() && series.size() != n)
        throw ValidationError(std::string(what) + ": auxiliary series length differs from the field series");
}

struct Stencil {
    std::vector<double> weights;  // offsets -h..h
    std::size_t half = 1;
};

Stencil time_stencil(std::size_t samples, const char* what) {
    if (samples < 3) throw ValidationError(std::string(what) + ": need at least 3 time samples");
    if (samples >= 5) return {{1.0 / 12.0, -8.0 / 12.0, 0.0, 8.0 / 12.0, -1.0 / 12.0}, 2};
    return {{-0.5, 0.0, 0.5}, 1};
}

} // namespace

void MediumParams::validate() const {
    if (!(epsilon >= 1.0 - 1e-12)) throw ValidationError("medium: epsilon must be >= 1");
    if (!(mu > 0.0)) throw ValidationError("medium: mu must be positive");
    if (!(c > 0.0)) throw ValidationError("medium: c must be positive");
}

double MediumParams::v() const { return c / std::sqrt(epsilon * mu); }

Grid3 Grid3::cube(std::size_t points, double side) { return Grid3{{points, points, points}, {side, side, side}}; }

void Grid3::validate() const {
    for (int a = 0; a < 3; ++a) {
        if (n[a] < 1) throw ValidationError("grid: every axis needs at least one point");
        if (!(length[a] > 0.0)) throw ValidationError("grid: box lengths must be positive");
    }
}

Vec3 Grid3::point(std::size_t flat) const {
    const std::size_t k = flat % n[2];
    const std::size_t j = (flat / n[2]) % n[1];
    const std::size_t i = flat / (n[1] * n[2]);
    return {static_cast<double>(i) * spacing(0), static_cast<double>(j) * spacing(1),
            static_cast<double>(k) * spacing(2)};
}

double Grid3::derivative_wavenumber(int axis, std::size_t m) const {
    const std::size_t size = n[axis];
    if (size % 2 == 0 && 2 * m == size) return 0.0;
    const double signed_m = 2 * m < size ? static_cast<double>(m) : static_cast<double>(m) - static_cast<double>(size);
    return 2.0 * std::numbers::pi * signed_m / length[axis];
}

FieldSnapshot make_snapshot(const RealField& E, const RealField& B, const MediumParams& medium) {
    require_same_grid(E.grid, B.grid, "make_snapshot");
    FieldSnapshot s;
    s.E = E;
    s.B = B;
    s.D = E;
    s.H = B;
    for (auto& d : s.D.values) d *= medium.epsilon;
    for (auto& h : s.H.values) h /= medium.mu;
    s.F = riemann_silberstein(s.E, s.H, medium);
    return s;
}

ComplexField riemann_silberstein(const RealField& E, const RealField& H, const MediumParams& medium) {
    medium.validate();
    require_same_grid(E.grid, H.grid, "riemann_silberstein");
    if (E.values.size() != H.values.size()) throw ValidationError("riemann_silberstein: size mismatch");
    ComplexField F{E.grid, std::vector<CVec3>(E.values.size())};
    const double se = std::sqrt(medium.epsilon);
    const double sm = std::sqrt(medium.mu);
    for (std::size_t i = 0; i < F.values.size(); ++i)
        F.values[i] = se * E.values[i].cast<cd>() + I * sm * H.values[i].cast<cd>();
    return F;
}

EnergyFlow energy_and_poynting(const ComplexField& F, const MediumParams& medium) {
    medium.validate();
    EnergyFlow out{ScalarField(F.values.size()), RealField{F.grid, std::vector<Vec3>(F.values.size())}};
    const double v = medium.v();
    for (std::size_t i = 0; i < F.values.size(); ++i) {
        const CVec3& f = F.values[i];
        out.w[i] = 0.5 * f.squaredNorm();
        const CVec3 fxf = cross(f, CVec3(f.conjugate()));
        out.Y.values[i] = (I * v * 0.5 * fxf).real();
    }
    return out;
}

EnergyFlow energy_and_poynting_direct(const FieldSnapshot& s, const MediumParams& medium) {
    EnergyFlow out{ScalarField(s.E.values.size()), RealField{s.E.grid, std::vector<Vec3>(s.E.values.size())}};
    for (std::size_t i = 0; i < out.w.size(); ++i) {
        out.w[i] = 0.5 * (s.E.values[i].dot(s.D.values[i]) + s.H.values[i].dot(s.B.values[i]));
        out.Y.values[i] = medium.c * s.E.values[i].cross(s.H.values[i]);
    }
    return out;
}

ComplexField spectral_curl(const ComplexField& field) {
    const Grid3& g = field.grid;
    g.validate();
    const std::size_t size = g.size();
    std::array<std::vector<cd>, 3> hat;
    parallel_for(3, [&](std::size_t c) {
        hat[c].resize(size);
        for (std::size_t i = 0; i < size; ++i) hat[c][i] = field.values[i][static_cast<int>(c)];
        fft::transform_3d(hat[c], g.n[0], g.n[1], g.n[2], fft::Sign::Minus);
    });
    std::array<std::vector<cd>, 3> curl{std::vector<cd>(size), std::vector<cd>(size), std::vector<cd>(size)};
    for (std::size_t i = 0; i < g.n[0]; ++i) {
        const double kx = g.derivative_wavenumber(0, i);
        for (std::size_t j = 0; j < g.n[1]; ++j) {
            const double ky = g.derivative_wavenumber(1, j);
            for (std::size_t k = 0; k < g.n[2]; ++k) {
                const double kz = g.derivative_wavenumber(2, k);
                const std::size_t f = g.index(i, j, k);
                curl[0][f] = I * (ky * hat[2][f] - kz * hat[1][f]);
                curl[1][f] = I * (kz * hat[0][f] - kx * hat[2][f]);
                curl[2][f] = I * (kx * hat[1][f] - ky * hat[0][f]);
            }
        }
    }
    const double scale = 1.0 / static_cast<double>(size);
    parallel_for(3, [&](std::size_t c) { fft::transform_3d(curl[c], g.n[0], g.n[1], g.n[2], fft::Sign::Plus); });
    ComplexField out{g, std::vector<CVec3>(size)};
    for (std::size_t i = 0; i < size; ++i) out.values[i] = CVec3(curl[0][i], curl[1][i], curl[2][i]) * scale;
    return out;
}

std::vector<cd> spectral_divergence(const ComplexField& field) {
    const Grid3& g = field.grid;
    g.validate();
    const std::size_t size = g.size();
    std::vector<cd> div(size, cd(0.0));
    for (int c = 0; c < 3; ++c) {
        std::vector<cd> hat(size);
        for (std::size_t i = 0; i < size; ++i) hat[i] = field.values[i][c];
        fft::transform_3d(hat, g.n[0], g.n[1], g.n[2], fft::Sign::Minus);
        for (std::size_t i = 0; i < g.n[0]; ++i)
            for (std::size_t j = 0; j < g.n[1]; ++j)
                for (std::size_t k = 0; k < g.n[2]; ++k) {
                    const std::array<std::size_t, 3> m{i, j, k};
                    const std::size_t f = g.index(i, j, k);
                    div[f] += I * g.derivative_wavenumber(c, m[static_cast<std::size_t>(c)]) * hat[f];
                }
    }
    fft::transform_3d(div, g.n[0], g.n[1], g.n[2], fft::Sign::Plus);
    for (cd& z : div) z /= static_cast<double>(size);
    return div;
}

ComplexField to_complex(const RealField& field) {
    ComplexField out{field.grid, std::vector<CVec3>(field.values.size())};
    for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] = field.values[i].cast<cd>();
    return out;
}

RealField real_part(const ComplexField& field) {
    RealField out{field.grid, std::vector<Vec3>(field.values.size())};
    for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] = field.values[i].real();
    return out;
}

double rms(const ComplexField& field) {
    double sum = 0.0;
    for (const auto& f : field.values) sum += f.squaredNorm();
    return field.values.empty() ? 0.0 : std::sqrt(sum / static_cast<double>(field.values.size()));
}

double rms(const RealField& field) {
    double sum = 0.0;
    for (const auto& f : field.values) sum += f.squaredNorm();
    return field.values.empty() ? 0.0 : std::sqrt(sum / static_cast<double>(field.values.size()));
}

double rms(std::span<const double> values) {
    double sum = 0.0;
    for (double x : values) sum += x * x;
    return values.empty() ? 0.0 : std::sqrt(sum / static_cast<double>(values.size()));
}

Residual curl_evolution_residual(std::span<const ComplexField> series, double dt, const MediumParams& medium,
                                 std::span<const RealField> currents) {
    medium.validate();
    const Stencil st = time_stencil(series.size(), "curl_evolution_residual");
    if (!(dt > 0.0)) throw ValidationError("curl_evolution_residual: dt must be positive");
    require_series(currents, series.size(), "curl_evolution_residual");
    for (const auto& f : series) require_same_grid(f.grid, series.front().grid, "curl_evolution_residual");

    const double v = medium.v();
    const double se = std::sqrt(medium.epsilon);
    Residual worst;
    for (std::size_t c = st.half; c + st.half < series.size(); ++c) {
        const Grid3& g = series[c].grid;
        ComplexField dF = ComplexField::zeros(g);
        for (std::size_t o = 0; o < st.weights.size(); ++o) {
            const double wgt = st.weights[o] / dt;
            if (wgt == 0.0) continue;
            const auto& f = series[c + o - st.half].values;
            for (std::size_t i = 0; i < f.size(); ++i) dF.values[i] += wgt * f[i];
        }
        const ComplexField curl = spectral_curl(series[c]);
        ComplexField r = dF;
        double j_rms = 0.0;
        for (std::size_t i = 0; i < r.values.size(); ++i) {
            r.values[i] += I * v * curl.values[i];
            if (!currents.empty()) r.values[i] += currents[c].values[i].cast<cd>() / se;
        }
        if (!currents.empty()) j_rms = rms(currents[c]) / se;
        const double absolute = rms(r);
        const double ref = std::max({rms(dF), v * rms(curl), j_rms});
        const double relative = ref > 0.0 ? absolute / ref : absolute;
        worst.absolute = std::max(worst.absolute, absolute);
        worst.relative = std::max(worst.relative, relative);
    }
    if (!std::isfinite(worst.absolute)) throw NumericError("curl_evolution_residual: non-finite residual");
    return worst;
}

Residual energy_flow_residual(std::span<const ScalarField> w_series, std::span<const RealField> Y_series, double dt,
                              std::span<const RealField> E_series, std::span<const RealField> currents) {
    const Stencil st = time_stencil(w_series.size(), "energy_flow_residual");
    if (!(dt > 0.0)) throw ValidationError("energy_flow_residual: dt must be positive");
    require_series(Y_series, w_series.size(), "energy_flow_residual");
    if (Y_series.empty()) throw ValidationError("energy_flow_residual: Poynting series is required");
    require_series(E_series, w_series.size(), "energy_flow_residual");
    require_series(currents, w_series.size(), "energy_flow_residual");
    if (currents.empty() != E_series.empty())
        throw ValidationError("energy_flow_residual: E and the current must be given together");

    Residual worst;
    for (std::size_t c = st.half; c + st.half < w_series.size(); ++c) {
        const Grid3& g = Y_series[c].grid;
        const std::size_t size = g.size();
        if (w_series[c].size() != size) throw ValidationError("energy_flow_residual: w does not match the grid");
        std::vector<double> dw(size, 0.0);
        for (std::size_t o = 0; o < st.weights.size(); ++o) {
            const double wgt = st.weights[o] / dt;
            if (wgt == 0.0) continue;
            const auto& w = w_series[c + o - st.half];
            for (std::size_t i = 0; i < size; ++i) dw[i] += wgt * w[i];
        }
        const std::vector<cd> div = spectral_divergence(to_complex(Y_series[c]));
        std::vector<double> work(size, 0.0);
        std::vector<double> r(size);
        std::vector<double> div_re(size);
        for (std::size_t i = 0; i < size; ++i) {
            div_re[i] = div[i].real();
            if (!currents.empty()) work[i] = E_series[c].values[i].dot(currents[c].values[i]);
            r[i] = dw[i] + div_re[i] + work[i];
        }
        const double absolute = rms(r);
        const double max_len = *std::max_element(g.length.begin(), g.length.end());
        const double ref = std::max({rms(dw), rms(div_re), rms(work), rms(Y_series[c]) * 2.0 * std::numbers::pi / max_len});
        const double relative = ref > 0.0 ? absolute / ref : absolute;
        worst.absolute = std::max(worst.absolute, absolute);
        worst.relative = std::max(worst.relative, relative);
    }
    if (!std::isfinite(worst.absolute)) throw NumericError("energy_flow_residual: non-finite residual");
    return worst;
}

CircularPlaneWave circular_plane_wave(double k, double a_perp, int sigma, const MediumParams& medium, double x3,
                                      double t) {
    medium.validate();
    if (sigma != 1 && sigma != -1) throw ValidationError("circular_plane_wave: sigma must be +1 or -1");
    const double s = static_cast<double>(sigma);
    const double phi = k * (x3 - s * medium.v() * t);
    CircularPlaneWave out;
    out.A = Vec3(a_perp * std::cos(phi), s * a_perp * std::sin(phi), 0.0);
    const cd phase = std::polar(1.0, -phi);
    out.U = std::sqrt(2.0 / medium.mu) * a_perp * phase * CVec3(1.0, I * s, 0.0) / std::numbers::sqrt2;
    return out;
}

FieldSnapshot circular_plane_wave_snapshot(const Grid3& grid, int kz_index, double a_perp, int sigma,
                                           const MediumParams& medium, double t, double dispersion_scale) {
    grid.validate();
    medium.validate();
    if (sigma != 1 && sigma != -1) throw ValidationError("circular_plane_wave: sigma must be +1 or -1");
    const double s = static_cast<double>(sigma);
    const double k = 2.0 * std::numbers::pi * kz_index / grid.length[2];
    const double omega = dispersion_scale * medium.v() * std::abs(k);
    RealField E = RealField::zeros(grid);
    RealField B = RealField::zeros(grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double z = grid.point(i)[2];
        const double phi = k * z - s * omega * t;
        const double cp = std::cos(phi);
        const double sp = std::sin(phi);
        // A = a (cos, s sin, 0); E = -dA/dt / c, B = curl A
        E.values[i] = -(a_perp * omega / medium.c) * Vec3(s * sp, -cp, 0.0);
        B.values[i] = a_perp * k * Vec3(-s * cp, -sp, 0.0);
    }
    return make_snapshot(E, B, medium);
}

FieldSnapshot ohmic_plane_wave_snapshot(const Grid3& grid, int kz_index, double e0, double sigma_q,
                                        const MediumParams& medium, double t) {
    grid.validate();
    medium.validate();
    if (!(sigma_q >= 0.0)) throw ValidationError("ohmic_plane_wave: conductivity must be >= 0");
    const double k = 2.0 * std::numbers::pi * kz_index / grid.length[2];
    const double gamma = sigma_q / medium.epsilon;
    const double v = medium.v();
    const double disc = v * v * k * k - 0.25 * gamma * gamma;
    if (!(disc > 0.0)) throw ValidationError("ohmic_plane_wave: overdamped mode (gamma >= 2 v |k|)");
    const cd s(-0.5 * gamma, -std::sqrt(disc));
    const cd h_amp = -medium.c * I * k * e0 / (medium.mu * s);
    RealField E = RealField::zeros(grid);
    RealField B = RealField::zeros(grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double z = grid.point(i)[2];
        const cd phase = std::exp(I * k * z + s * t);
        E.values[i] = Vec3((e0 * phase).real(), 0.0, 0.0);
        B.values[i] = Vec3(0.0, medium.mu * (h_amp * phase).real(), 0.0);
    }
    return make_snapshot(E, B, medium);
}

std::array<Vec3, 2> polarization_basis(const Vec3& k) {
    const double norm = k.norm();
    if (!(norm > 0.0)) throw ValidationError("polarization_basis: k must be nonzero");
    Vec3 e1 = k.cross(Vec3::UnitZ());
    if (e1.norm() < 1e-9 * norm) e1 = k.cross(Vec3::UnitX());
    e1.normalize();
    const Vec3 e2 = (k / norm).cross(e1);
    return {e1, e2};
}

CVec3 helical_vector(const Vec3& k, int sigma) {
    if (sigma != 1 && sigma != -1) throw ValidationError("helical_vector: sigma must be +1 or -1");
    const auto [e1, e2] = polarization_basis(k);
    return (e1.cast<cd>() + I * static_cast<double>(sigma) * e2.cast<cd>()) / std::numbers::sqrt2;
}

} // namespace wq::em
