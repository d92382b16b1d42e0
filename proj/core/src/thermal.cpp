#include "wavequanta/thermal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/tools/minima.hpp>

#include "wavequanta/error.hpp"
#include "wavequanta/parallel.hpp"

namespace wq::thermal {

namespace {

void require_positive_p(double p, const char* what) {
    if (!(p > 0.0)) throw ValidationError(std::string(what) + ": p must be positive");
}

// y = lambda k_B T / (h v); U_lambda in these units is y^-5 / (exp(1/y) - 1).
double scaled_spectrum(double y) { return 1.0 / (std::pow(y, 5) * std::expm1(1.0 / y)); }

double peak_scaled_wavelength() {
    const auto [y, value] = boost::math::tools::brent_find_minima(
        [](double y) { return -scaled_spectrum(y); }, 0.05, 2.0, std::numeric_limits<double>::digits / 2);
    (void)value;
    return y;
}

} // namespace

std::string_view to_string(SourceModel model) {
    switch (model) {
    case SourceModel::RayleighJeans: return "rayleigh-jeans";
    case SourceModel::Wien: return "wien";
    case SourceModel::WienStimulated: return "wien-stimulated";
    }
    return "unknown";
}

SourceModel source_model_from_string(std::string_view name) {
    if (name == "rayleigh-jeans") return SourceModel::RayleighJeans;
    if (name == "wien") return SourceModel::Wien;
    if (name == "wien-stimulated") return SourceModel::WienStimulated;
    throw ValidationError("unknown source model '" + std::string(name) + "'");
}

void KineticParams::validate() const {
    if (!(temperature > 0.0)) throw ValidationError("kinetics: temperature must be positive");
    if (!(gamma > 0.0)) throw ValidationError("kinetics: gamma must be positive");
    if (!(units.k_B > 0.0) || !(units.hbar > 0.0)) throw ValidationError("kinetics: k_B and hbar must be positive");
    medium.validate();
}

double KineticParams::reduced_energy(double p) const { return photon_energy(p) / (units.k_B * temperature); }

double KineticParams::momentum_for(double x) const { return x * units.k_B * temperature / medium.v(); }

double KineticParams::density_scale() const {
    const double h = units.h();
    return 2.0 / (h * h * h);
}

double planck_f(double p, const KineticParams& params) {
    require_positive_p(p, "planck_f");
    return params.density_scale() / std::expm1(params.reduced_energy(p));
}

double equilibrium_f(SourceModel model, double p, const KineticParams& params) {
    require_positive_p(p, "equilibrium_f");
    const double x = params.reduced_energy(p);
    switch (model) {
    case SourceModel::RayleighJeans: return params.density_scale() / x;
    case SourceModel::Wien: return params.density_scale() * std::exp(-x);
    case SourceModel::WienStimulated: return params.density_scale() / std::expm1(x);
    }
    return 0.0;
}

double source_q(SourceModel model, double p, const KineticParams& params, double f) {
    require_positive_p(p, "source_q");
    const double kt = params.units.k_B * params.temperature;
    const double eps = params.photon_energy(p);
    const double h = params.units.h();
    switch (model) {
    case SourceModel::RayleighJeans: return 2.0 * params.sigma_q() * kt;
    case SourceModel::Wien: return 2.0 * params.sigma_q() * eps * std::exp(-eps / kt);
    case SourceModel::WienStimulated:
        return 2.0 * params.sigma_q() * eps * std::exp(-eps / kt) * (1.0 + 0.5 * h * h * h * f);
    }
    return 0.0;
}

double relaxation_rhs(SourceModel model, double p, const KineticParams& params, double f) {
    const double h = params.units.h();
    const double q = source_q(model, p, params, f);
    return params.gamma * (q / (h * h * h * params.sigma_q() * params.photon_energy(p)) - f);
}

double effective_rate(SourceModel model, double p, const KineticParams& params) {
    if (model != SourceModel::WienStimulated) return params.gamma;
    return -params.gamma * std::expm1(-params.reduced_energy(p));
}

std::vector<double> KineticState::momentum_weights() const {
    const std::size_t n = p.size();
    std::vector<double> w(n, 0.0);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double half = 0.5 * (p[i + 1] - p[i]);
        w[i] += half;
        w[i + 1] += half;
    }
    for (std::size_t i = 0; i < n; ++i) w[i] *= 4.0 * std::numbers::pi * p[i] * p[i];
    return w;
}

double KineticState::total() const {
    const std::vector<double> w = momentum_weights();
    double sum = 0.0;
    for (std::size_t ix = 0; ix < nx; ++ix)
        for (std::size_t ip = 0; ip < p.size(); ++ip) sum += w[ip] * at(ix, ip);
    return sum * dx;
}

std::vector<double> log_momentum_grid(const KineticParams& params, std::size_t cells, double x_min, double x_max) {
    params.validate();
    if (cells < 2) throw ValidationError("momentum grid: need at least two cells");
    if (!(x_min > 0.0) || !(x_max > x_min)) throw ValidationError("momentum grid: need 0 < x_min < x_max");
    std::vector<double> p(cells);
    const double ratio = std::log(x_max / x_min);
    for (std::size_t i = 0; i < cells; ++i) {
        const double x = x_min * std::exp(ratio * static_cast<double>(i) / static_cast<double>(cells - 1));
        p[i] = params.momentum_for(x);
    }
    return p;
}

KineticState homogeneous_state(std::vector<double> p, double value) {
    for (double q : p) require_positive_p(q, "kinetic state");
    KineticState s;
    s.f.assign(p.size(), value);
    s.p = std::move(p);
    return s;
}

KineticState kinetic_step(const KineticState& state, const KineticParams& params, SourceModel model, double dt,
                          const StepOptions& options) {
    params.validate();
    if (!(dt > 0.0)) throw ValidationError("kinetic_step: dt must be positive");
    if (state.f.size() != state.nx * state.p.size()) throw ValidationError("kinetic_step: f has the wrong size");
    const double courant = params.medium.v() * std::abs(options.direction) * dt / state.dx;
    const bool transport = state.nx > 1 && options.physics != Physics::DampingOnly;
    if (transport && courant > 1.0) throw ValidationError("kinetic_step: CFL condition v dt <= dx violated");

    KineticState out = state;
    const std::size_t np = state.p.size();
    if (options.physics != Physics::TransportOnly) {
        std::vector<double> target(np), decay(np);
        for (std::size_t ip = 0; ip < np; ++ip) {
            const double p = state.p[ip];
            const bool damping = options.physics == Physics::DampingOnly;
            target[ip] = damping ? 0.0 : equilibrium_f(model, p, params);
            const double rate = damping ? params.gamma : effective_rate(model, p, params);
            decay[ip] = -std::expm1(-rate * dt);
        }
        parallel_for(state.nx, [&](std::size_t ix) {
            for (std::size_t ip = 0; ip < np; ++ip) {
                double& f = out.f[ix * np + ip];
                f += (target[ip] - f) * decay[ip];
                f = std::max(f, 0.0);
            }
        });
    }
    if (transport && courant > 0.0) {
        const std::vector<double> before = out.f;
        const std::size_t nx = state.nx;
        parallel_for(np, [&](std::size_t ip) {
            for (std::size_t ix = 0; ix < nx; ++ix) {
                const std::size_t up = options.direction > 0.0 ? (ix + nx - 1) % nx : (ix + 1) % nx;
                const double f = before[ix * np + ip];
                out.f[ix * np + ip] = std::max(f - courant * (f - before[up * np + ip]), 0.0);
            }
        });
    }
    out.t = state.t + dt;
    return out;
}

RelaxationReport relax_to_equilibrium(const KineticState& f0, const KineticParams& params, SourceModel model,
                                      double t_end, std::size_t samples) {
    params.validate();
    if (f0.nx != 1) throw ValidationError("relax_to_equilibrium: homogeneous state required");
    if (!(t_end > 0.0) || samples < 1) throw ValidationError("relax_to_equilibrium: need t_end > 0 and samples >= 1");
    const std::size_t np = f0.p.size();
    std::vector<double> target(np);
    for (std::size_t ip = 0; ip < np; ++ip) target[ip] = equilibrium_f(model, f0.p[ip], params);

    auto distances = [&](const KineticState& s) {
        std::vector<double> d(np);
        for (std::size_t ip = 0; ip < np; ++ip) d[ip] = std::abs(s.f[ip] - target[ip]) / target[ip];
        return d;
    };

    RelaxationReport report;
    const std::vector<double> d0 = distances(f0);
    report.times.push_back(f0.t);
    report.max_distance.push_back(*std::max_element(d0.begin(), d0.end()));
    KineticState s = f0;
    const double dt = t_end / static_cast<double>(samples);
    std::vector<double> previous = d0;
    for (std::size_t i = 0; i < samples; ++i) {
        s = kinetic_step(s, params, model, dt);
        const std::vector<double> d = distances(s);
        for (std::size_t ip = 0; ip < np; ++ip)
            if (d[ip] > previous[ip]) report.monotone = false;
        previous = d;
        report.times.push_back(s.t);
        report.max_distance.push_back(*std::max_element(d.begin(), d.end()));
    }
    report.final_distance = previous;
    report.measured_rate.resize(np);
    for (std::size_t ip = 0; ip < np; ++ip)
        report.measured_rate[ip] = d0[ip] > 0.0 && previous[ip] > 0.0 ? -std::log(previous[ip] / d0[ip]) / t_end
                                                                       : std::numeric_limits<double>::quiet_NaN();
    report.final_state = std::move(s);
    return report;
}

double planck_substitution_residual(std::span<const double> p, const KineticParams& params) {
    params.validate();
    double worst = 0.0;
    for (double q : p) {
        const double f = planck_f(q, params);
        const double rhs = relaxation_rhs(SourceModel::WienStimulated, q, params, f);
        worst = std::max(worst, std::abs(rhs) / (params.gamma * f));
    }
    return worst;
}

double spectral_energy_density(double temperature, double lambda, const KineticParams& params) {
    if (!(lambda > 0.0)) throw ValidationError("spectral_energy_density: lambda must be positive");
    if (!(temperature > 0.0)) throw ValidationError("spectral_energy_density: temperature must be positive");
    const double h = params.units.h();
    const double v = params.medium.v();
    const double x = v * h / (lambda * params.units.k_B * temperature);
    if (x > 700.0) return 0.0;
    return 8.0 * std::numbers::pi * v * h / std::pow(lambda, 5) / std::expm1(x);
}

double integrated_energy_density(double temperature, const KineticParams& params) {
    if (!(temperature > 0.0)) throw ValidationError("integrated_energy_density: temperature must be positive");
    const double h = params.units.h();
    const double v = params.medium.v();
    const double scale = h * v / (params.units.k_B * temperature);  // lambda = scale * y
    boost::math::quadrature::exp_sinh<double> integrator;
    const double integral = integrator.integrate(
        [&](double y) { return spectral_energy_density(temperature, scale * y, params); }, 0.0,
        std::numeric_limits<double>::infinity());
    return integral * scale;
}

WienPeak wien_peak(double temperature, const KineticParams& params) {
    if (!(temperature > 0.0)) throw ValidationError("wien_peak: temperature must be positive");
    const double y = peak_scaled_wavelength();
    WienPeak out;
    out.lambda_m = y * params.units.h() * params.medium.v() / (params.units.k_B * temperature);
    out.product = 2.0 * std::numbers::pi * y;
    return out;
}

double thermal_photon_count(double temperature, const KineticParams& params) {
    const WienPeak peak = wien_peak(temperature, params);
    const double y = peak.lambda_m * params.units.k_B * temperature / (params.units.h() * params.medium.v());
    boost::math::quadrature::exp_sinh<double> integrator;
    const double integral = integrator.integrate(
        [](double x) { return x < 1e-300 ? 0.0 : x * x / std::expm1(x); }, 0.0, std::numeric_limits<double>::infinity());
    return 8.0 * std::numbers::pi * y * y * y * integral;
}

} // namespace wq::thermal
