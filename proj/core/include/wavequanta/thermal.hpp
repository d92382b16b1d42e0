#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "wavequanta/em_field.hpp"
#include "wavequanta/units.hpp"

namespace wq::thermal {

enum class SourceModel { RayleighJeans, Wien, WienStimulated };

std::string_view to_string(SourceModel model);
/// Accepts "rayleigh-jeans", "wien" and "wien-stimulated".
SourceModel source_model_from_string(std::string_view name);

struct KineticParams {
    double temperature = 1.0;  ///< T
    double gamma = 1.0;        ///< damping rate sigma_q / eps
    em::MediumParams medium;
    UnitSystem units;

    /// Throws ValidationError unless T, gamma, k_B > 0 and the medium is valid.
    void validate() const;
    double sigma_q() const { return gamma * medium.epsilon; }
    double photon_energy(double p) const { return medium.v() * p; }
    /// x = v p / (k_B T).
    double reduced_energy(double p) const;
    double momentum_for(double x) const;
    /// 2 / h^3, the common prefactor of every equilibrium.
    double density_scale() const;
};

/// (2 / h^3) / (exp(x) - 1).
double planck_f(double p, const KineticParams& params);
/// Fixed point of the given source: (2/h^3)/x, (2/h^3) exp(-x), or Planck.
double equilibrium_f(SourceModel model, double p, const KineticParams& params);
/// RJ: 2 sigma_q k_B T; Wien: 2 sigma_q eps_p exp(-x); stimulated: Wien (1 + h^3 f / 2).
double source_q(SourceModel model, double p, const KineticParams& params, double f);
/// Right-hand side gamma (Q / (h^3 sigma_q eps_p) - f) of the homogeneous kinetic equation.
double relaxation_rhs(SourceModel model, double p, const KineticParams& params, double f);
/// gamma for RJ and Wien, gamma (1 - exp(-x)) with the stimulated correction.
double effective_rate(SourceModel model, double p, const KineticParams& params);

/// Which terms of the kinetic equation a step applies.
enum class Physics { Full, TransportOnly, DampingOnly };

/// f on a radial momentum grid, optionally resolved along one periodic spatial axis.
/// Storage is row-major with the momentum index fastest: f[ix * p.size() + ip].
struct KineticState {
    std::vector<double> p;
    std::vector<double> f;
    std::size_t nx = 1;
    double dx = 1.0;
    double t = 0.0;

    std::size_t np() const { return p.size(); }
    double at(std::size_t ix, std::size_t ip) const { return f[ix * p.size() + ip]; }
    /// Trapezoid weights 4 pi p^2 dp over the (non-uniform) momentum nodes.
    std::vector<double> momentum_weights() const;
    /// sum over x and p of f 4 pi p^2 dp dx.
    double total() const;
};

/// Log-spaced momenta with x from x_min to x_max inclusive.
std::vector<double> log_momentum_grid(const KineticParams& params, std::size_t cells = 512, double x_min = 1e-3,
                                      double x_max = 30.0);

KineticState homogeneous_state(std::vector<double> p, double value = 0.0);

struct StepOptions {
    Physics physics = Physics::Full;
    /// Direction cosine of the photon velocity along the spatial axis.
    double direction = 1.0;
};

/// Exact per-cell exponential relaxation followed by periodic first-order upwind advection
/// (when nx > 1). Rejects dt <= 0 and v |direction| dt > dx.
KineticState kinetic_step(const KineticState& state, const KineticParams& params, SourceModel model, double dt,
                          const StepOptions& options = {});

struct RelaxationReport {
    std::vector<double> times;
    /// max over cells of |f - f*| / f* at every time.
    std::vector<double> max_distance;
    /// per-cell relative distance at the final time.
    std::vector<double> final_distance;
    /// per-cell rate -ln(d(t_end) / d(t_0)) / t_end, NaN where the initial distance is zero.
    std::vector<double> measured_rate;
    bool monotone = true;
    KineticState final_state;
};

/// Homogeneous relaxation sampled at `samples` equal steps up to t_end.
RelaxationReport relax_to_equilibrium(const KineticState& f0, const KineticParams& params, SourceModel model,
                                      double t_end, std::size_t samples = 100);

/// max over cells of |rhs(planck_f)| / (gamma f) with the stimulated source.
double planck_substitution_residual(std::span<const double> p, const KineticParams& params);

/// U_lambda = 8 pi v h / lambda^5 / (exp(v h / (lambda k_B T)) - 1).
double spectral_energy_density(double temperature, double lambda, const KineticParams& params);
/// Integral of U_lambda over all wavelengths by adaptive quadrature.
double integrated_energy_density(double temperature, const KineticParams& params);

struct WienPeak {
    double lambda_m = 0.0;
    /// lambda_m p_T / hbar with p_T = k_B T / v.
    double product = 0.0;
};

/// Maximizes U_lambda in the scaled variable lambda k_B T / (h v), so the product is T-independent.
WienPeak wien_peak(double temperature, const KineticParams& params);

/// lambda_m^3 times the photon density integral of planck_f.
double thermal_photon_count(double temperature, const KineticParams& params);

} // namespace wq::thermal
