#include "wavequanta/helicity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "wavequanta/error.hpp"
#include "wavequanta/parallel.hpp"

namespace wq::helicity {

namespace {

constexpr cd I{0.0, 1.0};

double rms_of(const std::vector<double>& squares) {
    double sum = 0.0;
    for (double s : squares) sum += s;
    return squares.empty() ? 0.0 : std::sqrt(sum / static_cast<double>(squares.size()));
}

} // namespace

double helicity_eigencheck(const ComplexPotentialMode& mode) {
    const double kn = mode.k.norm();
    if (!(kn > 0.0)) throw ValidationError("helicity_eigencheck: k must be nonzero");
    if (!mode.sigma || (*mode.sigma != 1 && *mode.sigma != -1))
        throw ValidationError("helicity_eigencheck: sigma must be +1 or -1");
    const double un = mode.U.norm();
    if (!(un > 0.0)) throw ValidationError("helicity_eigencheck: U must be nonzero");
    const CVec3 lhs = em::cross(mode.k.cast<cd>(), mode.U) + I * static_cast<double>(*mode.sigma) * kn * mode.U;
    return lhs.norm() / (kn * un);
}

ComplexPotentialMode precess_mode(const ComplexPotentialMode& mode, double v, double t) {
    const double kn = mode.k.norm();
    if (!(kn > 0.0)) return mode;
    const Vec3 n = mode.k / kn;
    const double theta = -v * kn * t;
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    const CVec3 nc = n.cast<cd>();
    ComplexPotentialMode out = mode;
    out.U = c * mode.U + s * em::cross(nc, mode.U) + (1.0 - c) * nc * nc.dot(mode.U);
    return out;
}

HelicalSplit helical_split(const Vec3& k, const CVec3& U) {
    const double kn = k.norm();
    if (!(kn > 0.0)) throw ValidationError("helical_split: k must be nonzero");
    const CVec3 ep = em::helical_vector(k, 1);
    const CVec3 em_ = em::helical_vector(k, -1);
    const CVec3 n = (k / kn).cast<cd>();
    return {ep * ep.dot(U), em_ * em_.dot(U), n * n.dot(U)};
}

CVec3 cylindrical_solution(double k, double rho, double phi, double z, double t, double v) {
    return cylindrical_solution_at(k, Vec3(rho * std::cos(phi), rho * std::sin(phi), z), t, v);
}

CVec3 cylindrical_solution_at(double k, const Vec3& x, double t, double v) {
    if (k == 0.0) throw ValidationError("cylindrical_solution: k must be nonzero");
    const cd phase = std::exp(I * k * (x[2] - v * t));
    // rho e_p = (x - i y) (1, i, 0) / sqrt2
    const cd a = cd(x[0], -x[1]) / std::numbers::sqrt2;
    return phase * CVec3(a, I * a, I * std::numbers::sqrt2 / k);
}

PotentialEval cylindrical_potential(double k, double v) {
    if (k == 0.0) throw ValidationError("cylindrical_solution: k must be nonzero");
    return [k, v](const Vec3& x, double t) { return cylindrical_solution_at(k, x, t, v); };
}

PotentialEval plane_helical_potential(double k, double a_perp, int sigma, const em::MediumParams& medium) {
    medium.validate();
    if (sigma != 1 && sigma != -1) throw ValidationError("plane_helical_potential: sigma must be +1 or -1");
    return [=](const Vec3& x, double t) { return em::circular_plane_wave(k, a_perp, sigma, medium, x[2], t).U; };
}

CVec3 curl_fd(const PotentialEval& U, const Vec3& x, double t, double h) {
    std::array<CVec3, 3> d;  // d[a] = dU / dx_a
    for (int a = 0; a < 3; ++a) {
        Vec3 step = Vec3::Zero();
        step[a] = h;
        d[a] = (U(x + step, t) - U(x - step, t)) / (2.0 * h);
    }
    return CVec3(d[1][2] - d[2][1], d[2][0] - d[0][2], d[0][1] - d[1][0]);
}

cd divergence_fd(const PotentialEval& U, const Vec3& x, double t, double h) {
    cd sum = 0.0;
    for (int a = 0; a < 3; ++a) {
        Vec3 step = Vec3::Zero();
        step[a] = h;
        sum += (U(x + step, t)[a] - U(x - step, t)[a]) / (2.0 * h);
    }
    return sum;
}

PdeResidual potential_equation_residual(const PotentialEval& U, double v, std::span<const Vec3> points,
                                        std::span<const double> times, double h, double dt) {
    if (points.empty() || times.empty()) throw ValidationError("potential_equation_residual: stencil too small");
    if (!(h > 0.0) || !(dt > 0.0)) throw ValidationError("potential_equation_residual: steps must be positive");
    const std::size_t n = points.size() * times.size();
    std::vector<double> evo(n), div(n), ref_evo(n), ref_div(n);
    parallel_for(n, [&](std::size_t i) {
        const Vec3& x = points[i / times.size()];
        const double t = times[i % times.size()];
        const CVec3 udot = (U(x, t + dt) - U(x, t - dt)) / (2.0 * dt);
        const CVec3 curl = curl_fd(U, x, t, h);
        evo[i] = (I * udot - v * curl).squaredNorm();
        ref_evo[i] = (v * curl).squaredNorm();
        div[i] = std::norm(divergence_fd(U, x, t, h));
        ref_div[i] = curl.squaredNorm();
    });
    PdeResidual r;
    const double re = rms_of(ref_evo);
    const double rd = rms_of(ref_div);
    r.evolution = re > 0.0 ? rms_of(evo) / re : rms_of(evo);
    r.divergence = rd > 0.0 ? rms_of(div) / rd : rms_of(div);
    if (!std::isfinite(r.evolution) || !std::isfinite(r.divergence))
        throw NumericError("potential_equation_residual: non-finite residual");
    return r;
}

ConvergenceStudy convergence_study(const PotentialEval& U, double v, std::span<const Vec3> points,
                                   std::span<const double> times, double h0, int levels, double dt_per_h) {
    if (levels < 2) throw ValidationError("convergence_study: need at least two levels");
    if (!(h0 > 0.0) || !(dt_per_h > 0.0)) throw ValidationError("convergence_study: steps must be positive");
    ConvergenceStudy study;
    double h = h0;
    for (int l = 0; l < levels; ++l, h *= 0.5)
        study.levels.push_back({h, dt_per_h * h, potential_equation_residual(U, v, points, times, h, dt_per_h * h)});

    constexpr double inf = std::numeric_limits<double>::infinity();
    study.evolution_ratio = study.divergence_ratio = inf;
    for (std::size_t l = 0; l + 1 < study.levels.size(); ++l) {
        const auto& a = study.levels[l].residual;
        const auto& b = study.levels[l + 1].residual;
        study.evolution_ratio = std::min(study.evolution_ratio, b.evolution > 0.0 ? a.evolution / b.evolution : inf);
        study.divergence_ratio = std::min(study.divergence_ratio, b.divergence > 0.0 ? a.divergence / b.divergence : inf);
    }
    study.evolution_order = std::log2(study.evolution_ratio);
    study.divergence_order = std::log2(study.divergence_ratio);
    return study;
}

CVec3 field_from_potential(const PotentialEval& U, const Vec3& x, double t, double h) {
    return I * curl_fd(U, x, t, h);
}

em::ComplexField field_from_potential(const em::ComplexField& U) {
    em::ComplexField F = em::spectral_curl(U);
    for (auto& f : F.values) f *= I;
    return F;
}

em::ComplexField sample_potential(const PotentialEval& U, const em::Grid3& grid, double t) {
    grid.validate();
    em::ComplexField out = em::ComplexField::zeros(grid);
    parallel_for(grid.size(), [&](std::size_t i) { out.values[i] = U(grid.point(i), t); });
    return out;
}

} // namespace wq::helicity
