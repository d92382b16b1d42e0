#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "wavequanta/em_field.hpp"

namespace wq::helicity {

using em::cd;
using em::CVec3;
using em::Vec3;

/// Plane-wave amplitude U'_k of the complex potential (spatial factor exp(-i k.x)).
struct ComplexPotentialMode {
    Vec3 k = Vec3::UnitZ();
    CVec3 U = CVec3::Zero();
    std::optional<int> sigma;
};

/// ||k x U + i sigma |k| U|| / (|k| ||U||). Throws for k = 0, U = 0 or a missing / invalid sigma.
double helicity_eigencheck(const ComplexPotentialMode& mode);

/// Exact solution of dU/dt = -v k x U: rotation about khat by -v |k| t.
ComplexPotentialMode precess_mode(const ComplexPotentialMode& mode, double v, double t);

struct HelicalSplit {
    CVec3 plus;          ///< sigma = +1 component
    CVec3 minus;         ///< sigma = -1 component
    CVec3 longitudinal;  ///< along khat
};

/// Orthogonal projections of U onto the two helical directions and khat; they sum to U.
HelicalSplit helical_split(const Vec3& k, const CVec3& U);

/// exp(i k (z - v t)) (rho e_p + i sqrt2 / k e_z), e_p = (e_rho + i e_phi) / sqrt2, in Cartesian components.
CVec3 cylindrical_solution(double k, double rho, double phi, double z, double t, double v);
/// Same field addressed by a Cartesian point.
CVec3 cylindrical_solution_at(double k, const Vec3& x, double t, double v);

/// Any potential U(x, t) evaluated pointwise.
using PotentialEval = std::function<CVec3(const Vec3&, double)>;

PotentialEval cylindrical_potential(double k, double v);
/// U_sigma of the circular plane wave in the given medium.
PotentialEval plane_helical_potential(double k, double a_perp, int sigma, const em::MediumParams& medium);

/// Second-order centred differences with step h.
CVec3 curl_fd(const PotentialEval& U, const Vec3& x, double t, double h);
cd divergence_fd(const PotentialEval& U, const Vec3& x, double t, double h);

struct PdeResidual {
    /// rms |i dU/dt - v curl U| over the samples divided by rms |v curl U|.
    double evolution = 0.0;
    /// rms |div U| divided by rms |curl U|.
    double divergence = 0.0;
};

/// Samples every (point, time) pair with spatial step h and time step dt.
PdeResidual potential_equation_residual(const PotentialEval& U, double v, std::span<const Vec3> points,
                                        std::span<const double> times, double h, double dt);

struct ConvergenceLevel {
    double h = 0.0;
    double dt = 0.0;
    PdeResidual residual;
};

struct ConvergenceStudy {
    std::vector<ConvergenceLevel> levels;
    /// Smallest observed order log2(r(h) / r(h/2)) and ratio r(h) / r(h/2) across successive levels.
    double evolution_order = 0.0;
    double divergence_order = 0.0;
    double evolution_ratio = 0.0;
    double divergence_ratio = 0.0;
};

/// Halves h (and dt = dt_per_h * h) `levels` times starting from h0.
ConvergenceStudy convergence_study(const PotentialEval& U, double v, std::span<const Vec3> points,
                                   std::span<const double> times, double h0, int levels, double dt_per_h = 1.0);

/// F = i curl U by centred differences.
CVec3 field_from_potential(const PotentialEval& U, const Vec3& x, double t, double h);
/// F = i curl U with the spectral curl of a periodic sample.
em::ComplexField field_from_potential(const em::ComplexField& U);

/// Samples U on a grid at time t.
em::ComplexField sample_potential(const PotentialEval& U, const em::Grid3& grid, double t);

} // namespace wq::helicity
