#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace wq::em {

using cd = std::complex<double>;
using Vec3 = Eigen::Vector3d;
using CVec3 = Eigen::Vector3cd;

/// Plain bilinear a x b. Eigen's cross() conjugates the result for complex scalars.
inline CVec3 cross(const CVec3& a, const CVec3& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

struct MediumParams {
    double epsilon = 1.0;
    double mu = 1.0;
    double c = 1.0;

    /// Throws ValidationError unless epsilon >= 1 - 1e-12, mu > 0 and c > 0.
    void validate() const;
    double v() const;
};

/// Uniform periodic box, axis 0 = x. Points sit at i * L / n starting from the origin.
struct Grid3 {
    std::array<std::size_t, 3> n{16, 16, 16};
    std::array<double, 3> length{1.0, 1.0, 1.0};

    static Grid3 cube(std::size_t points, double side);

    void validate() const;
    std::size_t size() const { return n[0] * n[1] * n[2]; }
    std::size_t index(std::size_t i, std::size_t j, std::size_t k) const { return (i * n[1] + j) * n[2] + k; }
    double spacing(int axis) const { return length[axis] / static_cast<double>(n[axis]); }
    double cell_volume() const { return spacing(0) * spacing(1) * spacing(2); }
    Vec3 point(std::size_t flat) const;
    /// Angular wavenumber of FFT bin m along axis; the Nyquist bin maps to 0 for odd derivatives.
    double derivative_wavenumber(int axis, std::size_t m) const;
    bool operator==(const Grid3&) const = default;
};

template <class T>
struct Field {
    Grid3 grid;
    std::vector<T> values;

    static Field zeros(const Grid3& grid) { return Field{grid, std::vector<T>(grid.size(), T::Zero())}; }
};

using RealField = Field<Vec3>;
using ComplexField = Field<CVec3>;
using ScalarField = std::vector<double>;

struct FieldSnapshot {
    RealField E;
    RealField B;
    RealField D;
    RealField H;
    ComplexField F;
};

/// D = eps E, H = B / mu, F = sqrt(eps) E + i sqrt(mu) H.
FieldSnapshot make_snapshot(const RealField& E, const RealField& B, const MediumParams& medium);

/// F = sqrt(eps) E + i sqrt(mu) H. Throws ValidationError on grid mismatch.
ComplexField riemann_silberstein(const RealField& E, const RealField& H, const MediumParams& medium);

struct EnergyFlow {
    ScalarField w;
    RealField Y;
};

/// w = F.F* / 2, Y = i v F x F* / 2.
EnergyFlow energy_and_poynting(const ComplexField& F, const MediumParams& medium);
/// w = (E.D + H.B) / 2 and Y = c E x H, the real-field forms.
EnergyFlow energy_and_poynting_direct(const FieldSnapshot& snapshot, const MediumParams& medium);

ComplexField spectral_curl(const ComplexField& field);
std::vector<cd> spectral_divergence(const ComplexField& field);
ComplexField to_complex(const RealField& field);
RealField real_part(const ComplexField& field);

/// Root-mean-square norms on the grid.
double rms(const ComplexField& field);
double rms(const RealField& field);
double rms(std::span<const double> values);

struct Residual {
    double absolute = 0.0;
    /// absolute divided by the size of the largest term of the equation.
    double relative = 0.0;
};

/// Residual of d_t F + i v curl F + j_f / sqrt(eps) over equally spaced samples.
/// A 5-point time stencil is used when at least 5 samples exist, else the 3-point one;
/// the maximum over every stencil centre is reported. currents is empty or one per sample.
Residual curl_evolution_residual(std::span<const ComplexField> series, double dt, const MediumParams& medium,
                                 std::span<const RealField> currents = {});

/// Residual of d_t w + div Y + E.j_f, with the same time stencil rules. E and currents are
/// empty or one per sample. For states with uniform w and Y the reference term is
/// rms(Y) * 2 pi / max(L) so the relative value stays finite.
Residual energy_flow_residual(std::span<const ScalarField> w_series, std::span<const RealField> Y_series, double dt,
                              std::span<const RealField> E_series = {}, std::span<const RealField> currents = {});

struct CircularPlaneWave {
    Vec3 A;
    CVec3 U;
};

/// A = A_perp (cos phi, sigma sin phi, 0), phi = k (x3 - sigma v t), with
/// U = sqrt(2 / mu) A_perp exp(-i phi) (1, i sigma, 0) / sqrt 2 so that A = sqrt(mu) Re U.
CircularPlaneWave circular_plane_wave(double k, double a_perp, int sigma, const MediumParams& medium, double x3,
                                      double t);

/// Fields of circular_plane_wave sampled on a grid; k = 2 pi kz_index / L_z. The frequency
/// is dispersion_scale * v k, so values other than 1 break Maxwell's equations on purpose.
FieldSnapshot circular_plane_wave_snapshot(const Grid3& grid, int kz_index, double a_perp, int sigma,
                                           const MediumParams& medium, double t, double dispersion_scale = 1.0);

/// Linearly polarized wave decaying in a conducting medium:
/// eps d_t E = c curl H - sigma_q E, mu d_t H = -c curl E, E along x, k along z.
FieldSnapshot ohmic_plane_wave_snapshot(const Grid3& grid, int kz_index, double e0, double sigma_q,
                                        const MediumParams& medium, double t);

/// e1 proportional to k x z (k x x if k is nearly parallel to z), e2 = khat x e1.
std::array<Vec3, 2> polarization_basis(const Vec3& k);
/// (e1 + i sigma e2) / sqrt 2, which satisfies k x e = -i sigma |k| e.
CVec3 helical_vector(const Vec3& k, int sigma);

} // namespace wq::em
