#include "wavequanta/photon.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "wavequanta/error.hpp"
#include "wavequanta/fft.hpp"
#include "wavequanta/parallel.hpp"

namespace wq::em {

namespace {

constexpr cd I{0.0, 1.0};
const double kInvTwoPi32 = std::pow(2.0 * std::numbers::pi, -1.5);

Vec3 index_vector(const Index3& index, double dk) {
    return dk * Vec3(index[0], index[1], index[2]);
}

bool is_zero(const Index3& index) { return index[0] == 0 && index[1] == 0 && index[2] == 0; }

double transverse_ratio(const Vec3& k, const CVec3& a) {
    const double an = a.norm();
    if (an == 0.0) return 0.0;
    return std::abs(k.cast<cd>().dot(a)) / (k.norm() * an);
}

std::map<Index3, std::size_t> index_map(const auto& modes) {
    std::map<Index3, std::size_t> out;
    for (std::size_t i = 0; i < modes.size(); ++i) out.emplace(modes[i].index, i);
    return out;
}

double step_for(double box_length) {
    if (!(box_length > 0.0)) throw ValidationError("photon modes: box length must be positive");
    return 2.0 * std::numbers::pi / box_length;
}

} // namespace

Index3 negate(const Index3& index) { return {-index[0], -index[1], -index[2]}; }

double PhotonModeSet::wavenumber_step() const { return step_for(box_length); }
Vec3 PhotonModeSet::wavevector(const Index3& index) const { return index_vector(index, wavenumber_step()); }
double PhotonModeSet::omega(const Index3& index) const { return medium.v() * wavevector(index).norm(); }

double PhotonModeSet::transversality_violation() const {
    double worst = 0.0;
    for (const auto& m : modes) {
        if (is_zero(m.index)) continue;
        const Vec3 k = wavevector(m.index);
        worst = std::max({worst, transverse_ratio(k, m.A), transverse_ratio(k, m.Adot)});
    }
    return worst;
}

double PhotonModeSet::reality_violation() const {
    const auto lookup = index_map(modes);
    double scale = 0.0;
    for (const auto& m : modes) scale = std::max({scale, m.A.norm(), m.Adot.norm()});
    if (scale == 0.0) return 0.0;
    double worst = 0.0;
    for (const auto& m : modes) {
        const auto it = lookup.find(negate(m.index));
        if (it == lookup.end()) {
            worst = std::max({worst, m.A.norm(), m.Adot.norm()});
            continue;
        }
        const auto& p = modes[it->second];
        worst = std::max({worst, (m.A.conjugate() - p.A).norm(), (m.Adot.conjugate() - p.Adot).norm()});
    }
    return worst / scale;
}

void PhotonModeSet::validate() const {
    medium.validate();
    step_for(box_length);
    const auto lookup = index_map(modes);
    if (lookup.size() != modes.size()) throw ValidationError("photon modes: duplicate wavevector index");
    for (const auto& m : modes)
        if (is_zero(m.index)) throw ValidationError("photon modes: k = 0 mode present");
    if (transversality_violation() > 1e-12) throw ValidationError("photon modes: amplitudes are not transverse");
    if (real_field && reality_violation() > 1e-12)
        throw ValidationError("photon modes: amplitudes violate the real-field constraint");
}

double PhotonActionWave::wavenumber_step() const { return step_for(box_length); }
Vec3 PhotonActionWave::wavevector(const Index3& index) const { return index_vector(index, wavenumber_step()); }
double PhotonActionWave::omega(const Index3& index) const { return medium.v() * wavevector(index).norm(); }

std::array<double, 2> PhotonActionWave::eta_linear(std::size_t i) const {
    const auto& m = modes.at(i);
    const auto basis = polarization_basis(wavevector(m.index));
    return {std::norm(basis[0].cast<cd>().dot(m.psi)), std::norm(basis[1].cast<cd>().dot(m.psi))};
}

std::array<double, 2> PhotonActionWave::eta_helical(std::size_t i) const {
    const auto& m = modes.at(i);
    const Vec3 k = wavevector(m.index);
    // Eigen's dot conjugates its left operand
    return {std::norm(helical_vector(k, 1).dot(m.psi)), std::norm(helical_vector(k, -1).dot(m.psi))};
}

double PhotonActionWave::transversality_violation() const {
    double worst = 0.0;
    for (const auto& m : modes) {
        if (is_zero(m.index)) continue;
        worst = std::max(worst, transverse_ratio(wavevector(m.index), m.psi));
    }
    return worst;
}

PhotonActionWave photon_action_wave(const PhotonModeSet& modes, double hbar) {
    modes.validate();
    if (!(hbar > 0.0)) throw ValidationError("photon_action_wave: hbar must be positive");
    PhotonActionWave psi;
    psi.box_length = modes.box_length;
    psi.medium = modes.medium;
    psi.hbar = hbar;
    psi.modes.reserve(modes.modes.size());
    const double mu_v2 = modes.medium.mu * modes.medium.v() * modes.medium.v();
    for (const auto& m : modes.modes) {
        const double omega = modes.omega(m.index);
        const double a = std::sqrt(omega / (2.0 * mu_v2));
        psi.modes.push_back({m.index, a * (m.A.conjugate() + (I / omega) * m.Adot.conjugate())});
    }
    return psi;
}

PhotonModeSet modes_from_psi(const PhotonActionWave& psi) {
    psi.medium.validate();
    const auto lookup = index_map(psi.modes);
    if (lookup.size() != psi.modes.size()) throw ValidationError("modes_from_psi: duplicate wavevector index");
    std::map<Index3, bool> indices;
    for (const auto& m : psi.modes) {
        if (is_zero(m.index)) throw ValidationError("modes_from_psi: k = 0 mode present");
        indices[m.index] = true;
        indices[negate(m.index)] = true;
    }
    auto psi_at = [&](const Index3& idx) -> CVec3 {
        const auto it = lookup.find(idx);
        return it == lookup.end() ? CVec3::Zero() : psi.modes[it->second].psi;
    };

    PhotonModeSet out;
    out.box_length = psi.box_length;
    out.medium = psi.medium;
    out.real_field = true;
    for (const auto& [idx, unused] : indices) {
        (void)unused;
        const double omega = psi.omega(idx);
        const double b = psi.medium.c / std::sqrt(2.0 * psi.medium.epsilon * omega);
        const CVec3 minus = psi_at(negate(idx));
        const CVec3 plus_conj = psi_at(idx).conjugate();
        out.modes.push_back({idx, b * (minus + plus_conj), -I * omega * b * (minus - plus_conj)});
    }
    return out;
}

PhotonModeSet evolve_modes(const PhotonModeSet& modes, double t) {
    PhotonModeSet out = modes;
    for (auto& m : out.modes) {
        const double omega = modes.omega(m.index);
        const double c = std::cos(omega * t);
        const double s = std::sin(omega * t);
        const CVec3 a = m.A;
        m.A = c * a + (s / omega) * m.Adot;
        m.Adot = -omega * s * a + c * m.Adot;
    }
    return out;
}

PhotonActionWave evolve_psi(const PhotonActionWave& psi, double t) {
    PhotonActionWave out = psi;
    for (auto& m : out.modes) m.psi *= std::polar(1.0, -psi.omega(m.index) * t);
    return out;
}

namespace {

// Shared sum for A and dA/dt: c (2 pi)^{-3/2} dk^3 sum (2 eps omega)^{-1/2} 2 Re(factor exp(ik.x) psi').
Vec3 potential_sum(const PhotonActionWave& psi, const Vec3& x, bool rate) {
    const double dk = psi.wavenumber_step();
    const double pre = psi.medium.c * kInvTwoPi32 * dk * dk * dk;
    Vec3 out = Vec3::Zero();
    for (const auto& m : psi.modes) {
        const Vec3 k = psi.wavevector(m.index);
        const double omega = psi.omega(m.index);
        const double b = pre / std::sqrt(2.0 * psi.medium.epsilon * omega);
        cd phase = std::polar(1.0, k.dot(x));
        if (rate) phase *= -I * omega;
        out += 2.0 * b * (phase * m.psi).real();
    }
    return out;
}

RealField sample(const PhotonActionWave& psi, const Grid3& grid, bool rate) {
    grid.validate();
    RealField out = RealField::zeros(grid);
    parallel_for(grid.size(), [&](std::size_t i) { out.values[i] = potential_sum(psi, grid.point(i), rate); });
    return out;
}

} // namespace

Vec3 potential_at(const PhotonActionWave& psi, const Vec3& x) { return potential_sum(psi, x, false); }

RealField potential_from_psi(const PhotonActionWave& psi, const Grid3& grid) { return sample(psi, grid, false); }

RealField potential_rate_from_psi(const PhotonActionWave& psi, const Grid3& grid) { return sample(psi, grid, true); }

PhotonModeSet modes_from_potential(const RealField& A, const RealField& Adot, const MediumParams& medium,
                                   double threshold) {
    medium.validate();
    const Grid3& g = A.grid;
    g.validate();
    if (!(A.grid == Adot.grid)) throw ValidationError("modes_from_potential: A and dA/dt on different grids");
    if (g.length[0] != g.length[1] || g.length[0] != g.length[2])
        throw ValidationError("modes_from_potential: the box must be cubic");
    const double L = g.length[0];
    const double dk = 2.0 * std::numbers::pi / L;
    const std::size_t size = g.size();
    const double scale = std::pow(2.0 * std::numbers::pi, 1.5) / (dk * dk * dk * static_cast<double>(size));

    std::array<std::vector<cd>, 6> hat;
    parallel_for(6, [&](std::size_t c) {
        const RealField& src = c < 3 ? A : Adot;
        const int comp = static_cast<int>(c % 3);
        hat[c].resize(size);
        for (std::size_t i = 0; i < size; ++i) hat[c][i] = src.values[i][comp];
        fft::transform_3d(hat[c], g.n[0], g.n[1], g.n[2], fft::Sign::Plus);
    });

    auto signed_bin = [](std::size_t m, std::size_t n) {
        return 2 * m < n ? static_cast<int>(m) : static_cast<int>(m) - static_cast<int>(n);
    };
    auto nyquist = [](std::size_t m, std::size_t n) { return n % 2 == 0 && 2 * m == n; };

    PhotonModeSet out;
    out.box_length = L;
    out.medium = medium;
    out.real_field = true;
    std::vector<std::pair<PhotonMode, double>> found;
    double largest = 0.0;
    for (std::size_t i = 0; i < g.n[0]; ++i)
        for (std::size_t j = 0; j < g.n[1]; ++j)
            for (std::size_t k = 0; k < g.n[2]; ++k) {
                if (nyquist(i, g.n[0]) || nyquist(j, g.n[1]) || nyquist(k, g.n[2])) continue;
                const Index3 idx{signed_bin(i, g.n[0]), signed_bin(j, g.n[1]), signed_bin(k, g.n[2])};
                if (is_zero(idx)) continue;
                const std::size_t f = g.index(i, j, k);
                PhotonMode mode{idx, scale * CVec3(hat[0][f], hat[1][f], hat[2][f]),
                                scale * CVec3(hat[3][f], hat[4][f], hat[5][f])};
                const double omega = out.omega(idx);
                const double amp = std::sqrt(mode.A.squaredNorm() + mode.Adot.squaredNorm() / (omega * omega));
                largest = std::max(largest, amp);
                found.emplace_back(std::move(mode), amp);
            }
    for (auto& [mode, amp] : found)
        if (amp > threshold * largest) out.modes.push_back(std::move(mode));
    std::sort(out.modes.begin(), out.modes.end(),
              [](const PhotonMode& a, const PhotonMode& b) { return a.index < b.index; });
    return out;
}

FieldSnapshot snapshot_from_modes(const PhotonModeSet& modes, const Grid3& grid) {
    modes.medium.validate();
    grid.validate();
    const double dk = modes.wavenumber_step();
    const double pre = kInvTwoPi32 * dk * dk * dk;
    RealField E = RealField::zeros(grid);
    RealField B = RealField::zeros(grid);
    parallel_for(grid.size(), [&](std::size_t i) {
        const Vec3 x = grid.point(i);
        CVec3 e = CVec3::Zero();
        CVec3 b = CVec3::Zero();
        for (const auto& m : modes.modes) {
            const Vec3 k = modes.wavevector(m.index);
            const cd phase = std::polar(pre, -k.dot(x));
            e -= phase * m.Adot / modes.medium.c;
            b += phase * (-I) * cross(k.cast<cd>(), m.A);
        }
        E.values[i] = e.real();
        B.values[i] = b.real();
    });
    return make_snapshot(E, B, modes.medium);
}

double action_area_3d(const PhotonActionWave& psi) {
    const double dk = psi.wavenumber_step();
    double sum = 0.0;
    for (const auto& m : psi.modes) sum += m.psi.squaredNorm();
    return 2.0 * std::numbers::pi * dk * dk * dk * sum;
}

double photon_number(const PhotonActionWave& psi) {
    return action_area_3d(psi) / (2.0 * std::numbers::pi * psi.hbar);
}

PhotonActionWave normalize_photons(const PhotonActionWave& psi, int quanta) {
    if (quanta < 1) throw ValidationError("normalize_photons: quanta must be >= 1");
    const double area = action_area_3d(psi);
    if (!(area > 0.0)) throw ValidationError("normalize_photons: zero wave cannot be normalized");
    const double factor = std::sqrt(quanta * 2.0 * std::numbers::pi * psi.hbar / area);
    PhotonActionWave out = psi;
    for (auto& m : out.modes) m.psi *= factor;
    return out;
}

double PhotonWigner::wavenumber_step() const { return step_for(box_length); }

Vec3 PhotonWigner::momentum(std::size_t cell) const {
    const auto& s = cells.at(cell).sum;
    return dp() * Vec3(s[0], s[1], s[2]);
}

double PhotonWigner::value(std::size_t cell, const Vec3& x) const {
    const double dk = wavenumber_step();
    double sum = 0.0;
    for (const auto& [d, coeff] : cells.at(cell).harmonics) {
        const double arg = dk * (d[0] * x[0] + d[1] * x[1] + d[2] * x[2]);
        sum += (coeff * std::polar(1.0, arg)).real();
    }
    return prefactor * sum;
}

double PhotonWigner::weighted_total(const std::function<double(const Vec3&)>& energy) const {
    // only the d = 0 harmonic survives the box integral
    const double dp3 = dp() * dp() * dp();
    const double volume = box_length * box_length * box_length;
    double sum = 0.0;
    for (std::size_t c = 0; c < cells.size(); ++c) {
        for (const auto& [d, coeff] : cells[c].harmonics)
            if (is_zero(d)) sum += coeff.real() * energy(momentum(c));
    }
    return prefactor * dp3 * volume * sum;
}

double PhotonWigner::total() const {
    return weighted_total([](const Vec3&) { return 1.0; });
}

ScalarField PhotonWigner::x_marginal(const Grid3& grid) const {
    grid.validate();
    const double dp3 = dp() * dp() * dp();
    ScalarField out(grid.size(), 0.0);
    parallel_for(grid.size(), [&](std::size_t i) {
        const Vec3 x = grid.point(i);
        double sum = 0.0;
        for (std::size_t c = 0; c < cells.size(); ++c) sum += value(c, x);
        out[i] = dp3 * sum;
    });
    return out;
}

PhotonWigner wigner_3d(const PhotonActionWave& psi) {
    if (!(psi.hbar > 0.0)) throw ValidationError("wigner_3d: hbar must be positive");
    const double dk = psi.wavenumber_step();
    PhotonWigner out;
    out.box_length = psi.box_length;
    out.hbar = psi.hbar;
    const double h4 = psi.hbar * psi.hbar * psi.hbar * psi.hbar;
    out.prefactor = std::pow(2.0 * dk / (2.0 * std::numbers::pi), 3) / h4;

    std::map<Index3, std::map<Index3, cd>> cells;
    for (const auto& a : psi.modes)
        for (const auto& b : psi.modes) {
            const Index3 s{a.index[0] + b.index[0], a.index[1] + b.index[1], a.index[2] + b.index[2]};
            const Index3 d{a.index[0] - b.index[0], a.index[1] - b.index[1], a.index[2] - b.index[2]};
            // psi_a . conj(psi_b) summed over polarization components
            cells[s][d] += b.psi.dot(a.psi);
        }
    out.cells.reserve(cells.size());
    for (auto& [s, harmonics] : cells) {
        PhotonWignerCell cell{s, {}};
        cell.harmonics.assign(harmonics.begin(), harmonics.end());
        out.cells.push_back(std::move(cell));
    }
    return out;
}

double energy_x_space(const PhotonModeSet& modes, const Grid3& grid) {
    const FieldSnapshot s = snapshot_from_modes(modes, grid);
    const EnergyFlow flow = energy_and_poynting_direct(s, modes.medium);
    double sum = 0.0;
    for (double w : flow.w) sum += w;
    return sum * grid.cell_volume();
}

double energy_k_space(const PhotonActionWave& psi) {
    const double dk = psi.wavenumber_step();
    double sum = 0.0;
    for (const auto& m : psi.modes) sum += psi.omega(m.index) * m.psi.squaredNorm();
    return dk * dk * dk * sum;
}

double energy_phase_space(const PhotonWigner& wigner, const MediumParams& medium) {
    const double v = medium.v();
    return wigner.weighted_total([v](const Vec3& p) { return v * p.norm(); });
}

} // namespace wq::em
