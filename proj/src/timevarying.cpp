#include "irsim/timevarying.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace irsim {

SquareWaveProfile SquareWaveProfile::synchronized(std::size_t m, std::size_t n, double f0) {
    SquareWaveProfile p;
    p.mod_frequency = f0;
    p.count_x = m;
    p.count_y = n;
    p.delays.assign(m * n, 0.0);
    p.validate();
    return p;
}

double SquareWaveProfile::delay(std::size_t m, std::size_t n) const {
    if (m < 1 || m > count_x || n < 1 || n > count_y)
        throw std::out_of_range("lattice index out of range");
    return delays[(n - 1) * count_x + (m - 1)];
}

void SquareWaveProfile::validate() const {
    if (!(mod_frequency > 0.0)) throw std::invalid_argument("mod_frequency must be > 0");
    if (count_x < 1 || count_y < 1) throw std::invalid_argument("lattice counts must be >= 1");
    if (delays.size() != size())
        throw std::invalid_argument("delay matrix does not match the lattice size");
    for (double t : delays)
        if (!std::isfinite(t)) throw std::invalid_argument("delay must be finite");
}

std::optional<std::string> SquareWaveProfile::carrier_ratio_warning(
    const PropagationContext& ctx) const {
    const double ratio = ctx.frequency / mod_frequency;
    if (ratio >= 100.0) return std::nullopt;
    char buf[128];
    std::snprintf(buf, sizeof buf,
                  "carrier/modulation ratio f_c/f_0 = %.3g is below 100; the harmonic "
                  "model assumes f_c >> f_0",
                  ratio);
    return std::string(buf);
}

std::vector<double> gamma_waveform(const SquareWaveProfile& profile, std::size_t m, std::size_t n,
                                   std::span<const double> times) {
    profile.validate();
    const double tau = profile.delay(m, n);
    const double t0 = profile.period();
    std::vector<double> out;
    out.reserve(times.size());
    for (double t : times) {
        double local = std::fmod(t - tau, t0);
        if (local < 0.0) local += t0;
        out.push_back(local < t0 / 2.0 ? ModulationStates::state_on : ModulationStates::state_off);
    }
    return out;
}

const std::vector<Complex>& HarmonicCoefficients::for_harmonic(int k) const {
    for (std::size_t i = 0; i < harmonics.size(); ++i)
        if (harmonics[i] == k) return values[i];
    throw std::out_of_range("harmonic " + std::to_string(k) + " not present");
}

namespace {

// D^k for one lattice. Even k (including 0) vanishes; odd positive k follows
// Eq.-style closed form, odd negative k is the conjugate (real waveform).
Complex coefficient(int k, double f0, double tau) {
    if (k == 0 || k % 2 == 0) return {0.0, 0.0};
    const int ka = std::abs(k);
    const double mag = 2.0 / (kPi * static_cast<double>(ka));
    const double phase = -(2.0 * kPi * static_cast<double>(ka) * f0 * tau + kPi / 2.0);
    const Complex pos = std::polar(mag, phase);
    return k > 0 ? pos : std::conj(pos);
}

} // namespace

HarmonicCoefficients fourier_coefficients(const SquareWaveProfile& profile,
                                          std::span<const int> harmonics) {
    profile.validate();
    HarmonicCoefficients out;
    out.harmonics.assign(harmonics.begin(), harmonics.end());
    out.values.resize(harmonics.size());
    for (std::size_t h = 0; h < out.harmonics.size(); ++h) {
        out.values[h].resize(profile.size());
        for (std::size_t i = 0; i < profile.size(); ++i)
            out.values[h][i] = coefficient(out.harmonics[h], profile.mod_frequency,
                                           profile.delays[i]);
    }
    return out;
}

namespace {

// Corner-anchored lattice phase factors F_mn for one direction.
void lattice_phases(const ApertureGrid& lattice, const PropagationContext& ctx,
                    const DirectionAngles& dir, std::vector<Complex>& f_mn) {
    const double k0 = ctx.wavenumber();
    const Point3 u = direction_to_unit_vector(dir);
    f_mn.resize(lattice.size());
    for (std::size_t n = 0; n < lattice.count_y; ++n) {
        for (std::size_t m = 0; m < lattice.count_x; ++m) {
            const double arg = k0 * (static_cast<double>(m) * lattice.spacing_x * u.x +
                                     static_cast<double>(n) * lattice.spacing_y * u.y);
            f_mn[n * lattice.count_x + m] = std::polar(1.0, arg);
        }
    }
}

} // namespace

HarmonicPattern harmonic_pattern(const ApertureGrid& lattice, const SquareWaveProfile& profile,
                                 int k, std::span<const DirectionAngles> dirs,
                                 const PropagationContext& ctx, const ElementPattern& pattern) {
    lattice.validate();
    profile.validate();
    ctx.validate();
    if (lattice.count_x != profile.count_x || lattice.count_y != profile.count_y)
        throw std::invalid_argument("square-wave profile does not match the lattice grid");

    HarmonicPattern out;
    out.harmonic = k;
    out.frequency = ctx.frequency + static_cast<double>(k) * profile.mod_frequency;
    out.directions.assign(dirs.begin(), dirs.end());
    out.values.assign(dirs.size(), Complex{0.0, 0.0});
    if (k == 0 || k % 2 == 0) return out; // even harmonics carry no energy

    std::vector<Complex> coeff(profile.size());
    for (std::size_t i = 0; i < profile.size(); ++i)
        coeff[i] = coefficient(k, profile.mod_frequency, profile.delays[i]);

    const double inv_mn = 1.0 / static_cast<double>(lattice.size());
    std::vector<Complex> f_mn;
    for (std::size_t d = 0; d < dirs.size(); ++d) {
        lattice_phases(lattice, ctx, dirs[d], f_mn);
        Complex acc{0.0, 0.0};
        for (std::size_t i = 0; i < coeff.size(); ++i) acc += coeff[i] * f_mn[i];
        out.values[d] = pattern(dirs[d]) * inv_mn * acc;
    }
    return out;
}

HarmonicPattern invariant_pattern(const ApertureGrid& lattice, const PropagationContext& ctx,
                                  std::span<const DirectionAngles> dirs,
                                  const ElementPattern& pattern) {
    lattice.validate();
    ctx.validate();
    HarmonicPattern out;
    out.harmonic = 0;
    out.frequency = ctx.frequency;
    out.directions.assign(dirs.begin(), dirs.end());
    out.values.resize(dirs.size());
    const double inv_mn = 1.0 / static_cast<double>(lattice.size());
    std::vector<Complex> f_mn;
    for (std::size_t d = 0; d < dirs.size(); ++d) {
        lattice_phases(lattice, ctx, dirs[d], f_mn);
        Complex acc{0.0, 0.0};
        for (const Complex& f : f_mn) acc += f;
        out.values[d] = pattern(dirs[d]) * inv_mn * acc;
    }
    return out;
}

std::vector<double> steering_delays(const ApertureGrid& lattice, const DirectionAngles& target,
                                    int k, const PropagationContext& ctx, double mod_frequency) {
    lattice.validate();
    target.validate();
    ctx.validate();
    if (!(mod_frequency > 0.0)) throw std::invalid_argument("mod_frequency must be > 0");
    if (k == 0 || k % 2 == 0)
        throw std::invalid_argument("even harmonics carry no energy to steer");
    const Point3 u = direction_to_unit_vector(target);
    const double scale =
        ctx.frequency / (ctx.wave_speed * static_cast<double>(k) * mod_frequency);
    std::vector<double> delays(lattice.size());
    for (std::size_t n = 0; n < lattice.count_y; ++n) {
        for (std::size_t m = 0; m < lattice.count_x; ++m) {
            delays[n * lattice.count_x + m] =
                scale * (static_cast<double>(m) * lattice.spacing_x * u.x +
                         static_cast<double>(n) * lattice.spacing_y * u.y);
        }
    }
    return delays;
}

std::vector<SpectralLine> spectrum_at_direction(const ApertureGrid& lattice,
                                                const SquareWaveProfile& profile,
                                                const DirectionAngles& dir, int k_max,
                                                const PropagationContext& ctx,
                                                const ElementPattern& pattern) {
    if (k_max < 1) throw std::invalid_argument("k_max must be >= 1");
    const DirectionAngles dirs[1] = {dir};
    std::vector<SpectralLine> out;
    out.reserve(2 * static_cast<std::size_t>(k_max) + 1);
    for (int k = -k_max; k <= k_max; ++k) {
        const HarmonicPattern p = harmonic_pattern(lattice, profile, k, dirs, ctx, pattern);
        out.push_back({k, p.frequency, p.values[0]});
    }
    return out;
}

} // namespace irsim
