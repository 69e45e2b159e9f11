#ifndef IRSIM_TIMEVARYING_HPP
#define IRSIM_TIMEVARYING_HPP

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "irsim/geometry.hpp"
#include "irsim/propagation.hpp"

namespace irsim {

/// The two reflection states of a binary time-varying lattice. +1/-1
/// (open/short circuit) maximize the Euclidean separation on the unit
/// circle, |state_on - state_off| = 2.
struct ModulationStates {
    static constexpr double state_on = 1.0;
    static constexpr double state_off = -1.0;
};

/// Square-wave reflection coefficients: every lattice alternates between
/// +1 and -1 at mod_frequency, offset by its own delay tau_mn. Delays are
/// stored unreduced; they are taken modulo the period only when the
/// waveform itself is evaluated.
struct SquareWaveProfile {
    double mod_frequency = 0.0;       // f0, Hz
    std::size_t count_x = 1;          // M lattices
    std::size_t count_y = 1;          // N lattices
    std::vector<double> delays;       // tau_mn, seconds, row-major (n outer, m inner)

    static SquareWaveProfile synchronized(std::size_t m, std::size_t n, double f0);

    double period() const { return 1.0 / mod_frequency; }
    std::size_t size() const { return count_x * count_y; }
    double delay(std::size_t m, std::size_t n) const; // 1-based lattice indices
    void validate() const;

    /// The harmonic analysis assumes f_c >> f0; warn when f_c/f0 < 100.
    std::optional<std::string> carrier_ratio_warning(const PropagationContext& ctx) const;
};

/// Gamma_mn(t): +1 while (t - tau_mn) mod T0 falls in the first half period,
/// -1 in the second. Lattice indices are 1-based as in the m,n lattice grid.
std::vector<double> gamma_waveform(const SquareWaveProfile& profile, std::size_t m, std::size_t n,
                                   std::span<const double> times);

/// Per-lattice Fourier-series coefficients of the square wave for a set of
/// harmonic indices.
struct HarmonicCoefficients {
    std::vector<int> harmonics;
    std::vector<std::vector<Complex>> values; // values[h][lattice], row-major lattices

    const std::vector<Complex>& for_harmonic(int k) const;
};

/// Closed-form coefficients: D^k = (2/(pi k)) e^{-j(2 pi k f0 tau + pi/2)}
/// for odd k (negative odd k follows from conjugate symmetry of the real
/// waveform), exactly zero for even k and k = 0.
HarmonicCoefficients fourier_coefficients(const SquareWaveProfile& profile,
                                          std::span<const int> harmonics);

/// Far-field pattern of the energy scattered at f_c + k f0:
/// E^k(t,p) = E0(t,p)/(M N) * sum_mn D^k_mn F_mn(t,p), with corner-anchored
/// lattice phase factors F_mn. Even k gives the identically zero pattern.
struct HarmonicPattern {
    int harmonic = 0;
    double frequency = 0.0; // absolute, f_c + k f0
    std::vector<DirectionAngles> directions;
    std::vector<Complex> values;

    std::size_t size() const { return values.size(); }
};

HarmonicPattern harmonic_pattern(const ApertureGrid& lattice, const SquareWaveProfile& profile,
                                 int k, std::span<const DirectionAngles> dirs,
                                 const PropagationContext& ctx,
                                 const ElementPattern& pattern = ElementPattern::isotropic());

/// Static pattern of the same lattice with invariant reflection
/// coefficients (Gamma_mn = 1), normalized by 1/(M N); the reference the
/// harmonic magnitudes are compared against.
HarmonicPattern invariant_pattern(const ApertureGrid& lattice, const PropagationContext& ctx,
                                  std::span<const DirectionAngles> dirs,
                                  const ElementPattern& pattern = ElementPattern::isotropic());

/// Delays that steer harmonic k to (theta0, phi0):
/// tau_mn = f_c/(c0 k f0) * ((m-1) d_m sin t0 cos p0 + (n-1) d_n sin t0 sin p0).
/// Throws for even k, which carries no energy.
std::vector<double> steering_delays(const ApertureGrid& lattice, const DirectionAngles& target,
                                    int k, const PropagationContext& ctx, double mod_frequency);

/// One spectral line of the scattered field at a fixed direction.
struct SpectralLine {
    int harmonic = 0;
    double frequency = 0.0; // f_c + k f0
    Complex value{0.0, 0.0};
};

/// Harmonic amplitudes at a single direction for k in [-k_max, k_max].
std::vector<SpectralLine> spectrum_at_direction(const ApertureGrid& lattice,
                                                const SquareWaveProfile& profile,
                                                const DirectionAngles& dir, int k_max,
                                                const PropagationContext& ctx,
                                                const ElementPattern& pattern =
                                                    ElementPattern::isotropic());

} // namespace irsim

#endif
