#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "irsim/geometry.hpp"
#include "irsim/synthesis.hpp"
#include "irsim/timevarying.hpp"

using namespace irsim;

namespace {

// Quadrature oracle for the defining coefficient integral
//   D^k = (1/T0) * integral over one period of Gamma(t) e^{-j 2 pi k f0 t} dt.
// Gamma is piecewise constant (+1 then -1, offset by tau), so the integral
// is split at the switching instants and each smooth piece integrated with
// the composite trapezoid rule.
Complex coefficient_by_quadrature(int k, double f0, double tau, std::size_t points_per_piece) {
    const double t0 = 1.0 / f0;
    const double w = 2.0 * kPi * static_cast<double>(k) * f0;
    double start = std::fmod(tau, t0);
    if (start < 0.0) start += t0;

    auto piece = [&](double a, double b, double sign) {
        const std::size_t n = points_per_piece;
        const double h = (b - a) / static_cast<double>(n);
        Complex acc = 0.5 * (std::polar(1.0, -w * a) + std::polar(1.0, -w * b));
        for (std::size_t i = 1; i < n; ++i)
            acc += std::polar(1.0, -w * (a + static_cast<double>(i) * h));
        return sign * acc * h;
    };

    // +1 on [tau, tau + T0/2), -1 on [tau + T0/2, tau + T0), shifted into [0, T0)
    const double half = t0 / 2.0;
    Complex integral{0.0, 0.0};
    if (start + half <= t0) {
        integral += piece(start, start + half, +1.0);
        integral += piece(start + half, start + t0 > t0 ? t0 : start + t0, -1.0);
        integral += piece(0.0, start, -1.0);
    } else {
        integral += piece(start, t0, +1.0);
        integral += piece(0.0, start + half - t0, +1.0);
        integral += piece(start + half - t0, start, -1.0);
    }
    return integral / t0;
}

} // namespace

TEST_CASE("gamma waveform: synchronized lattice switches at the half period") {
    const auto profile = SquareWaveProfile::synchronized(3, 3, 1000.0);
    const double t0 = profile.period();
    const std::vector<double> times{0.0, t0 / 4, t0 / 2, 3 * t0 / 4, t0, t0 + t0 / 4};
    const auto g = gamma_waveform(profile, 1, 1, times);
    CHECK(g[0] == 1.0);
    CHECK(g[1] == 1.0);
    CHECK(g[2] == -1.0);
    CHECK(g[3] == -1.0);
    CHECK(g[4] == 1.0);
    CHECK(g[5] == 1.0);
}

TEST_CASE("gamma waveform: half-period delay negates, full period is identity") {
    auto profile = SquareWaveProfile::synchronized(2, 2, 250.0);
    const double t0 = profile.period();
    std::vector<double> times;
    for (int i = 0; i < 64; ++i) times.push_back(static_cast<double>(i) * t0 / 37.0);

    const auto base = gamma_waveform(profile, 1, 1, times);
    profile.delays[0] = t0 / 2.0;
    const auto shifted = gamma_waveform(profile, 1, 1, times);
    profile.delays[0] = t0;
    const auto wrapped = gamma_waveform(profile, 1, 1, times);
    for (std::size_t i = 0; i < times.size(); ++i) {
        CHECK(shifted[i] == -base[i]);
        CHECK(wrapped[i] == base[i]);
    }
}

TEST_CASE("gamma waveform rejects out-of-range lattice indices") {
    const auto profile = SquareWaveProfile::synchronized(2, 3, 100.0);
    const std::vector<double> times{0.0};
    CHECK_THROWS_AS(gamma_waveform(profile, 0, 1, times), std::out_of_range);
    CHECK_THROWS_AS(gamma_waveform(profile, 3, 1, times), std::out_of_range);
    CHECK_THROWS_AS(gamma_waveform(profile, 1, 4, times), std::out_of_range);
}

TEST_CASE("fourier coefficients: closed form for the first harmonics") {
    const auto profile = SquareWaveProfile::synchronized(1, 1, 1e4);
    const std::vector<int> ks{1, 2, 3};
    const auto co = fourier_coefficients(profile, ks);

    const Complex d1 = co.for_harmonic(1)[0];
    CHECK(std::abs(d1) == doctest::Approx(2.0 / kPi).epsilon(1e-12));
    CHECK(std::arg(d1) == doctest::Approx(-kPi / 2).epsilon(1e-12));

    CHECK(co.for_harmonic(2)[0] == Complex{0.0, 0.0}); // exactly zero

    const Complex d3 = co.for_harmonic(3)[0];
    CHECK(std::abs(d3) == doctest::Approx(2.0 / (3.0 * kPi)).epsilon(1e-12));
    CHECK(std::arg(d3) == doctest::Approx(-kPi / 2).epsilon(1e-12));

    // oracle agreement for k = 3
    const Complex oracle = coefficient_by_quadrature(3, 1e4, 0.0, 20000);
    CHECK(std::abs(d3 - oracle) < 1e-6);
}

TEST_CASE("fourier coefficients match the quadrature oracle for |k| <= 15") {
    const double f0 = 2.5e3;
    std::mt19937 rng(41);
    std::uniform_real_distribution<double> tau(-2.0 / f0, 2.0 / f0);
    std::vector<int> ks;
    for (int k = -15; k <= 15; ++k) ks.push_back(k);

    for (int trial = 0; trial < 16; ++trial) {
        SquareWaveProfile profile = SquareWaveProfile::synchronized(1, 1, f0);
        profile.delays[0] = tau(rng);
        const auto co = fourier_coefficients(profile, ks);
        for (int k : ks) {
            const Complex closed = co.for_harmonic(k)[0];
            if (k == 0 || k % 2 == 0) {
                CHECK(closed == Complex{0.0, 0.0});
                continue;
            }
            const Complex oracle = coefficient_by_quadrature(k, f0, profile.delays[0], 20000);
            CHECK(std::abs(closed - oracle) < 1e-6);
        }
    }
}

TEST_CASE("negative harmonics carry the conjugate phase (+pi/2 at zero delay)") {
    const auto profile = SquareWaveProfile::synchronized(1, 1, 1e3);
    const std::vector<int> ks{-3, -1, 1, 3};
    const auto co = fourier_coefficients(profile, ks);
    CHECK(std::arg(co.for_harmonic(-1)[0]) == doctest::Approx(kPi / 2).epsilon(1e-12));
    CHECK(std::arg(co.for_harmonic(-3)[0]) == doctest::Approx(kPi / 2).epsilon(1e-12));
    CHECK(std::abs(co.for_harmonic(-1)[0] - std::conj(co.for_harmonic(1)[0])) < 1e-15);
    CHECK(std::abs(co.for_harmonic(-3)[0] - std::conj(co.for_harmonic(3)[0])) < 1e-15);
}

TEST_CASE("delay-phase linearity of the coefficients") {
    const double f0 = 1e4;
    std::mt19937 rng(43);
    std::uniform_real_distribution<double> tau(-3e-4, 3e-4);
    const std::vector<int> ks{1, 3, 5, -1, -7};
    for (int trial = 0; trial < 12; ++trial) {
        const double t = tau(rng);
        SquareWaveProfile delayed = SquareWaveProfile::synchronized(1, 1, f0);
        delayed.delays[0] = t;
        const auto zero = fourier_coefficients(SquareWaveProfile::synchronized(1, 1, f0), ks);
        const auto with_delay = fourier_coefficients(delayed, ks);
        for (int k : ks) {
            const double expected = -2.0 * kPi * static_cast<double>(k) * f0 * t;
            const double got =
                std::arg(with_delay.for_harmonic(k)[0]) - std::arg(zero.for_harmonic(k)[0]);
            CHECK(std::abs(wrap_phase(got - expected)) < 1e-9);
        }
    }
}

TEST_CASE("square wave power is concentrated in the odd harmonics") {
    // partial Parseval sums: unit total power, slowly converging tail
    auto partial_power = [](int k_limit) {
        double sum = 0.0;
        for (int k = -k_limit; k <= k_limit; ++k) {
            if (k == 0 || k % 2 == 0) continue;
            const double mag = 2.0 / (kPi * std::abs(static_cast<double>(k)));
            sum += mag * mag;
        }
        return sum;
    };
    CHECK(partial_power(99) >= 0.995);
    CHECK(partial_power(999) >= 0.999);
    CHECK(partial_power(999) <= 1.0);
}

TEST_CASE("harmonic pattern: synchronized lattices reflect back to broadside at 2/pi") {
    const PropagationContext ctx{28e9};
    const double lambda = ctx.wavelength();
    const ApertureGrid lattice{10, 10, lambda / 2, lambda / 2, {}};
    const auto profile = SquareWaveProfile::synchronized(10, 10, 1e4);

    std::vector<DirectionAngles> dirs;
    for (double t = 0.0; t <= 90.0; t += 1.0)
        for (double p = -179.0; p <= 180.0; p += 1.0)
            dirs.push_back(DirectionAngles::from_degrees(t, p));

    const HarmonicPattern h1 = harmonic_pattern(lattice, profile, 1, dirs, ctx);
    const HarmonicPattern inv = invariant_pattern(lattice, ctx, dirs);

    std::size_t best = 0, best_inv = 0;
    for (std::size_t i = 0; i < dirs.size(); ++i) {
        if (std::abs(h1.values[i]) > std::abs(h1.values[best])) best = i;
        if (std::abs(inv.values[i]) > std::abs(inv.values[best_inv])) best_inv = i;
    }
    CHECK(dirs[best].theta == doctest::Approx(0.0));
    CHECK(dirs[best_inv].theta == doctest::Approx(0.0));
    CHECK(std::abs(h1.values[best]) / std::abs(inv.values[best_inv]) ==
          doctest::Approx(2.0 / kPi).epsilon(1e-12));
    CHECK(h1.frequency == doctest::Approx(28e9 + 1e4));
}

TEST_CASE("harmonic pattern: even harmonics are identically zero") {
    const PropagationContext ctx{28e9};
    const double lambda = ctx.wavelength();
    const ApertureGrid lattice{6, 6, lambda / 2, lambda / 2, {}};
    auto profile = SquareWaveProfile::synchronized(6, 6, 1e4);
    profile.delays[7] = 1e-5; // arbitrary delays do not matter for even k
    std::vector<DirectionAngles> dirs{DirectionAngles::from_degrees(0, 0),
                                      DirectionAngles::from_degrees(30, 45)};
    for (int k : {0, 2, -4}) {
        const HarmonicPattern h = harmonic_pattern(lattice, profile, k, dirs, ctx);
        for (const Complex& v : h.values) CHECK(v == Complex{0.0, 0.0});
    }
}

TEST_CASE("harmonic pattern with zero delays is the static pattern scaled by D^k") {
    const PropagationContext ctx{28e9};
    const double lambda = ctx.wavelength();
    const ApertureGrid lattice{8, 8, lambda / 2, lambda / 2, {}};
    const auto profile = SquareWaveProfile::synchronized(8, 8, 1e4);
    std::vector<DirectionAngles> dirs;
    for (double t = 0.0; t <= 80.0; t += 16.0)
        for (double p = -160.0; p <= 160.0; p += 40.0)
            dirs.push_back(DirectionAngles::from_degrees(t, p));
    for (int k : {1, 3, 5}) {
        const HarmonicPattern h = harmonic_pattern(lattice, profile, k, dirs, ctx);
        const HarmonicPattern inv = invariant_pattern(lattice, ctx, dirs);
        const Complex dk = std::polar(2.0 / (kPi * k), -kPi / 2.0);
        for (std::size_t i = 0; i < dirs.size(); ++i)
            CHECK(std::abs(h.values[i] - dk * inv.values[i]) < 1e-12);
    }
}

TEST_CASE("harmonic pattern magnitude never exceeds 2/(pi |k|)") {
    const PropagationContext ctx{28e9};
    const double lambda = ctx.wavelength();
    const ApertureGrid lattice{10, 10, lambda / 2, lambda / 2, {}};
    std::mt19937 rng(47);
    std::uniform_real_distribution<double> tau(0.0, 1e-4);
    auto profile = SquareWaveProfile::synchronized(10, 10, 1e4);
    for (double& d : profile.delays) d = tau(rng);
    std::vector<DirectionAngles> dirs;
    for (double t = 0.0; t <= 90.0; t += 3.0)
        for (double p = -177.0; p <= 180.0; p += 3.0)
            dirs.push_back(DirectionAngles::from_degrees(t, p));
    for (int k : {1, 3, -5}) {
        const HarmonicPattern h = harmonic_pattern(lattice, profile, k, dirs, ctx);
        const double bound = 2.0 / (kPi * std::abs(k));
        for (const Complex& v : h.values) CHECK(std::abs(v) <= bound + 1e-12);
    }
}

TEST_CASE("steering delays: first lattice and broadside cases") {
    const PropagationContext ctx{28e9};
    const double lambda = ctx.wavelength();
    const ApertureGrid lattice{10, 10, lambda / 2, lambda / 2, {}};

    const auto broadside = steering_delays(lattice, {0.0, 0.0}, 1, ctx, 1e4);
    for (double d : broadside) CHECK(d == 0.0);

    const auto steered =
        steering_delays(lattice, DirectionAngles::from_degrees(30, 45), 1, ctx, 1e4);
    CHECK(steered[0] == 0.0); // m = n = 1
    CHECK(steered[1] > 0.0);

    CHECK_THROWS_AS(steering_delays(lattice, {0.0, 0.0}, 2, ctx, 1e4), std::invalid_argument);
}

TEST_CASE("steering delays put the harmonic-1 peak on the target") {
    const PropagationContext ctx{28e9};
    const double lambda = ctx.wavelength();
    const ApertureGrid lattice{10, 10, lambda / 2, lambda / 2, {}};
    const double f0 = 1e4;

    std::vector<DirectionAngles> dirs;
    for (double t = 0.0; t <= 90.0; t += 1.0)
        for (double p = -179.0; p <= 180.0; p += 1.0)
            dirs.push_back(DirectionAngles::from_degrees(t, p));

    std::mt19937 rng(53);
    std::uniform_real_distribution<double> th(0.0, 60.0), ph(-179.0, 180.0);
    for (int trial = 0; trial < 6; ++trial) {
        const DirectionAngles target = trial == 0 ? DirectionAngles::from_degrees(30, 45)
                                                  : DirectionAngles::from_degrees(th(rng), ph(rng));
        auto profile = SquareWaveProfile::synchronized(10, 10, f0);
        profile.delays = steering_delays(lattice, target, 1, ctx, f0);
        const HarmonicPattern h = harmonic_pattern(lattice, profile, 1, dirs, ctx);
        std::size_t best = 0;
        for (std::size_t i = 0; i < dirs.size(); ++i)
            if (std::abs(h.values[i]) > std::abs(h.values[best])) best = i;
        const double step = kPi / 180.0;
        const double cell = std::hypot(step, step * std::max(std::sin(target.theta), 0.02));
        CHECK(angle_between(dirs[best], target) <= cell + 1e-9);
        // steered peak reaches the full 2/(pi k) magnitude at the target
        const std::vector<DirectionAngles> at_target{target};
        const HarmonicPattern ht = harmonic_pattern(lattice, profile, 1, at_target, ctx);
        CHECK(std::abs(ht.values[0]) == doctest::Approx(2.0 / kPi).epsilon(1e-12));
    }
}

TEST_CASE("harmonic-3 with harmonic-1 delays is reduced below its ceiling") {
    const PropagationContext ctx{28e9};
    const double lambda = ctx.wavelength();
    const ApertureGrid lattice{10, 10, lambda / 2, lambda / 2, {}};
    const double f0 = 1e4;
    const DirectionAngles target = DirectionAngles::from_degrees(30, 45);
    auto profile = SquareWaveProfile::synchronized(10, 10, f0);
    profile.delays = steering_delays(lattice, target, 1, ctx, f0);
    const std::vector<DirectionAngles> at_target{target};
    const HarmonicPattern h3 = harmonic_pattern(lattice, profile, 3, at_target, ctx);
    CHECK(std::abs(h3.values[0]) < 2.0 / (3.0 * kPi) - 1e-3);
}

TEST_CASE("spectrum at broadside: odd-harmonic ladder and conjugate symmetry") {
    const PropagationContext ctx{28e9};
    const double lambda = ctx.wavelength();
    const ApertureGrid lattice{10, 10, lambda / 2, lambda / 2, {}};
    const auto profile = SquareWaveProfile::synchronized(10, 10, 1e4);
    const auto lines = spectrum_at_direction(lattice, profile, {0.0, 0.0}, 5, ctx);
    REQUIRE(lines.size() == 11);
    for (const SpectralLine& l : lines) {
        CHECK(l.frequency == doctest::Approx(28e9 + l.harmonic * 1e4));
        if (l.harmonic == 0 || l.harmonic % 2 == 0) {
            CHECK(std::abs(l.value) == 0.0);
        } else {
            CHECK(std::abs(l.value) ==
                  doctest::Approx(2.0 / (kPi * std::abs(l.harmonic))).epsilon(1e-12));
        }
    }
    // E^{-k} = conj(E^{k}) at broadside where the static sum is real
    for (int k = 1; k <= 5; k += 2) {
        const Complex pos = lines[static_cast<std::size_t>(5 + k)].value;
        const Complex neg = lines[static_cast<std::size_t>(5 - k)].value;
        CHECK(std::abs(neg - std::conj(pos)) < 1e-12);
    }
}

TEST_CASE("spectrum magnitudes are symmetric in k at any direction for zero delays") {
    const PropagationContext ctx{28e9};
    const double lambda = ctx.wavelength();
    const ApertureGrid lattice{10, 10, lambda / 2, lambda / 2, {}};
    const auto profile = SquareWaveProfile::synchronized(10, 10, 1e4);
    const auto lines = spectrum_at_direction(
        lattice, profile, DirectionAngles::from_degrees(37, -58), 7, ctx);
    for (int k = 1; k <= 7; k += 2) {
        const double pos = std::abs(lines[static_cast<std::size_t>(7 + k)].value);
        const double neg = std::abs(lines[static_cast<std::size_t>(7 - k)].value);
        CHECK(pos == doctest::Approx(neg).epsilon(1e-12));
    }
}

TEST_CASE("carrier ratio warning below 100") {
    const auto profile = SquareWaveProfile::synchronized(4, 4, 1e8);
    CHECK(profile.carrier_ratio_warning(PropagationContext{1e9}));
    CHECK(!profile.carrier_ratio_warning(PropagationContext{1e10}));
}

TEST_CASE("delay steering phases equal the conjugate-phase steering profile") {
    // normal-incidence plane wave: harmonic-1 excitation phases from the
    // delay rule match the static steering hologram up to a constant
    const PropagationContext ctx{28e9};
    const double lambda = ctx.wavelength();
    const ApertureGrid lattice{10, 10, lambda / 2, lambda / 2, {}};
    const double f0 = 1e4;
    const DirectionAngles target = DirectionAngles::from_degrees(30, 45);

    auto profile = SquareWaveProfile::synchronized(10, 10, f0);
    profile.delays = steering_delays(lattice, target, 1, ctx, f0);
    const std::vector<int> ks{1};
    const auto co = fourier_coefficients(profile, ks);

    ComplexField plane;
    plane.positions = element_positions(lattice);
    plane.values.assign(lattice.size(), Complex{1.0, 0.0});
    const PhaseProfile steer = steering_profile(lattice, plane, SteeringSpec{target}, ctx);

    const auto& d1 = co.for_harmonic(1);
    const double offset = wrap_phase(std::arg(d1[0]) - steer.phases[0]);
    for (std::size_t i = 0; i < lattice.size(); ++i) {
        const double dev = wrap_phase(std::arg(d1[i]) - steer.phases[i] - offset);
        CHECK(std::abs(dev) <= 1e-9);
    }
}
